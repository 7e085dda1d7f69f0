#pragma once

#include "lspacf/types.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace lspacf {

struct UnknownScenario : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BenchCell {
    std::string label;
    double value;  ///< rejection rate or MISE
};

struct BenchReport {
    std::string scenario;
    Index replicates = 0;
    std::vector<BenchCell> cells;
    double wallclock_s = 0.0;
    std::uint64_t seed = 0;
};

/// Scenario ids:
///   table1:<ar2|tvar2>:<fourier|legendre|chebyshev>:<1..5>
///       type-I error of the significance / white-noise tests, n = 600;
///       settings (1) d=(0.5,0) j=2, (2) d=(0.5,0) j=4, (3) d=(0.3,0.3) j=3,
///       (4) d=(0.3,0.3) j=5, (5) d=(0,0) white-noise test
///   mise:<ar2|tvar2>:<1..4>
///       mean integrated squared error of rho_hat_j, d=(0.5,0), n = 1024
///   power:<ar2|tvar2>
///       white-noise test power over delta1 in {0, 0.1, .., 0.5}, n = 600
/// ar2 freezes the coefficients (stationary); tvar2 modulates them in time.
BenchReport run_bench(const std::string& scenario, Index replicates, std::uint64_t seed,
                      double alpha = 0.05, Index B = 500);

}  // namespace lspacf
