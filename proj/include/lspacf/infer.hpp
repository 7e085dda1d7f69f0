#pragma once

#include "lspacf/rng.hpp"
#include "lspacf/sieve.hpp"
#include "lspacf/types.hpp"

#include <cstdint>

namespace lspacf {

enum class TestKind { SingleLag, WhiteNoise, Constancy };

std::string to_string(TestKind kind);

struct BootstrapConfig {
    Index B = 1000;          ///< bootstrap replicates (>= 100)
    Index m = 0;             ///< block size, 1 <= m <= n - lag - 1
    std::uint64_t seed = 0;  ///< replicate s uses substream_seed(seed, s)
    double alpha = 0.05;
};

struct TestResult {
    TestKind kind = TestKind::SingleLag;
    Index lag_or_h = 0;
    double T = 0.0;
    double nT = 0.0;
    Vector boot_order_stats;  ///< sorted bootstrap statistics, size B
    double p_value = 1.0;
    bool reject = false;
    // resolved configuration, echoed into every report
    double alpha = 0.05;
    Index B = 0;
    Index c = 0;
    Index m = 0;
    BasisFamily basis = BasisFamily::Legendre;
    std::uint64_t seed = 0;
    bool h_capped = false;  ///< sequential h selection hit its cap
};

/// T1 = int rho_hat_j(t)^2 dt; tests H01: rho_j == 0 for one lag j.
double stat_T1(const SieveFit& f);

/// T2 = sum_k int phi_hat_{h,k}(t)^2 dt from one AR(h) fit; tests white noise.
double stat_T2(const SieveFit& f);

/// T_BP = sum_{k=1..h} int rho_hat_k(t)^2 dt, one fit per lag.
double stat_TBP(const TimeSeries& x, const BasisSet& basis, Index h);

/// T1* = int (rho_hat_1(t) - int rho_hat_1)^2 dt; tests constancy of rho_1.
double stat_T1star(const SieveFit& f);

/// Scaled score columns: column i-lag-1 holds
/// [sum_{j=i}^{i+m} w_hat_j (x) B(i/n)] / sqrt((n-m-lag+1) m) for
/// i = lag+1 .. n-m, with w_hat_j = (x_{j-1},..,x_{j-lag})' eps_hat_j.
/// Phi_hat is this matrix times a standard Gaussian vector, and
/// Pi_hat = V V'.
Matrix bootstrap_columns(const TimeSeries& x, const SieveFit& f, Index m);

/// One multiplier-bootstrap draw of Phi_hat.
Vector bootstrap_phi(const TimeSeries& x, const SieveFit& f, Index m, Rng& rng);

/// Quadratic form mimicking n*T:
///   SingleLag:  Phi' S^-1 M S^-1 Phi   (M: identity in the last c-block)
///   WhiteNoise: Phi' S^-2 Phi
///   Constancy:  SingleLag with the block deflated by the constant direction
double bootstrap_stat(const Vector& phi, const SieveFit& f, TestKind kind);

/// Full multiplier-bootstrap test with explicit tuning (c comes with the
/// basis, m with the config).  Deterministic given cfg.seed, independently
/// of the worker count.
TestResult run_test(const TimeSeries& x, TestKind kind, Index lag_or_h,
                    const BootstrapConfig& cfg, const BasisSet& basis);

}  // namespace lspacf
