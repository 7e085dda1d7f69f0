#pragma once

#include "lspacf/oracle.hpp"
#include "lspacf/types.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace lspacf {

enum class ModelKind { TVAR2, TVMA1, CustomTVAR, CustomTVMA };

/// Benchmark and user-defined locally stationary generators.
///
/// TVAR2 stationary:      x_i = d1 x_{i-1} + d2 x_{i-2} + eps_i
/// TVAR2 time-varying:    x_i = d1 sin(2pi i/n) x_{i-1} + d2 cos(2pi i/n) x_{i-2}
///                              + (0.4 + 0.4|sin(2pi i/n)|) eps_i
/// TVMA1 stationary:      x_i = eps_i + d eps_{i-1}
/// TVMA1 time-varying:    x_i = eps_i + d sin(2pi i/n) eps_{i-1}
/// with eps_i i.i.d. standard Gaussian.
struct ModelSpec {
    ModelKind kind = ModelKind::TVAR2;
    double delta1 = 0.0;
    double delta2 = 0.0;
    double delta = 0.0;
    bool stationary = false;

    /// Custom kinds: coefficient functions on [0,1] (AR phi_k or MA theta_k)
    /// and a positive innovation-scale function.
    std::vector<std::function<double(double)>> coeffs;
    std::function<double(double)> sigma;

    static ModelSpec tvar2(double delta1, double delta2, bool stationary);
    static ModelSpec tvma1(double delta, bool stationary);
    static ModelSpec custom_tvar(std::vector<std::function<double(double)>> coeffs,
                                 std::function<double(double)> sigma);
    static ModelSpec custom_tvma(std::vector<std::function<double(double)>> coeffs,
                                 std::function<double(double)> sigma);

    Index order() const;
    /// Frozen coefficients (AR or MA) at rescaled time t.
    Vector coeff_at(double t) const;
    double sigma_at(double t) const;
};

/// Draws a length-n path; bit-identical for identical (spec, n, seed).
/// AR recursions run a 200-step burn-in with coefficients frozen at t=0.
/// Throws UnstableModelError when the frozen AR polynomial has a root on or
/// inside the unit circle anywhere on a 1,000-point grid.
TimeSeries simulate(const ModelSpec& spec, Index n, std::uint64_t seed);

/// Exact frozen-coefficient stationary ACF gamma(t, k); AR order must be
/// <= 2 (solved via the Yule-Walker moment system, extended by recursion).
AcfFunction model_acf(const ModelSpec& spec);

}  // namespace lspacf
