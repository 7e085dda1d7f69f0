#pragma once

#include "lspacf/infer.hpp"
#include "lspacf/sieve.hpp"
#include "lspacf/types.hpp"

#include <optional>
#include <vector>

namespace lspacf {

/// Everything a data-driven run resolved, echoed into reports.
struct TuningRecord {
    Index c = 0;
    Index m = 0;
    Index h = 0;
    std::vector<Index> c_grid;
    std::vector<double> cv_mse;  ///< per c candidate; NaN for skipped ones
    std::vector<Index> m_grid;   ///< interior grid
    std::vector<double> se_profile;
    std::uint64_t seed = 0;
};

/// Cross-validation choice of the basis size: fit a tvAR(fit_lag) per
/// candidate on x_1..x_{n-l} (l = floor(3 log2 n), full-series clock) and
/// pick the smallest candidate minimising the one-step forecast MSE over the
/// validation tail.
std::pair<Index, TuningRecord> select_c(const TimeSeries& x, const std::vector<Index>& candidates,
                                        Index fit_lag, BasisFamily family);

/// Conditional covariance E[Phi Phi' | x] of the bootstrap vector at block
/// size m; symmetric positive semidefinite.
Matrix pi_hat(const TimeSeries& x, const SieveFit& f, Index m);

/// Minimum-volatility choice of the block size over an interior grid
/// m_1 < ... < m_n0, internally extended by h0 points on both ends.
/// `frobenius` switches the matrix norm from spectral to Frobenius.
std::pair<Index, TuningRecord> select_m(const TimeSeries& x, const SieveFit& f,
                                        const std::vector<Index>& grid, Index h0 = 3,
                                        bool frobenius = false);

struct HSelection {
    Index h = 0;
    bool capped = false;  ///< no lag up to h_star was accepted
};

/// Smallest lag whose single-lag significance test accepts, capped at h_star.
/// Each lag gets its own data-driven (c, m).
HSelection select_h(const TimeSeries& x, Index h_star, double alpha, Index B, std::uint64_t seed,
                    BasisFamily family);

/// Largest lag <= p_star whose single-lag test rejects; 0 when none does.
Index order_select(const TimeSeries& x, Index p_star, double alpha, Index B, std::uint64_t seed,
                   BasisFamily family);

/// j* = ceil(n^{1/(2(tau-1))}); tau > 1 indexes the dependence decay.
Index lag_cutoff(Index n, double tau);

std::vector<Index> default_c_grid(Index n, Index fit_lag);
std::vector<Index> default_m_grid(Index n, Index lag);

/// Operator norm of a symmetric matrix by a fixed-iteration power method.
double spectral_norm(const Matrix& sym, int iterations = 50);

struct AutoTestOptions {
    std::optional<Index> c;  ///< explicit basis size; nullopt = cross-validate
    std::optional<Index> m;  ///< explicit block size; nullopt = minimum volatility
    Index h_star = 50;       ///< cap for sequential h selection
    Index B = 1000;
    double alpha = 0.05;
    std::uint64_t seed = 0;
    BasisFamily family = BasisFamily::Legendre;
};

/// Resolves tuning in the order c, then m, then h, and runs the test.
/// `lag_or_h` = 0 asks for sequential h selection (WhiteNoise only).
TestResult run_test_auto(const TimeSeries& x, TestKind kind, Index lag_or_h,
                         const AutoTestOptions& opt, TuningRecord* record = nullptr);

}  // namespace lspacf
