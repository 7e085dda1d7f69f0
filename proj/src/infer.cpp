#include "lspacf/infer.hpp"

#include "lspacf/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lspacf {

std::string to_string(TestKind kind) {
    switch (kind) {
        case TestKind::SingleLag: return "lag";
        case TestKind::WhiteNoise: return "whitenoise";
        case TestKind::Constancy: return "constancy";
    }
    return "?";
}

double stat_T1(const SieveFit& f) { return pacf_square_integral(f); }

double stat_T2(const SieveFit& f) { return coeff_square_integral_sum(f); }

double stat_TBP(const TimeSeries& x, const BasisSet& basis, Index h) {
    if (h < 1) throw std::invalid_argument("stat_TBP needs h >= 1");
    std::vector<double> terms(static_cast<std::size_t>(h));
    parallel_for(static_cast<std::size_t>(h), [&](std::size_t k) {
        const SieveFit f = fit_ols(build_design(x, static_cast<Index>(k) + 1, basis));
        terms[k] = pacf_square_integral(f);
    });
    double acc = 0.0;
    for (double v : terms) acc += v;
    return acc;
}

double stat_T1star(const SieveFit& f) {
    if (f.lag() != 1) throw std::invalid_argument("T1* is defined for a lag-1 fit");
    return pacf_centered_square_integral(f);
}

Matrix bootstrap_columns(const TimeSeries& x, const SieveFit& f, Index m) {
    const Index n = x.n();
    const Index lag = f.lag();
    const Index c = f.basis().size();
    if (m < 1 || lag + m >= n)
        throw std::invalid_argument("block size m must satisfy 1 <= m <= n - lag - 1");

    const Vector eps = residuals(f, x);  // eps[i - lag - 1] = eps_hat_i

    // Prefix sums of w_hat_j over j = lag+1..n; w_hat_j = x_{lag,j} * eps_j.
    Matrix wsum(lag, n - lag + 1);
    wsum.col(0).setZero();
    for (Index j = lag + 1; j <= n; ++j) {
        Vector w(lag);
        for (Index l = 1; l <= lag; ++l) w[l - 1] = x.at(j - l);
        wsum.col(j - lag) = wsum.col(j - lag - 1) + w * eps[j - lag - 1];
    }

    const Index cols = n - m - lag;
    const double scale =
        1.0 / std::sqrt(static_cast<double>(n - m - lag + 1) * static_cast<double>(m));
    Matrix V(lag * c, cols);
    for (Index i = lag + 1; i <= n - m; ++i) {
        // sum_{j=i}^{i+m} w_hat_j
        const Vector block = wsum.col(i + m - lag) - wsum.col(i - lag - 1);
        const Vector b = f.basis().eval(static_cast<double>(i) / static_cast<double>(x.clock_n));
        for (Index l = 0; l < lag; ++l) V.col(i - lag - 1).segment(l * c, c) = block[l] * b;
        V.col(i - lag - 1) *= scale;
    }
    return V;
}

Vector bootstrap_phi(const TimeSeries& x, const SieveFit& f, Index m, Rng& rng) {
    const Matrix V = bootstrap_columns(x, f, m);
    Vector r(V.cols());
    for (Index i = 0; i < r.size(); ++i) r[i] = rng.gaussian();
    return V * r;
}

double bootstrap_stat(const Vector& phi, const SieveFit& f, TestKind kind) {
    if (phi.size() != f.beta().size()) throw std::invalid_argument("Phi_hat dimension mismatch");
    const Vector u = f.apply_sigma_inv(phi);
    const Index c = f.basis().size();
    switch (kind) {
        case TestKind::SingleLag: return u.tail(c).squaredNorm();
        case TestKind::WhiteNoise: return u.squaredNorm();
        case TestKind::Constancy: return u.tail(c - 1).squaredNorm();
    }
    return 0.0;
}

TestResult run_test(const TimeSeries& x, TestKind kind, Index lag_or_h,
                    const BootstrapConfig& cfg, const BasisSet& basis) {
    if (cfg.B < 100) throw std::invalid_argument("bootstrap needs B >= 100");
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");
    if (kind == TestKind::Constancy && lag_or_h != 1)
        throw std::invalid_argument("the constancy test works on the lag-1 fit");

    const Index lag = lag_or_h;
    const SieveFit f = fit_ols(build_design(x, lag, basis));

    double T = 0.0;
    switch (kind) {
        case TestKind::SingleLag: T = stat_T1(f); break;
        case TestKind::WhiteNoise: T = stat_T2(f); break;
        case TestKind::Constancy: T = stat_T1star(f); break;
    }
    const double nT = static_cast<double>(x.n()) * T;

    // Rows of S^-1 V entering the quadratic form; the statistic of replicate
    // s is then |U R_s|^2.
    const Matrix V = bootstrap_columns(x, f, cfg.m);
    const Matrix SinvV = f.apply_sigma_inv(V);
    const Index c = basis.size();
    Matrix U;
    switch (kind) {
        case TestKind::SingleLag: U = SinvV.bottomRows(c); break;
        case TestKind::WhiteNoise: U = SinvV; break;
        case TestKind::Constancy: U = SinvV.bottomRows(c - 1); break;
    }

    Vector boot(cfg.B);
    parallel_for(static_cast<std::size_t>(cfg.B), [&](std::size_t s) {
        Rng rng(substream_seed(cfg.seed, s));
        Vector r(U.cols());
        for (Index i = 0; i < r.size(); ++i) r[i] = rng.gaussian();
        boot[static_cast<Index>(s)] = (U * r).squaredNorm();
    });
    std::sort(boot.begin(), boot.end());

    TestResult res;
    res.kind = kind;
    res.lag_or_h = lag_or_h;
    res.T = T;
    res.nT = nT;
    res.alpha = cfg.alpha;
    res.B = cfg.B;
    res.c = c;
    res.m = cfg.m;
    res.basis = basis.family();
    res.seed = cfg.seed;

    const Index below = std::upper_bound(boot.begin(), boot.end(), nT) - boot.begin();
    res.p_value = 1.0 - static_cast<double>(below) / static_cast<double>(cfg.B);
    const Index q = std::clamp<Index>(static_cast<Index>(std::floor(
                                          static_cast<double>(cfg.B) * (1.0 - cfg.alpha))),
                                      1, cfg.B);
    res.reject = nT > boot[q - 1];
    res.boot_order_stats = std::move(boot);
    return res;
}

}  // namespace lspacf
