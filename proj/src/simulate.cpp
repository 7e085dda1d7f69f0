#include "lspacf/simulate.hpp"

#include "lspacf/errors.hpp"
#include "lspacf/rng.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

namespace lspacf {

namespace {

constexpr Index kBurnIn = 200;
constexpr Index kStabilityGrid = 1000;

void warn_benchmark_range(double value, const char* name) {
    if (value < 0.0 || value > 0.5)
        std::cerr << "lspacf: warning: " << name << " = " << value
                  << " is outside the benchmark range [0, 0.5]\n";
}

// Stationarity of 1 - a1 z - a2 z^2 via the AR(2) triangle (exact for p <= 2).
bool frozen_ar_stable(double a1, double a2) {
    return std::abs(a2) < 1.0 && a2 + a1 < 1.0 && a2 - a1 < 1.0;
}

void check_ar_stability(const ModelSpec& spec) {
    if (spec.order() > 2) return;  // no closed-form check; caller beware
    for (Index g = 0; g <= kStabilityGrid; ++g) {
        const double t = static_cast<double>(g) / kStabilityGrid;
        const Vector a = spec.coeff_at(t);
        const double a1 = a.size() > 0 ? a[0] : 0.0;
        const double a2 = a.size() > 1 ? a[1] : 0.0;
        if (!frozen_ar_stable(a1, a2))
            throw UnstableModelError("frozen AR polynomial is unstable at t = " + std::to_string(t));
    }
}

}  // namespace

ModelSpec ModelSpec::tvar2(double delta1, double delta2, bool stationary) {
    warn_benchmark_range(delta1, "delta1");
    warn_benchmark_range(delta2, "delta2");
    ModelSpec s;
    s.kind = ModelKind::TVAR2;
    s.delta1 = delta1;
    s.delta2 = delta2;
    s.stationary = stationary;
    return s;
}

ModelSpec ModelSpec::tvma1(double delta, bool stationary) {
    warn_benchmark_range(delta, "delta");
    ModelSpec s;
    s.kind = ModelKind::TVMA1;
    s.delta = delta;
    s.stationary = stationary;
    return s;
}

ModelSpec ModelSpec::custom_tvar(std::vector<std::function<double(double)>> coeffs,
                                 std::function<double(double)> sigma) {
    ModelSpec s;
    s.kind = ModelKind::CustomTVAR;
    s.coeffs = std::move(coeffs);
    s.sigma = std::move(sigma);
    return s;
}

ModelSpec ModelSpec::custom_tvma(std::vector<std::function<double(double)>> coeffs,
                                 std::function<double(double)> sigma) {
    ModelSpec s;
    s.kind = ModelKind::CustomTVMA;
    s.coeffs = std::move(coeffs);
    s.sigma = std::move(sigma);
    return s;
}

Index ModelSpec::order() const {
    switch (kind) {
        case ModelKind::TVAR2: return 2;
        case ModelKind::TVMA1: return 1;
        default: return static_cast<Index>(coeffs.size());
    }
}

Vector ModelSpec::coeff_at(double t) const {
    switch (kind) {
        case ModelKind::TVAR2: {
            Vector a(2);
            if (stationary) {
                a << delta1, delta2;
            } else {
                a << delta1 * std::sin(2.0 * M_PI * t), delta2 * std::cos(2.0 * M_PI * t);
            }
            return a;
        }
        case ModelKind::TVMA1: {
            Vector th(1);
            th << (stationary ? delta : delta * std::sin(2.0 * M_PI * t));
            return th;
        }
        default: {
            Vector a(static_cast<Index>(coeffs.size()));
            for (Index k = 0; k < a.size(); ++k) a[k] = coeffs[static_cast<std::size_t>(k)](t);
            return a;
        }
    }
}

double ModelSpec::sigma_at(double t) const {
    switch (kind) {
        case ModelKind::TVAR2:
            return stationary ? 1.0 : 0.4 + 0.4 * std::abs(std::sin(2.0 * M_PI * t));
        case ModelKind::TVMA1:
            return 1.0;
        default: {
            const double s = sigma ? sigma(t) : 1.0;
            if (!(s > 0.0)) throw std::invalid_argument("innovation scale sigma(t) must be positive");
            return s;
        }
    }
}

TimeSeries simulate(const ModelSpec& spec, Index n, std::uint64_t seed) {
    if (n < 10) throw std::invalid_argument("simulate needs n >= 10");
    const bool is_ar = spec.kind == ModelKind::TVAR2 || spec.kind == ModelKind::CustomTVAR;
    if (is_ar) check_ar_stability(spec);

    Rng rng(mix_seed(seed));
    const Index p = spec.order();
    Vector x(n);

    if (is_ar) {
        Vector history = Vector::Zero(p);  // history[k] = x_{i-1-k}
        const Vector a0 = spec.coeff_at(0.0);
        const double s0 = spec.sigma_at(0.0);
        for (Index b = 0; b < kBurnIn; ++b) {
            double v = s0 * rng.gaussian();
            for (Index k = 0; k < p; ++k) v += a0[k] * history[k];
            for (Index k = p - 1; k > 0; --k) history[k] = history[k - 1];
            if (p > 0) history[0] = v;
        }
        for (Index i = 1; i <= n; ++i) {
            const double t = static_cast<double>(i) / static_cast<double>(n);
            const Vector a = spec.coeff_at(t);
            double v = spec.sigma_at(t) * rng.gaussian();
            for (Index k = 0; k < p; ++k) v += a[k] * history[k];
            for (Index k = p - 1; k > 0; --k) history[k] = history[k - 1];
            if (p > 0) history[0] = v;
            x[i - 1] = v;
        }
    } else {
        Vector eps_hist(p);  // eps_hist[k] = eps_{i-1-k}
        for (Index k = 0; k < p; ++k) eps_hist[p - 1 - k] = rng.gaussian();
        for (Index i = 1; i <= n; ++i) {
            const double t = static_cast<double>(i) / static_cast<double>(n);
            const Vector th = spec.coeff_at(t);
            const double e = rng.gaussian();
            double v = e;
            for (Index k = 0; k < p; ++k) v += th[k] * eps_hist[k];
            v *= spec.sigma_at(t);
            for (Index k = p - 1; k > 0; --k) eps_hist[k] = eps_hist[k - 1];
            if (p > 0) eps_hist[0] = e;
            x[i - 1] = v;
        }
    }

    TimeSeries out = TimeSeries::from_values(std::move(x));
    out.seed = seed;
    return out;
}

AcfFunction model_acf(const ModelSpec& spec) {
    const bool is_ar = spec.kind == ModelKind::TVAR2 || spec.kind == ModelKind::CustomTVAR;
    if (is_ar && spec.order() > 2)
        throw std::invalid_argument("model_acf supports AR order <= 2 only");
    if (is_ar) check_ar_stability(spec);

    // Capture by value; the returned evaluator must outlive the spec.
    ModelSpec s = spec;
    AcfFunction acf;

    if (is_ar) {
        acf.gamma = [s](double t, Index k) -> double {
            const Vector a = s.coeff_at(t);
            const double a1 = a.size() > 0 ? a[0] : 0.0;
            const double a2 = a.size() > 1 ? a[1] : 0.0;
            const double sig2 = s.sigma_at(t) * s.sigma_at(t);
            // Stationary moment system for (gamma_0, gamma_1, gamma_2):
            //   gamma_0 = a1 gamma_1 + a2 gamma_2 + sig2
            //   gamma_1 = a1 gamma_0 + a2 gamma_1
            //   gamma_2 = a1 gamma_1 + a2 gamma_0
            Eigen::Matrix3d A;
            A << 1.0, -a1, -a2,
               -a1, 1.0 - a2, 0.0,
               -a2, -a1, 1.0;
            Eigen::Vector3d rhs(sig2, 0.0, 0.0);
            const Eigen::Vector3d g = A.partialPivLu().solve(rhs);
            if (k == 0) return g[0];
            if (k == 1) return g[1];
            double gm1 = g[1], gk = g[2];
            for (Index j = 3; j <= k; ++j) {
                const double next = a1 * gk + a2 * gm1;
                gm1 = gk;
                gk = next;
            }
            return gk;
        };
    } else {
        // MA(q): gamma(t,k) = sig2 * sum_j theta_j theta_{j+k}, theta_0 = 1.
        acf.gamma = [s](double t, Index k) -> double {
            const Vector th = s.coeff_at(t);
            const Index q = th.size();
            if (k > q) return 0.0;
            const double sig2 = s.sigma_at(t) * s.sigma_at(t);
            double acc = 0.0;
            for (Index j = 0; j + k <= q; ++j) {
                const double tj = j == 0 ? 1.0 : th[j - 1];
                const double tjk = j + k == 0 ? 1.0 : th[j + k - 1];
                acc += tj * tjk;
            }
            return sig2 * acc;
        };
    }
    return acf;
}

}  // namespace lspacf
