#include "lspacf/tune.hpp"

#include "lspacf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <map>
#include <stdexcept>

namespace lspacf {

namespace {

Index cv_split(Index n) { return static_cast<Index>(std::floor(3.0 * std::log2(static_cast<double>(n)))); }

}  // namespace

std::pair<Index, TuningRecord> select_c(const TimeSeries& x, const std::vector<Index>& candidates,
                                        Index fit_lag, BasisFamily family) {
    if (candidates.empty()) throw std::invalid_argument("select_c needs a nonempty candidate grid");
    const Index n = x.n();
    const Index l = cv_split(n);
    if (n - l <= fit_lag) throw std::invalid_argument("series too short for the CV split");
    const TimeSeries train = x.prefix(n - l);

    TuningRecord rec;
    rec.c_grid = candidates;
    rec.cv_mse.assign(candidates.size(), std::numeric_limits<double>::quiet_NaN());

    Index best_c = 0;
    double best_mse = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < candidates.size(); ++j) {
        const Index c = candidates[j];
        double mse;
        try {
            const SieveFit f = fit_ols(build_design(train, fit_lag, make_basis(family, c)));
            double acc = 0.0;
            for (Index k = n - l + 1; k <= n; ++k) {
                const double e = x.at(k) - forecast(f, x, k);
                acc += e * e;
            }
            mse = acc / static_cast<double>(l);
        } catch (const std::invalid_argument&) {
            std::cerr << "lspacf: warning: skipping infeasible c = " << c << "\n";
            continue;
        } catch (const SingularError&) {
            std::cerr << "lspacf: warning: skipping singular fit at c = " << c << "\n";
            continue;
        }
        rec.cv_mse[j] = mse;
        if (mse < best_mse || (mse == best_mse && c < best_c)) {
            best_mse = mse;
            best_c = c;
        }
    }
    if (best_c == 0) throw std::invalid_argument("no feasible basis size in the candidate grid");
    rec.c = best_c;
    return {best_c, rec};
}

Matrix pi_hat(const TimeSeries& x, const SieveFit& f, Index m) {
    const Matrix V = bootstrap_columns(x, f, m);
    Matrix pi = Matrix::Zero(V.rows(), V.rows());
    pi.selfadjointView<Eigen::Lower>().rankUpdate(V);
    pi.triangularView<Eigen::StrictlyUpper>() = pi.transpose();
    return pi;
}

double spectral_norm(const Matrix& sym, int iterations) {
    const Index d = sym.rows();
    if (d == 0) return 0.0;
    // Deterministic start with a mild tilt so no eigenvector is missed by symmetry.
    Vector v(d);
    for (Index i = 0; i < d; ++i) v[i] = 1.0 + 1e-3 * static_cast<double>(i);
    v /= v.norm();
    for (int it = 0; it < iterations; ++it) {
        Vector w = sym * v;
        const double norm = w.norm();
        if (norm == 0.0) return 0.0;
        v = w / norm;
    }
    return std::abs(v.dot(sym * v));
}

std::pair<Index, TuningRecord> select_m(const TimeSeries& x, const SieveFit& f,
                                        const std::vector<Index>& grid, Index h0,
                                        bool frobenius) {
    if (grid.empty()) throw std::invalid_argument("select_m needs a nonempty grid");
    if (h0 < 1) throw std::invalid_argument("select_m needs h0 >= 1");
    for (std::size_t j = 1; j < grid.size(); ++j)
        if (grid[j] <= grid[j - 1]) throw std::invalid_argument("m grid must be strictly increasing");

    // Extend the arithmetic progression by h0 points on each side.
    const Index step_lo = grid.size() > 1 ? grid[1] - grid.front() : 1;
    const Index step_hi = grid.size() > 1 ? grid.back() - grid[grid.size() - 2] : 1;
    std::vector<Index> extended;
    for (Index k = h0; k >= 1; --k) extended.push_back(grid.front() - k * step_lo);
    extended.insert(extended.end(), grid.begin(), grid.end());
    for (Index k = 1; k <= h0; ++k) extended.push_back(grid.back() + k * step_hi);

    const Index m_max = x.n() - f.lag() - 1;
    for (Index m : extended)
        if (m < 1 || m > m_max)
            throw std::invalid_argument("extended m grid leaves [1, n - lag - 1]; grid too short or misplaced");

    std::vector<Matrix> pis;
    pis.reserve(extended.size());
    for (Index m : extended) pis.push_back(pi_hat(x, f, m));

    TuningRecord rec;
    rec.m_grid = grid;
    rec.se_profile.assign(grid.size(), 0.0);

    Index best_m = 0;
    double best_se = std::numeric_limits<double>::infinity();
    const auto nh = static_cast<std::size_t>(2 * h0 + 1);
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const std::size_t lo = j;  // index of m_{j - h0} in `extended`
        Matrix mean = Matrix::Zero(pis[0].rows(), pis[0].cols());
        for (std::size_t k = 0; k < nh; ++k) mean += pis[lo + k];
        mean /= static_cast<double>(nh);
        double acc = 0.0;
        for (std::size_t k = 0; k < nh; ++k) {
            const Matrix diff = mean - pis[lo + k];
            const double nrm = frobenius ? diff.norm() : spectral_norm(diff);
            acc += nrm * nrm;
        }
        const double se = std::sqrt(acc / static_cast<double>(2 * h0));
        rec.se_profile[j] = se;
        if (se < best_se) {
            best_se = se;
            best_m = grid[j];
        }
    }
    rec.m = best_m;
    return {best_m, rec};
}

HSelection select_h(const TimeSeries& x, Index h_star, double alpha, Index B, std::uint64_t seed,
                    BasisFamily family) {
    if (h_star < 1) throw std::invalid_argument("select_h needs h_star >= 1");
    for (Index j = 1; j <= h_star; ++j) {
        AutoTestOptions opt;
        opt.B = B;
        opt.alpha = alpha;
        opt.seed = substream_seed(seed, 0x68aul * static_cast<std::uint64_t>(j));
        opt.family = family;
        const TestResult r = run_test_auto(x, TestKind::SingleLag, j, opt);
        if (!r.reject) return {j, false};
    }
    std::cerr << "lspacf: warning: no lag up to h* = " << h_star << " was accepted\n";
    return {h_star, true};
}

Index order_select(const TimeSeries& x, Index p_star, double alpha, Index B, std::uint64_t seed,
                   BasisFamily family) {
    if (p_star < 1) throw std::invalid_argument("order_select needs p_star >= 1");
    Index p = 0;
    for (Index j = 1; j <= p_star; ++j) {
        AutoTestOptions opt;
        opt.B = B;
        opt.alpha = alpha;
        opt.seed = substream_seed(seed, 0x9a0ul * static_cast<std::uint64_t>(j));
        opt.family = family;
        const TestResult r = run_test_auto(x, TestKind::SingleLag, j, opt);
        if (r.reject) p = j;
    }
    return p;
}

Index lag_cutoff(Index n, double tau) {
    if (n < 1) throw std::invalid_argument("lag_cutoff needs n >= 1");
    if (!(tau > 1.0)) throw std::invalid_argument("lag cutoff needs tau > 1 (short-range dependence)");
    return static_cast<Index>(std::ceil(std::pow(static_cast<double>(n), 1.0 / (2.0 * (tau - 1.0)))));
}

std::vector<Index> default_c_grid(Index n, Index fit_lag) {
    const Index n_train = n - cv_split(n);
    const Index feasible = (n_train - fit_lag) / fit_lag;
    Index hi = static_cast<Index>(std::ceil(3.0 * std::pow(static_cast<double>(n), 0.25)));
    hi = std::min(hi, feasible);
    std::vector<Index> grid;
    for (Index c = 2; c <= hi; ++c) grid.push_back(c);
    if (grid.empty()) grid.push_back(1);
    return grid;
}

std::vector<Index> default_m_grid(Index n, Index lag) {
    const Index step = 2;
    const Index h0 = 3;
    Index lo = static_cast<Index>(std::ceil(std::pow(static_cast<double>(n), 0.2)));
    lo = std::max(lo, 1 + h0 * step);  // keep the low extension >= 1
    Index hi = static_cast<Index>(std::ceil(3.0 * std::sqrt(static_cast<double>(n))));
    hi = std::min(hi, n - lag - 1 - h0 * step);  // keep the high extension feasible
    std::vector<Index> grid;
    for (Index m = lo; m <= hi; m += step) grid.push_back(m);
    if (grid.empty()) grid.push_back(std::max<Index>(1 + h0, std::min(lo, n - lag - 1 - h0)));
    return grid;
}

TestResult run_test_auto(const TimeSeries& x, TestKind kind, Index lag_or_h,
                         const AutoTestOptions& opt, TuningRecord* record) {
    TuningRecord rec;
    rec.seed = opt.seed;

    Index lag = lag_or_h;
    bool h_capped = false;
    if (kind == TestKind::WhiteNoise && lag_or_h == 0) {
        const HSelection sel =
            select_h(x, opt.h_star, opt.alpha, opt.B, substream_seed(opt.seed, 0x5e1ul), opt.family);
        lag = sel.h;
        h_capped = sel.capped;
        rec.h = sel.h;
    }
    if (kind == TestKind::Constancy) lag = 1;
    if (lag < 1) throw std::invalid_argument("test lag must be >= 1");

    Index c;
    if (opt.c) {
        c = *opt.c;
    } else {
        auto [cc, crec] = select_c(x, default_c_grid(x.n(), lag), lag, opt.family);
        c = cc;
        rec.c_grid = std::move(crec.c_grid);
        rec.cv_mse = std::move(crec.cv_mse);
    }
    rec.c = c;

    const BasisSet basis = make_basis(opt.family, c);

    Index m;
    if (opt.m) {
        m = *opt.m;
    } else {
        const SieveFit f = fit_ols(build_design(x, lag, basis));
        auto [mm, mrec] = select_m(x, f, default_m_grid(x.n(), lag));
        m = mm;
        rec.m_grid = std::move(mrec.m_grid);
        rec.se_profile = std::move(mrec.se_profile);
    }
    rec.m = m;

    BootstrapConfig cfg;
    cfg.B = opt.B;
    cfg.m = m;
    cfg.seed = opt.seed;
    cfg.alpha = opt.alpha;
    TestResult res = run_test(x, kind, lag, cfg, basis);
    res.h_capped = h_capped;
    if (record) *record = rec;
    return res;
}

}  // namespace lspacf
