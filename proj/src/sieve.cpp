#include "lspacf/sieve.hpp"

#include "lspacf/errors.hpp"
#include "lspacf/quadrature.hpp"

#include <Eigen/QR>

#include <cmath>
#include <stdexcept>
#include <string>

namespace lspacf {

DesignMatrix build_design(const TimeSeries& x, Index lag, const BasisSet& basis) {
    if (lag < 1) throw std::invalid_argument("design lag must be >= 1");
    const Index n = x.n();
    const Index c = basis.size();
    const Index rows = n - lag;
    if (rows < lag * c)
        throw std::invalid_argument("sample too small: need n - lag >= lag*c, have " +
                                    std::to_string(rows) + " rows for " + std::to_string(lag * c) +
                                    " columns");
    if (x.clock_n < n) throw std::invalid_argument("clock_n must be >= series length");

    Matrix Y(rows, lag * c);
    Vector resp(rows);
    for (Index r = 0; r < rows; ++r) {
        const Index i = lag + 1 + r;
        const Vector b = basis.eval(static_cast<double>(i) / static_cast<double>(x.clock_n));
        for (Index l = 1; l <= lag; ++l) Y.row(r).segment((l - 1) * c, c) = x.at(i - l) * b.transpose();
        resp[r] = x.at(i);
    }
    return DesignMatrix{lag, basis, std::move(Y), std::move(resp), x.clock_n, n};
}

SieveFit fit_ols(const DesignMatrix& d) {
    SieveFit f(d.basis);
    f.lag_ = d.lag;
    f.clock_n_ = d.clock_n;
    f.n_obs_ = d.n_obs;

    Eigen::ColPivHouseholderQR<Matrix> qr(d.Y);
    const Vector rdiag = qr.matrixR().diagonal().head(d.Y.cols()).cwiseAbs();
    const double rmax = rdiag.maxCoeff();
    const double rmin = rdiag.minCoeff();
    f.rcond_ = rmax > 0.0 ? (rmin / rmax) * (rmin / rmax) : 0.0;
    if (qr.rank() < d.Y.cols() || f.rcond_ < 1e-10)
        throw SingularError("design is rank deficient (reciprocal condition " +
                            std::to_string(f.rcond_) + ")");

    f.beta_ = qr.solve(d.response);
    f.sigma_ = d.Y.transpose() * d.Y / static_cast<double>(d.clock_n);
    f.ldlt_.compute(f.sigma_);
    if (f.ldlt_.info() != Eigen::Success)
        throw SingularError("sigma_hat factorization failed");
    return f;
}

double eval_pacf(const SieveFit& f, double t) {
    const Index c = f.basis().size();
    return f.beta().tail(c).dot(f.basis().eval(t));
}

double eval_coeff(const SieveFit& f, Index k, double t) {
    if (k < 1 || k > f.lag()) throw std::invalid_argument("coefficient index out of range");
    const Index c = f.basis().size();
    return f.beta().segment((k - 1) * c, c).dot(f.basis().eval(t));
}

Vector residuals(const SieveFit& f, const TimeSeries& x) {
    if (x.n() != f.n_obs() || x.clock_n != f.clock_n())
        throw std::invalid_argument("residuals need the series the fit was built from");
    const Index lag = f.lag();
    Vector eps(x.n() - lag);
    for (Index i = lag + 1; i <= x.n(); ++i) eps[i - lag - 1] = x.at(i) - forecast(f, x, i);
    return eps;
}

double forecast(const SieveFit& f, const TimeSeries& x, Index i) {
    if (i <= f.lag() || i > x.n()) throw std::invalid_argument("forecast index out of range");
    const Index c = f.basis().size();
    const Vector b = f.basis().eval(static_cast<double>(i) / static_cast<double>(x.clock_n));
    double acc = 0.0;
    for (Index k = 1; k <= f.lag(); ++k)
        acc += f.beta().segment((k - 1) * c, c).dot(b) * x.at(i - k);
    return acc;
}

double pacf_square_integral(const SieveFit& f) {
    if (f.basis().exactly_orthonormal()) return f.beta().tail(f.basis().size()).squaredNorm();
    return integrate_midpoint([&](double t) {
        const double r = eval_pacf(f, t);
        return r * r;
    });
}

double coeff_square_integral_sum(const SieveFit& f) {
    if (f.basis().exactly_orthonormal()) return f.beta().squaredNorm();
    double acc = 0.0;
    for (Index k = 1; k <= f.lag(); ++k)
        acc += integrate_midpoint([&](double t) {
            const double v = eval_coeff(f, k, t);
            return v * v;
        });
    return acc;
}

double pacf_centered_square_integral(const SieveFit& f) {
    const Index c = f.basis().size();
    if (f.basis().exactly_orthonormal()) {
        // alpha_1 == 1, so the mean is the constant coefficient.
        return f.beta().tail(c).tail(c - 1).squaredNorm();
    }
    const double mean = integrate_midpoint([&](double t) { return eval_pacf(f, t); });
    return integrate_midpoint([&](double t) {
        const double r = eval_pacf(f, t) - mean;
        return r * r;
    });
}

}  // namespace lspacf
