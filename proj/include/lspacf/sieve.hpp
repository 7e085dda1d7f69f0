#pragma once

#include "lspacf/basis.hpp"
#include "lspacf/types.hpp"

#include <Eigen/Cholesky>

namespace lspacf {

/// Stacked regression of a time-varying AR(lag) model in the sieve basis.
///
/// Row r (observation i = lag + 1 + r) regresses x_i on
/// z_{kl}(i/clock) = alpha_k(i/clock) * x_{i-l}; the column of (l, k) is
/// (l-1)*c + (k-1).  The lag-major, basis-minor ordering matches the
/// Kronecker convention w (x) B used throughout the bootstrap.
struct DesignMatrix {
    Index lag;
    BasisSet basis;
    Matrix Y;         ///< (n_obs - lag) x (lag*c)
    Vector response;  ///< x_{lag+1} .. x_{n_obs}
    Index clock_n;
    Index n_obs;
};

DesignMatrix build_design(const TimeSeries& x, Index lag, const BasisSet& basis);

/// OLS fit of a DesignMatrix.  beta solves min |response - Y beta| via a
/// column-pivoted Householder QR; sigma_hat = Y'Y / clock_n is kept with a
/// cached factorization for the bootstrap quadratic forms.
class SieveFit {
public:
    Index lag() const { return lag_; }
    const BasisSet& basis() const { return basis_; }
    const Vector& beta() const { return beta_; }
    const Matrix& sigma_hat() const { return sigma_; }
    Index clock_n() const { return clock_n_; }
    Index n_obs() const { return n_obs_; }
    /// (min |R_ii| / max |R_ii|)^2 from the QR of Y; estimates 1/cond(Y'Y).
    double rcond() const { return rcond_; }

    /// sigma_hat^{-1} v through the cached factorization.
    Vector apply_sigma_inv(const Vector& v) const { return ldlt_.solve(v); }
    Matrix apply_sigma_inv(const Matrix& v) const { return ldlt_.solve(v); }

private:
    explicit SieveFit(BasisSet basis) : basis_(std::move(basis)) {}

    Index lag_ = 0;
    BasisSet basis_;
    Vector beta_;
    Matrix sigma_;
    Eigen::LDLT<Matrix> ldlt_;
    Index clock_n_ = 0;
    Index n_obs_ = 0;
    double rcond_ = 0.0;

    friend SieveFit fit_ols(const DesignMatrix& d);
};

SieveFit fit_ols(const DesignMatrix& d);

/// rho_hat_lag(t): the last coefficient block against B(t).
double eval_pacf(const SieveFit& f, double t);

/// phi_hat_{lag,k}(t), 1 <= k <= lag.
double eval_coeff(const SieveFit& f, Index k, double t);

/// eps_hat_{i,lag} = x_i - sum_k phi_hat_k(i/clock) x_{i-k}, i = lag+1..n.
Vector residuals(const SieveFit& f, const TimeSeries& x);

/// One-step prediction x_hat_i = sum_k phi_hat_{lag,k}(i/clock) x_{i-k}.
double forecast(const SieveFit& f, const TimeSeries& x, Index i);

/// int_0^1 rho_hat(t)^2 dt: the squared norm of the last coefficient block
/// for an exactly orthonormal basis, else a 1,000-point midpoint rule.
double pacf_square_integral(const SieveFit& f);

/// sum_{k=1}^{lag} int_0^1 phi_hat_{lag,k}(t)^2 dt.
double coeff_square_integral_sum(const SieveFit& f);

/// int_0^1 (rho_hat(t) - int_0^1 rho_hat(s) ds)^2 dt.
double pacf_centered_square_integral(const SieveFit& f);

}  // namespace lspacf
