#pragma once

#include "lspacf/types.hpp"

#include <functional>

namespace lspacf {

/// Analytic local autocovariance gamma(t, k) of a known model; the
/// ground-truth input for PACF oracles.  gamma(t, 0) > 0 and the Toeplitz
/// matrices it generates must be positive definite up to `max_lag`
/// (checked lazily at solve time).
struct AcfFunction {
    std::function<double(double t, Index k)> gamma;
    Index max_lag = 1 << 20;
};

/// phi_j(t) = Gamma_j(t)^{-1} nu_j(t) with Gamma_j^{(k,l)} = gamma(t,|k-l|)
/// and nu_j^{(k)} = gamma(t,k), solved by a symmetric positive-definite
/// factorization.  Throws SingularError when the smallest pivot drops below
/// 1e-12 * gamma(t,0).
Vector yw_solve(const AcfFunction& acf, double t, Index j);

struct LevinsonResult {
    Vector pacf;       ///< rho_1..rho_J
    Vector ar_coeffs;  ///< phi_{J,1}..phi_{J,J}, the final-order coefficients
};

/// Levinson-Durbin on autocovariances gamma_0..gamma_J.  rho_j equals the
/// j-th component of yw_solve at every order j <= J.
LevinsonResult levinson_durbin(const Vector& gamma);

/// Curve of the lag-j PACF rho_j(t) over a grid of rescaled times.
struct PacfCurve {
    Index lag = 0;
    Vector t;
    Vector rho;
};

PacfCurve pacf_oracle(const AcfFunction& acf, Index lag, const Vector& grid);

}  // namespace lspacf
