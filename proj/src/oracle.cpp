#include "lspacf/oracle.hpp"

#include "lspacf/errors.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <stdexcept>

namespace lspacf {

Vector yw_solve(const AcfFunction& acf, double t, Index j) {
    if (j < 1) throw std::invalid_argument("yw_solve needs lag j >= 1");
    if (j > acf.max_lag) throw std::invalid_argument("lag exceeds the ACF's usable range");

    Vector gamma(j + 1);
    for (Index k = 0; k <= j; ++k) gamma[k] = acf.gamma(t, k);
    if (!(gamma[0] > 0.0)) throw SingularError("gamma(t,0) must be positive");

    Matrix G(j, j);
    for (Index k = 0; k < j; ++k)
        for (Index l = 0; l < j; ++l) G(k, l) = gamma[std::abs(k - l)];

    Eigen::LDLT<Matrix> ldlt(G);
    if (ldlt.info() != Eigen::Success || ldlt.vectorD().minCoeff() < 1e-12 * gamma[0])
        throw SingularError("local Yule-Walker system is numerically singular");

    return ldlt.solve(gamma.segment(1, j));
}

LevinsonResult levinson_durbin(const Vector& gamma) {
    const Index J = gamma.size() - 1;
    if (J < 1) throw std::invalid_argument("levinson_durbin needs gamma_0..gamma_J with J >= 1");
    if (!(gamma[0] > 0.0)) throw SingularError("gamma_0 must be positive");

    LevinsonResult out;
    out.pacf.resize(J);
    Vector phi = Vector::Zero(J), prev = Vector::Zero(J);
    double v = gamma[0];

    for (Index k = 1; k <= J; ++k) {
        double acc = gamma[k];
        for (Index i = 1; i < k; ++i) acc -= prev[i - 1] * gamma[k - i];
        const double kappa = acc / v;
        phi[k - 1] = kappa;
        for (Index i = 1; i < k; ++i) phi[i - 1] = prev[i - 1] - kappa * prev[k - i - 1];
        v *= 1.0 - kappa * kappa;
        if (!(v > 0.0)) throw SingularError("prediction-error variance vanished in Levinson-Durbin");
        out.pacf[k - 1] = kappa;
        prev.head(k) = phi.head(k);
    }
    out.ar_coeffs = phi;
    return out;
}

PacfCurve pacf_oracle(const AcfFunction& acf, Index lag, const Vector& grid) {
    if (lag < 1) throw std::invalid_argument("pacf_oracle needs lag >= 1");
    for (Index i = 0; i < grid.size(); ++i)
        if (!(grid[i] >= 0.0 && grid[i] <= 1.0))
            throw std::domain_error("pacf_oracle grid must lie in [0,1]");

    PacfCurve curve;
    curve.lag = lag;
    curve.t = grid;
    curve.rho.resize(grid.size());
    Vector gamma(lag + 1);
    for (Index i = 0; i < grid.size(); ++i) {
        for (Index k = 0; k <= lag; ++k) gamma[k] = acf.gamma(grid[i], k);
        curve.rho[i] = levinson_durbin(gamma).pacf[lag - 1];
    }
    return curve;
}

}  // namespace lspacf
