#include "lspacf/basis.hpp"

#include "lspacf/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace lspacf {

namespace {

// Raw Chebyshev vector (T_0, ..., T_{c-1})(2t-1).
void eval_chebyshev_raw(double t, Index c, Vector& out) {
    const double x = 2.0 * t - 1.0;
    out[0] = 1.0;
    if (c > 1) out[1] = x;
    for (Index k = 2; k < c; ++k) out[k] = 2.0 * x * out[k - 1] - out[k - 2];
}

// Upper-triangular-ish mixing matrix C with alpha = C * raw, orthonormal in
// the Simpson inner product on the fixed grid.  Cached per c.
std::shared_ptr<const Matrix> chebyshev_mixing(Index c) {
    static std::mutex mutex;
    static std::map<Index, std::shared_ptr<const Matrix>> cache;
    std::lock_guard lock(mutex);
    if (auto it = cache.find(c); it != cache.end()) return it->second;

    const Vector t = uniform_grid(kQuadPoints);
    const Vector w = simpson_weights(kQuadPoints);
    Matrix raw(kQuadPoints, c);
    Vector row(c);
    for (Index i = 0; i < kQuadPoints; ++i) {
        eval_chebyshev_raw(t[i], c, row);
        raw.row(i) = row.transpose();
    }

    // Modified Gram-Schmidt in the weighted inner product; columns of V are
    // the orthonormalized functions on the grid, C tracks the combination.
    Matrix V = raw;
    Matrix C = Matrix::Identity(c, c);
    for (Index k = 0; k < c; ++k) {
        for (Index j = 0; j < k; ++j) {
            const double proj = (w.array() * V.col(j).array() * V.col(k).array()).sum();
            V.col(k) -= proj * V.col(j);
            C.row(k) -= proj * C.row(j);
        }
        const double norm = std::sqrt((w.array() * V.col(k).array().square()).sum());
        if (!(norm > 0.0)) throw std::runtime_error("chebyshev orthonormalization degenerated");
        V.col(k) /= norm;
        C.row(k) /= norm;
    }

    auto shared = std::make_shared<const Matrix>(std::move(C));
    cache.emplace(c, shared);
    return shared;
}

}  // namespace

BasisFamily basis_family_from_string(std::string_view name) {
    if (name == "legendre") return BasisFamily::Legendre;
    if (name == "fourier") return BasisFamily::Fourier;
    if (name == "chebyshev") return BasisFamily::Chebyshev;
    throw std::invalid_argument("unknown basis family: " + std::string(name));
}

std::string to_string(BasisFamily family) {
    switch (family) {
        case BasisFamily::Legendre: return "legendre";
        case BasisFamily::Fourier: return "fourier";
        case BasisFamily::Chebyshev: return "chebyshev";
    }
    return "?";
}

BasisSet make_basis(BasisFamily family, Index c) {
    if (c < 1) throw std::invalid_argument("basis size c must be >= 1");
    std::shared_ptr<const Matrix> mixing;
    if (family == BasisFamily::Chebyshev) mixing = chebyshev_mixing(c);
    return BasisSet(family, c, std::move(mixing));
}

Vector BasisSet::eval(double t) const {
    if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("basis argument t must lie in [0,1]");
    Vector b(c_);
    switch (family_) {
        case BasisFamily::Legendre: {
            // alpha_k(t) = sqrt(2k-1) P_{k-1}(2t-1) via the three-term recurrence.
            const double x = 2.0 * t - 1.0;
            double pkm1 = 1.0, pk = x;
            b[0] = 1.0;
            if (c_ > 1) b[1] = std::sqrt(3.0) * x;
            for (Index k = 2; k < c_; ++k) {
                const double n = static_cast<double>(k - 1);
                const double pkp1 = ((2.0 * n + 1.0) * x * pk - n * pkm1) / (n + 1.0);
                pkm1 = pk;
                pk = pkp1;
                b[k] = std::sqrt(2.0 * static_cast<double>(k) + 1.0) * pkp1;
            }
            break;
        }
        case BasisFamily::Fourier: {
            b[0] = 1.0;
            const double sqrt2 = std::sqrt(2.0);
            for (Index i = 1; i < c_; ++i) {
                const double k = static_cast<double>((i + 1) / 2);
                const double angle = 2.0 * M_PI * k * t;
                b[i] = sqrt2 * (i % 2 == 1 ? std::cos(angle) : std::sin(angle));
            }
            break;
        }
        case BasisFamily::Chebyshev: {
            Vector raw(c_);
            eval_chebyshev_raw(t, c_, raw);
            b = (*mixing_) * raw;
            break;
        }
    }
    return b;
}

std::pair<double, double> basis_sup_norms(const BasisSet& b, Index grid_size) {
    if (grid_size < 2) throw std::invalid_argument("sup-norm grid needs at least 2 points");
    double xi = 0.0, zeta = 0.0;
    for (Index i = 0; i < grid_size; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(grid_size - 1);
        const Vector v = b.eval(t);
        xi = std::max(xi, v.cwiseAbs().maxCoeff());
        zeta = std::max(zeta, v.norm());
    }
    return {xi, zeta};
}

double gram_error(const BasisSet& b) {
    const Vector t = uniform_grid(kQuadPoints);
    const Vector w = simpson_weights(kQuadPoints);
    const Index c = b.size();
    Matrix gram = Matrix::Zero(c, c);
    for (Index i = 0; i < kQuadPoints; ++i) {
        const Vector v = b.eval(t[i]);
        gram.noalias() += w[i] * v * v.transpose();
    }
    return (gram - Matrix::Identity(c, c)).cwiseAbs().maxCoeff();
}

}  // namespace lspacf
