#pragma once

#include "lspacf/types.hpp"

#include <memory>
#include <string>
#include <string_view>
#include <utility>

namespace lspacf {

enum class BasisFamily { Legendre, Fourier, Chebyshev };

BasisFamily basis_family_from_string(std::string_view name);
std::string to_string(BasisFamily family);

/// Orthonormal basis alpha_1..alpha_c of L^2[0,1]; alpha_1 == 1 for every
/// family.  Legendre uses the shifted normalized polynomials
/// alpha_k(t) = sqrt(2k-1) P_{k-1}(2t-1); Fourier interleaves
/// {1, sqrt2 cos(2pi k t), sqrt2 sin(2pi k t)}; Chebyshev takes T_{k-1}(2t-1)
/// orthonormalized against the Lebesgue measure by modified Gram-Schmidt on
/// the fixed quadrature grid.
///
/// Immutable after construction; safe to share across threads.
class BasisSet {
public:
    BasisFamily family() const { return family_; }
    Index size() const { return c_; }

    /// Orthonormal in exact arithmetic (Legendre, Fourier), so integrals of
    /// fitted quantities admit the coefficient-norm closed form.
    bool exactly_orthonormal() const { return family_ != BasisFamily::Chebyshev; }

    /// B(t) = (alpha_1(t), ..., alpha_c(t)); t must lie in [0,1].
    Vector eval(double t) const;

private:
    BasisSet(BasisFamily family, Index c, std::shared_ptr<const Matrix> mixing)
        : family_(family), c_(c), mixing_(std::move(mixing)) {}

    BasisFamily family_;
    Index c_;
    std::shared_ptr<const Matrix> mixing_;  // Chebyshev only

    friend BasisSet make_basis(BasisFamily, Index);
};

BasisSet make_basis(BasisFamily family, Index c);

inline Vector eval_basis(const BasisSet& b, double t) { return b.eval(t); }

/// (xi_c, zeta_c): sup over an evenly spaced grid of max_k |alpha_k(t)| and
/// of the Euclidean norm |B(t)|.
std::pair<double, double> basis_sup_norms(const BasisSet& b, Index grid_size);

/// max |G - I| with G the Gram matrix under the fixed 10,001-node
/// composite-Simpson rule.
double gram_error(const BasisSet& b);

}  // namespace lspacf
