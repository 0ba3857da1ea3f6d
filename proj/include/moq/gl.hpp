#pragma once

// The restricted Lie algebra gl_N over F_p.
//
// Coordinates: the matrix unit e_ij (0-based) is basis vector i*N + j, so the
// coordinate vector of x is its row-major entry list.  Functionals on gl_N use
// the dual basis; kappa(y) has coordinate Tr(y e_ij) = y_ji at i*N + j.

#include <vector>

#include "moq/ffmat.hpp"

namespace moq {

class GlElement {
public:
    GlElement() = default;
    explicit GlElement(FpMatrix m);

    static GlElement zero(std::size_t n, Residue p);
    static GlElement unit(std::size_t n, std::size_t i, std::size_t j, Residue p);
    static GlElement from_coords(std::size_t n, Residue p, std::span<const Residue> coords);

    std::size_t n() const { return mat_.rows(); }
    Residue modulus() const { return mat_.modulus(); }
    const FpMatrix& mat() const { return mat_; }
    std::span<const Residue> coords() const { return mat_.data(); }

    GlElement operator+(const GlElement& o) const { return GlElement(mat_ + o.mat_); }
    GlElement operator-(const GlElement& o) const { return GlElement(mat_ - o.mat_); }
    GlElement operator*(const GlElement& o) const { return GlElement(mat_ * o.mat_); }
    GlElement scaled(Residue s) const { return GlElement(mat_.scaled(s)); }
    bool is_zero() const { return mat_.is_zero(); }
    bool operator==(const GlElement&) const = default;

private:
    FpMatrix mat_;
};

/// chi = kappa(y), stored by its preimage y.
struct LinearFunctional {
    GlElement preimage;

    Residue operator()(const GlElement& x) const;
    /// Dual-basis coordinates chi(e_k).
    std::vector<Residue> coords() const;
};

LinearFunctional kappa(const GlElement& y);

GlElement bracket(const GlElement& x, const GlElement& y);
Residue kappa_pair(const GlElement& x, const GlElement& y);
/// Gram matrix of the trace form on the matrix-unit basis.
FpMatrix kappa_gram(std::size_t n, Residue p);
/// kappa applied to a subspace of g, as a subspace of g* in dual coordinates.
Subspace kappa_image(const Subspace& s, std::size_t n);

/// The restricted p-map x^[p] = x^p.
GlElement p_power(const GlElement& x);

/// N²×N² matrix of ad(x); column k is the coordinate vector of [x, e_k].
FpMatrix adjoint_matrix(const GlElement& x);
/// [g, x] as a subspace of g.
Subspace ad_image(const GlElement& x);
Subspace centraliser(const GlElement& x);
std::size_t orbit_dim(const GlElement& x);

struct ConjugacyInvariants {
    std::vector<FpPoly> factors;
    /// Jordan partition (weakly increasing) when x is nilpotent, otherwise empty.
    std::vector<std::size_t> jordan_type;

    bool operator==(const ConjugacyInvariants& o) const { return factors == o.factors; }
};

ConjugacyInvariants conjugacy_invariants(const GlElement& x);

/// Jordan partition of a nilpotent x from the ranks of its powers.
std::vector<std::size_t> jordan_type_from_ranks(const GlElement& x);

bool is_nilpotent(const GlElement& x);

}  // namespace moq
