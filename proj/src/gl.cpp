#include "moq/gl.hpp"

#include <algorithm>

namespace moq {

GlElement::GlElement(FpMatrix m) : mat_(std::move(m)) {
    detail::require_same(mat_.is_square(), "gl_N element must be square");
}

GlElement GlElement::zero(std::size_t n, Residue p) { return GlElement(FpMatrix(n, n, p)); }

GlElement GlElement::unit(std::size_t n, std::size_t i, std::size_t j, Residue p) {
    detail::require(i < n && j < n, "matrix unit index out of range");
    FpMatrix m(n, n, p);
    m.at(i, j) = 1 % p;
    return GlElement(std::move(m));
}

GlElement GlElement::from_coords(std::size_t n, Residue p, std::span<const Residue> coords) {
    detail::require_same(coords.size() == n * n, "coordinate vector length must be N^2");
    FpMatrix m(n, n, p);
    for (std::size_t k = 0; k < n * n; ++k) m.at(k / n, k % n) = coords[k] % p;
    return GlElement(std::move(m));
}

Residue LinearFunctional::operator()(const GlElement& x) const { return kappa_pair(preimage, x); }

std::vector<Residue> LinearFunctional::coords() const {
    const std::size_t n = preimage.n();
    std::vector<Residue> c(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) c[i * n + j] = preimage.mat()(j, i);
    return c;
}

LinearFunctional kappa(const GlElement& y) { return {y}; }

GlElement bracket(const GlElement& x, const GlElement& y) {
    detail::require_same(x.n() == y.n() && x.modulus() == y.modulus(), "bracket operands differ in size");
    return x * y - y * x;
}

Residue kappa_pair(const GlElement& x, const GlElement& y) {
    detail::require_same(x.n() == y.n() && x.modulus() == y.modulus(), "kappa operands differ in size");
    const std::size_t n = x.n();
    const Residue p = x.modulus();
    Residue t = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) t = mod_add(t, mod_mul(x.mat()(i, j), y.mat()(j, i), p), p);
    return t;
}

FpMatrix kappa_gram(std::size_t n, Residue p) {
    FpMatrix g(n * n, n * n, p);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g.at(i * n + j, j * n + i) = 1 % p;
    return g;
}

Subspace kappa_image(const Subspace& s, std::size_t n) {
    detail::require_same(s.ambient_dim() == n * n, "kappa_image: subspace is not in gl_N");
    FpMatrix gens(s.dim(), n * n, s.modulus());
    for (std::size_t r = 0; r < s.dim(); ++r)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) gens.at(r, i * n + j) = s.basis()(r, j * n + i);
    return Subspace::span(gens);
}

GlElement p_power(const GlElement& x) { return GlElement(x.mat().pow(x.modulus())); }

FpMatrix adjoint_matrix(const GlElement& x) {
    const std::size_t n = x.n();
    const Residue p = x.modulus();
    const auto& a = x.mat();
    FpMatrix ad(n * n, n * n, p);
    // [x, e_kl] = sum_i x_ik e_il - sum_j x_lj e_kj
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
            const std::size_t col = k * n + l;
            for (std::size_t i = 0; i < n; ++i) ad.at(i * n + l, col) = mod_add(ad(i * n + l, col), a(i, k), p);
            for (std::size_t j = 0; j < n; ++j) ad.at(k * n + j, col) = mod_sub(ad(k * n + j, col), a(l, j), p);
        }
    return ad;
}

Subspace ad_image(const GlElement& x) { return Subspace::span(adjoint_matrix(x).transpose()); }

Subspace centraliser(const GlElement& x) { return rref(adjoint_matrix(x)).kernel; }

std::size_t orbit_dim(const GlElement& x) { return rank(adjoint_matrix(x)); }

bool is_nilpotent(const GlElement& x) { return x.mat().pow(x.n()).is_zero(); }

ConjugacyInvariants conjugacy_invariants(const GlElement& x) {
    ConjugacyInvariants out;
    out.factors = poly_invariant_factors(FpPolyMatrix::characteristic(x.mat()));
    bool nilpotent = true;
    for (const auto& f : out.factors)
        if (f.degree() < 0 || f != FpPoly::monomial(f.degree(), 1, x.modulus())) nilpotent = false;
    if (nilpotent)
        for (const auto& f : out.factors)
            if (f.degree() > 0) out.jordan_type.push_back(static_cast<std::size_t>(f.degree()));
    return out;
}

std::vector<std::size_t> jordan_type_from_ranks(const GlElement& x) {
    detail::require(is_nilpotent(x), "jordan_type_from_ranks: element is not nilpotent");
    const std::size_t n = x.n();
    // r[k] = rank x^k; the number of blocks of size >= k is r[k-1] - r[k].
    std::vector<std::size_t> r{n};
    FpMatrix power = FpMatrix::identity(n, x.modulus());
    while (r.back() > 0) {
        power = power * x.mat();
        r.push_back(rank(power));
    }
    std::vector<std::size_t> parts;
    for (std::size_t k = 1; k < r.size(); ++k) {
        std::size_t at_least_k = r[k - 1] - r[k];
        std::size_t at_least_next = k + 1 < r.size() ? r[k] - r[k + 1] : 0;
        for (std::size_t c = 0; c < at_least_k - at_least_next; ++c) parts.push_back(k);
    }
    std::sort(parts.begin(), parts.end());
    return parts;
}

}  // namespace moq
