#pragma once

// The reduced symmetric algebra k_chi[g*] = k[g*]/(x^p - chi(x)^p) of gl_N and
// its unique maximal Poisson ideal.

#include <vector>

#include "moq/gl.hpp"

namespace moq {

class ReducedPoissonAlgebra {
public:
    /// Monomial x^a over the matrix-unit basis, exponents in [0,p), index sum a_k p^k.
    using Element = std::vector<Residue>;

    ReducedPoissonAlgebra(std::size_t n, Residue p, LinearFunctional chi, std::uint64_t max_dim = 1u << 16);

    std::size_t n() const { return n_; }
    Residue modulus() const { return p_; }
    std::size_t dim() const { return dim_; }
    std::size_t generators() const { return n_ * n_; }
    const LinearFunctional& chi() const { return chi_; }

    std::vector<Residue> exponents(std::size_t monomial) const;
    std::size_t index(const std::vector<Residue>& exponents) const;

    Element zero() const { return Element(dim_, 0); }
    Element one() const;
    Element monomial(std::size_t index) const;
    Element generator(std::size_t k) const;

    Element multiply(const Element& f, const Element& g) const;
    /// Poisson bracket, extended from {x_a, x_b} = [x_a, x_b] by the Leibniz rule.
    Element bracket(const Element& f, const Element& g) const;
    Element add(const Element& f, const Element& g) const;
    Element scale(const Element& f, Residue c) const;

    /// x_k * m for a monomial m, as (coefficient, monomial index).
    std::pair<Residue, std::size_t> generator_times_monomial(std::size_t k, std::size_t m) const;
    /// Sparse image of monomial m under {x_k, -}.
    std::vector<std::pair<std::size_t, Residue>> generator_bracket_monomial(std::size_t k, std::size_t m) const;

    /// Evaluation at chi, the character whose kernel is the maximal ideal.
    Residue evaluate_at_chi(const Element& f) const;

private:
    std::size_t n_;
    Residue p_;
    LinearFunctional chi_;
    std::size_t dim_;
    std::vector<std::size_t> stride_;
    std::vector<Residue> chi_values_;                                     // chi(x_k)
    std::vector<std::vector<std::pair<std::size_t, Residue>>> gen_bracket_;  // {x_k, x_l} by k*N²+l
};

ReducedPoissonAlgebra build_reduced_poisson(std::size_t n, Residue p, const LinearFunctional& chi,
                                            std::uint64_t max_dim = 1u << 16);

struct PoissonIdeal {
    /// The ideal is the common kernel of these equations (rows in RREF).
    FpMatrix equations;
    std::size_t dim = 0;
    std::size_t codim = 0;
    /// Monomials whose classes form a basis of the quotient.
    std::vector<std::size_t> quotient_basis;
    bool contains(const ReducedPoissonAlgebra::Element& f) const;
    /// The ideal itself as a subspace of the algebra.
    Subspace subspace() const { return rref(equations).kernel; }
};

/// The largest subspace of the maximal ideal stable under multiplication by and bracket with every generator.
/// Throws BudgetExceeded when the estimated work exceeds max_work.
PoissonIdeal max_poisson_ideal(const ReducedPoissonAlgebra& alg, double max_work = 4e10);

struct PoissonIdealCheck {
    bool is_ideal = true;
    bool bracket_stable = true;
    bool maximal = true;       // every quotient basis element generates the unit ideal with P
    bool maximality_checked = false;
};

/// Verifies closure of P on every generator, and maximality when the quotient has at most max_quotient elements.
PoissonIdealCheck check_poisson_ideal(const ReducedPoissonAlgebra& alg, const PoissonIdeal& ideal,
                                      std::size_t max_quotient = 256);

}  // namespace moq
