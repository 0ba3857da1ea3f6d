#pragma once

// The reduced enveloping algebra U_chi(gl_N) in PBW normal form, induced small
// modules, annihilators and central characters.
//
// PBW positions list the matrix units r⁻ first, then g₀, then r, each group in
// row-major order.  A monomial prod x_pos^{a_pos} (taken in position order) is
// encoded as sum a_pos p^pos.

#include <array>
#include <map>
#include <memory>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

#include "moq/slice.hpp"
#include "moq/tableau.hpp"

namespace moq {

class URedContext {
public:
    using Code = std::uint64_t;
    using Terms = std::vector<std::pair<Code, Residue>>;

    /// order[pos] is the gl index i*N+j placed at PBW position pos; groups gives the sizes of r⁻, g₀, r.
    URedContext(std::size_t n, Residue p, LinearFunctional chi, std::vector<std::size_t> order,
                std::array<std::size_t, 3> groups);

    std::size_t n() const { return n_; }
    Residue modulus() const { return p_; }
    const LinearFunctional& chi() const { return chi_; }
    std::size_t generators() const { return n_ * n_; }
    /// Number of PBW monomials, p^{N²} (saturates at UINT64_MAX).
    std::uint64_t pbw_dim() const { return pbw_dim_; }
    std::size_t gl_index(std::size_t pos) const { return order_[pos]; }
    std::size_t position(std::size_t gl_index) const { return position_[gl_index]; }
    /// Sizes of the r⁻, g₀ and r blocks of positions.
    const std::array<std::size_t, 3>& groups() const { return groups_; }
    Code stride(std::size_t pos) const { return stride_[pos]; }

    std::vector<Residue> exponents(Code code) const;
    Code encode(const std::vector<Residue>& exponents) const;

    /// Normal form of x_pos * (monomial code).  Memoized; safe to call concurrently.
    const Terms& mul_gen_mono(std::size_t pos, Code code) const;

    std::size_t memo_size() const;

private:
    Terms compute(std::size_t pos, Code code) const;

    std::size_t n_;
    Residue p_;
    LinearFunctional chi_;
    std::vector<std::size_t> order_, position_;
    std::array<std::size_t, 3> groups_;
    std::vector<Code> stride_;
    std::uint64_t pbw_dim_ = 0;
    std::vector<Residue> chi_values_;                                 // chi(x_pos)^p = chi(x_pos)
    std::vector<bool> diagonal_;                                      // x_pos^[p] = x_pos
    std::vector<std::vector<std::pair<std::size_t, Residue>>> brk_;  // [x_a, x_b] over positions, by a*N²+b

    mutable std::shared_mutex memo_mutex_;
    mutable std::unordered_map<Code, Terms> memo_;  // key code * N² + pos
};

using URedContextPtr = std::shared_ptr<const URedContext>;

/// The context of U_chi(gl_N) for chi = kappa(e) with e read off the pyramid.
URedContextPtr make_ured_context(const Pyramid& py, Residue p);
/// A context with every matrix unit in g₀ (the plain row-major PBW order).
URedContextPtr make_ured_context(std::size_t n, Residue p, const LinearFunctional& chi);

class URedElement {
public:
    using Code = URedContext::Code;

    explicit URedElement(URedContextPtr ctx) : ctx_(std::move(ctx)) {}
    URedElement(URedContextPtr ctx, std::map<Code, Residue> terms);

    static URedElement one(const URedContextPtr& ctx);
    /// The matrix unit with gl index k.
    static URedElement generator(const URedContextPtr& ctx, std::size_t k);
    static URedElement from_gl(const URedContextPtr& ctx, const GlElement& x);
    static URedElement monomial(const URedContextPtr& ctx, Code code);

    const URedContextPtr& context() const { return ctx_; }
    const std::map<Code, Residue>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    URedElement operator+(const URedElement& o) const;
    URedElement operator-(const URedElement& o) const;
    URedElement scaled(Residue c) const;
    bool operator==(const URedElement& o) const;

    /// Terms joined by " + ", monomials as e21^2*e12 in 1-based labels; "0" for zero.
    std::string to_string() const;

private:
    void check(const URedElement& o) const;

    URedContextPtr ctx_;
    std::map<Code, Residue> terms_;
};

/// Normal form of the product of the listed matrix units (gl indices).
URedElement straighten(const URedContextPtr& ctx, const std::vector<std::size_t>& word);
URedElement multiply(const URedElement& u, const URedElement& v);

struct URedModule {
    std::size_t n = 0;
    Residue p = 2;
    std::size_t dim = 0;
    std::vector<FpMatrix> rho;  // one matrix per gl index
    LinearFunctional chi;

    FpMatrix act(const GlElement& x) const;
};

struct ModuleCheck {
    bool bracket = true;
    bool p_power = true;
    bool pass() const { return bracket && p_power; }
};

/// [rho(x), rho(y)] = rho([x, y]) and rho(x)^p = rho(x^[p]) + chi(x)^p on all basis elements.
ModuleCheck verify_module(const URedModule& m);

/// The module induced from the character zeta_A of p = g₀ ⊕ r, with basis the r⁻ PBW monomials.
URedModule induce_small_module(const URedContextPtr& ctx, const Tableau& a, std::size_t max_module_dim = 256);

URedModule direct_sum(const URedModule& a, const URedModule& b);
/// Left multiplication on U_chi in the PBW basis.
URedModule regular_module(const URedContextPtr& ctx, std::size_t max_module_dim = 256);
/// A one-dimensional module given by one scalar per gl index.
URedModule character_module(std::size_t n, Residue p, const LinearFunctional& chi, const std::vector<Residue>& values);

/// The span of the image of U_chi has dimension dim².
bool is_absolutely_simple(const URedModule& m);
/// Searches the intertwiner space for an invertible element; exact when either module is simple.
bool are_isomorphic(const URedModule& a, const URedModule& b);

/// rho of a PBW element.
FpMatrix module_action(const URedModule& m, const URedElement& u);

struct Annihilator {
    /// Span of the matrix-coefficient functionals u -> rho(u)_{rs} on U_chi; Ann is its annihilator.
    Subspace coimage;
    std::uint64_t dim = 0;
    std::uint64_t codim = 0;

    Subspace subspace() const { return coimage.orthogonal_complement(); }
    bool operator==(const Annihilator& o) const { return coimage == o.coimage; }
};

/// Kernel of U_chi -> End(M) on the PBW basis.  Throws BudgetExceeded when p^{N²} > max_pbw_dim.
Annihilator annihilator(const URedContextPtr& ctx, const URedModule& m, std::uint64_t max_pbw_dim = 1u << 16);

struct KWResult {
    std::size_t orbit_dim = 0;
    bool divisible = false;  // p^{d} divides dim²
    bool small = false;      // p^{d} = dim²
};

KWResult kw_divisibility(const URedModule& m, const GlElement& chi_preimage);

struct KazhdanDegreeData {
    std::vector<int> dynkin;   // per gl index
    std::vector<int> kazhdan;  // dynkin + 2
};

KazhdanDegreeData kazhdan_degrees(const SliceData& slice);

struct KazhdanSymbolReport {
    std::size_t checked = 0;
    bool chi_vanishes = true;      // chi(x) = 0 unless x in g(-2)
    bool eta_agrees = true;        // eta(x) = chi(x) on g(<= -2)
    bool p_map_graded = true;      // x^[p] in g(ip)
    bool symbol_matches = true;    // symbol of x^p - x^[p] - eta(x)^p is x^p - chi(x)^p
    std::size_t case_below = 0, case_minus_two = 0, case_above = 0;
    bool pass() const { return chi_vanishes && eta_agrees && p_map_graded && symbol_matches; }
};

/// Throws InvalidArgument unless eta lies in chi + kappa(g(<= 1)).
KazhdanSymbolReport kazhdan_symbol_check(const SliceData& slice, const LinearFunctional& eta);

/// c_k = sum e_{i1 i2} e_{i2 i3} ... e_{ik i1}; centrality in U_chi is asserted.
URedElement gelfand_element(const URedContextPtr& ctx, std::size_t k);

/// The scalar by which c_k acts on an absolutely simple module; throws VerificationFailure if rho(c_k) is not scalar.
Residue gelfand_central_character(const URedContextPtr& ctx, const URedModule& m, std::size_t k);

/// Drops every PBW monomial with an r⁻ or r factor and evaluates the rest at zeta_A; asserts agreement
/// with the action of u on the induced module of A.  Throws InvalidArgument unless u has weight zero.
Residue harish_chandra_scalar(const URedElement& u, const Tableau& a);

}  // namespace moq
