#pragma once

// Exact linear algebra over a prime field F_p.
//
// Residues are stored as std::uint32_t in [0, p).  Every matrix, subspace and
// polynomial carries its modulus; mixing moduli raises DimensionMismatch.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "moq/error.hpp"

namespace moq {

using Residue = std::uint32_t;

bool is_prime(std::uint64_t n);

/// Reduce an arbitrary signed integer into [0, p).
inline Residue mod_reduce(long long v, Residue p) {
    long long r = v % static_cast<long long>(p);
    return static_cast<Residue>(r < 0 ? r + p : r);
}

inline Residue mod_add(Residue a, Residue b, Residue p) {
    Residue s = a + b;
    return s >= p ? s - p : s;
}

inline Residue mod_sub(Residue a, Residue b, Residue p) { return a >= b ? a - b : a + p - b; }

inline Residue mod_mul(Residue a, Residue b, Residue p) {
    return static_cast<Residue>(static_cast<std::uint64_t>(a) * b % p);
}

inline Residue mod_neg(Residue a, Residue p) { return a == 0 ? 0 : p - a; }

Residue mod_pow(Residue a, std::uint64_t e, Residue p);

/// Inverse of a nonzero residue; throws InvalidArgument on zero.
Residue mod_inv(Residue a, Residue p);

/// An element of F_p that remembers its modulus.
class FpScalar {
public:
    FpScalar() = default;
    FpScalar(long long v, Residue p);

    Residue value() const { return value_; }
    Residue modulus() const { return modulus_; }

    FpScalar operator+(FpScalar o) const;
    FpScalar operator-(FpScalar o) const;
    FpScalar operator*(FpScalar o) const;
    FpScalar operator/(FpScalar o) const;
    FpScalar operator-() const;
    FpScalar inverse() const;
    FpScalar pow(std::uint64_t e) const;

    bool operator==(const FpScalar&) const = default;

private:
    void check(FpScalar o) const;

    Residue value_ = 0;
    Residue modulus_ = 2;
};

class Subspace;

/// Dense row-major matrix over F_p.
class FpMatrix {
public:
    FpMatrix() = default;
    FpMatrix(std::size_t rows, std::size_t cols, Residue p);

    static FpMatrix identity(std::size_t n, Residue p);
    static FpMatrix from_rows(Residue p, std::initializer_list<std::initializer_list<long long>> rows);
    static FpMatrix from_rows(Residue p, const std::vector<std::vector<Residue>>& rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Residue modulus() const { return p_; }

    Residue operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    Residue& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, long long v) { data_[r * cols_ + c] = mod_reduce(v, p_); }

    std::span<const Residue> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    std::span<Residue> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const Residue> data() const { return data_; }

    FpMatrix operator+(const FpMatrix& o) const;
    FpMatrix operator-(const FpMatrix& o) const;
    FpMatrix operator*(const FpMatrix& o) const;
    FpMatrix scaled(Residue s) const;
    FpMatrix transpose() const;
    FpMatrix pow(std::uint64_t e) const;
    std::vector<Residue> apply(std::span<const Residue> v) const;

    Residue trace() const;
    bool is_zero() const;
    bool is_square() const { return rows_ == cols_; }

    /// Append the rows of another matrix with the same width and modulus.
    void append_rows(const FpMatrix& o);
    void append_row(std::span<const Residue> r);

    bool operator==(const FpMatrix&) const = default;

    std::string to_string() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    Residue p_ = 2;
    std::vector<Residue> data_;
};

/// A linear subspace of F_p^n, stored by its reduced row-echelon basis.
///
/// The basis is canonical: two Subspace values span the same set exactly when
/// their stored bases are identical, so equality is a plain comparison.
class Subspace {
public:
    Subspace() = default;

    static Subspace zero(std::size_t ambient, Residue p);
    static Subspace full(std::size_t ambient, Residue p);
    /// Row span of an arbitrary generator matrix.
    static Subspace span(const FpMatrix& generators);
    static Subspace span(std::size_t ambient, Residue p, const std::vector<std::vector<Residue>>& vectors);
    /// Coordinate subspace spanned by the listed standard basis vectors.
    static Subspace coordinate(std::size_t ambient, Residue p, std::span<const std::size_t> coords);

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return basis_.rows(); }
    Residue modulus() const { return p_; }
    const FpMatrix& basis() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    bool contains(std::span<const Residue> v) const;
    bool contains(const Subspace& other) const;
    /// Remainder of v after clearing the pivot coordinates with the basis.
    std::vector<Residue> reduce(std::span<const Residue> v) const;

    Subspace sum(const Subspace& other) const;
    Subspace intersection(const Subspace& other) const;
    /// Annihilator under the standard dot product.
    Subspace orthogonal_complement() const;

    bool operator==(const Subspace& o) const {
        return ambient_ == o.ambient_ && p_ == o.p_ && basis_ == o.basis_;
    }

private:
    Subspace(std::size_t ambient, Residue p, FpMatrix basis, std::vector<std::size_t> pivots);
    void check_compatible(const Subspace& o) const;

    std::size_t ambient_ = 0;
    Residue p_ = 2;
    FpMatrix basis_;
    std::vector<std::size_t> pivots_;
};

/// An echelon basis grown one vector at a time, for span closures.
class EchelonBasis {
public:
    EchelonBasis(std::size_t ambient, Residue p) : ambient_(ambient), p_(p) {}

    /// Reduces v against the basis in place; a nonzero remainder is normalised and added, returning true.
    bool insert(std::vector<Residue>& v);
    bool contains(std::vector<Residue> v) const;

    std::size_t rank() const { return rows_.size(); }
    const std::vector<std::vector<Residue>>& rows() const { return rows_; }
    Subspace subspace() const;

private:
    void reduce(std::vector<Residue>& v) const;

    std::size_t ambient_;
    Residue p_;
    std::vector<std::vector<Residue>> rows_;
    std::vector<std::size_t> pivots_;
};

struct RowReduction {
    FpMatrix rref;
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
    Subspace kernel;  // right null space
};

RowReduction rref(const FpMatrix& m);

/// In-place reduced row-echelon form with zero rows dropped; returns pivot columns.
std::vector<std::size_t> reduce_rows_in_place(FpMatrix& m);

std::size_t rank(const FpMatrix& m);

struct SubspaceLattice {
    Subspace sum;
    Subspace intersection;
    bool contains = false;  // a ⊆ b
    bool equal = false;
};

SubspaceLattice subspace_lattice(const Subspace& a, const Subspace& b);

/// Complement c of sub inside `inside` with c ⊕ sub = inside.
///
/// Coordinates are prioritised by pivot_order (a permutation of 0..n-1); the
/// complement is spanned by the basis vectors of `inside` whose positions are
/// not pivots of sub.  When `inside` is a coordinate subspace this is just the
/// set of standard coordinates not covered by the pivots of sub.
Subspace graded_complement(const Subspace& sub, const Subspace& inside, std::span<const std::size_t> pivot_order);

/// Univariate polynomial over F_p, coefficients stored low degree first.
class FpPoly {
public:
    FpPoly() = default;
    explicit FpPoly(Residue p) : p_(p) {}
    FpPoly(Residue p, std::vector<Residue> coeffs);

    static FpPoly constant(long long c, Residue p);
    /// The monomial c * t^deg.
    static FpPoly monomial(std::size_t deg, long long c, Residue p);

    Residue modulus() const { return p_; }
    bool is_zero() const { return coeffs_.empty(); }
    /// Degree; -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    Residue coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : 0; }
    Residue leading() const { return coeffs_.empty() ? 0 : coeffs_.back(); }
    const std::vector<Residue>& coeffs() const { return coeffs_; }

    FpPoly operator+(const FpPoly& o) const;
    FpPoly operator-(const FpPoly& o) const;
    FpPoly operator*(const FpPoly& o) const;
    FpPoly scaled(Residue s) const;
    FpPoly monic() const;
    Residue evaluate(Residue x) const;

    /// Euclidean division; throws InvalidArgument for a zero divisor.
    void divmod(const FpPoly& d, FpPoly& q, FpPoly& r) const;
    FpPoly operator%(const FpPoly& d) const;

    bool operator==(const FpPoly&) const = default;

    std::string to_string() const;

private:
    void trim();

    Residue p_ = 2;
    std::vector<Residue> coeffs_;
};

FpPoly poly_gcd(FpPoly a, FpPoly b);

/// Square matrix of polynomials over F_p.
class FpPolyMatrix {
public:
    FpPolyMatrix(std::size_t n, Residue p);

    /// The characteristic matrix tI - A.
    static FpPolyMatrix characteristic(const FpMatrix& a);

    std::size_t size() const { return n_; }
    Residue modulus() const { return p_; }
    const FpPoly& operator()(std::size_t r, std::size_t c) const { return entries_[r * n_ + c]; }
    FpPoly& at(std::size_t r, std::size_t c) { return entries_[r * n_ + c]; }

private:
    std::size_t n_;
    Residue p_;
    std::vector<FpPoly> entries_;
};

/// Smith invariant factors d_1 | d_2 | ... | d_n, each monic (zero factors stay zero).
std::vector<FpPoly> poly_invariant_factors(FpPolyMatrix m);

}  // namespace moq
