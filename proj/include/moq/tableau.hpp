#pragma once

// Tableaux on a pyramid, the row and column-swap groups, and the
// correspondence between column-connected tableaux and z*.

#include <memory>
#include <string>
#include <vector>

#include "moq/pyramid.hpp"

namespace moq {

using PyramidPtr = std::shared_ptr<const Pyramid>;

class Tableau {
public:
    Tableau(PyramidPtr py, std::vector<Residue> entries, Residue p);

    /// Parses rows separated by ';' and entries by ',', e.g. "1;0,1". Negative entries are reduced mod p.
    static Tableau parse(PyramidPtr py, const std::string& text, Residue p);

    const Pyramid& pyramid() const { return *py_; }
    const PyramidPtr& pyramid_ptr() const { return py_; }
    Residue modulus() const { return p_; }
    const std::vector<Residue>& entries() const { return entries_; }
    Residue operator[](std::size_t box) const { return entries_[box]; }

    /// Entries of column c from top to bottom.
    std::vector<Residue> column_entries(std::size_t c) const;
    std::string to_string() const;

    bool operator==(const Tableau& o) const { return *py_ == *o.py_ && p_ == o.p_ && entries_ == o.entries_; }

private:
    PyramidPtr py_;
    std::vector<Residue> entries_;
    Residue p_;
};

/// A permutation w of the boxes, stored as its images w(0), ..., w(N-1).
class BoxPermutation {
public:
    BoxPermutation(const Pyramid& py, std::vector<std::size_t> images);

    static BoxPermutation identity(const Pyramid& py);
    /// The column swap w_(a;b); the columns must have equal height.
    static BoxPermutation column_swap(const Pyramid& py, std::size_t a, std::size_t b);
    /// The rigid column permutation sending column c onto column sigma[c].
    static BoxPermutation from_column_permutation(const Pyramid& py, const std::vector<std::size_t>& sigma);

    std::size_t size() const { return images_.size(); }
    std::size_t operator()(std::size_t i) const { return images_[i]; }
    const std::vector<std::size_t>& images() const { return images_; }
    bool is_row() const { return is_row_; }
    bool is_colswap() const { return is_colswap_; }
    /// For a column swap: the column that column c is carried onto.
    const std::vector<std::size_t>& column_permutation() const { return column_perm_; }

    /// (this ∘ v)(i) = this(v(i)).
    BoxPermutation compose(const Pyramid& py, const BoxPermutation& v) const;
    BoxPermutation inverse(const Pyramid& py) const;

    bool operator==(const BoxPermutation& o) const { return images_ == o.images_; }

private:
    std::vector<std::size_t> images_;
    std::vector<std::size_t> column_perm_;
    bool is_row_ = false;
    bool is_colswap_ = false;
};

/// Entry i of the result is a_{w(i)}; act(v, act(w, A)) = act(w.compose(py, v), A).
Tableau act(const BoxPermutation& w, const Tableau& a);

bool is_column_connected(const Tableau& a);

bool row_equivalent(const Tableau& a, const Tableau& b);
/// Some w in W_row with act(w, a) = b; requires row_equivalent(a, b).
BoxPermutation row_witness(const Tableau& a, const Tableau& b);

Tableau colswap_canonical(const Tableau& a);
/// u in W_col with act(u, a) = colswap_canonical(a).
BoxPermutation colswap_canonical_witness(const Tableau& a);
bool colswap_equivalent(const Tableau& a, const Tableau& b);

struct CapitalFixingTrace {
    BoxPermutation witness;           // in W_col, act(witness, a) = b
    BoxPermutation capital_fixing;    // final row permutation from the loop, fixes every C_r
    std::size_t steps = 0;
    /// Steps after which |C_r ∩ w⁻¹(C_r)| stayed the same; the alignment count still grew.
    std::size_t stalls = 0;
};

/// The capital-fixing algorithm: turns a row witness w into a column-swap witness.
CapitalFixingTrace colswap_from_row_equivalence(const Tableau& a, const Tableau& b, const BoxPermutation& w);

struct ZStarPoint {
    std::vector<Residue> values;  // one per column
    bool operator==(const ZStarPoint&) const = default;
    auto operator<=>(const ZStarPoint&) const = default;
};

ZStarPoint zstar_of(const Tableau& a);
ZStarPoint zstar_of(const Tableau& a, const std::vector<long long>& rho);
Tableau tableau_of(const PyramidPtr& py, const ZStarPoint& z, Residue p);
Tableau tableau_of(const PyramidPtr& py, const ZStarPoint& z, Residue p, const std::vector<long long>& rho);

/// w•ζ = w(ζ + ρ) − ρ for a column swap w.
ZStarPoint dot_act(const BoxPermutation& w, const ZStarPoint& z, const Pyramid& py, Residue p);
ZStarPoint dot_act(const BoxPermutation& w, const ZStarPoint& z, const Pyramid& py, Residue p,
                   const std::vector<long long>& rho);

/// Every element of W_col, identity first.
std::vector<BoxPermutation> column_swap_group(const Pyramid& py);

struct TableauCensus {
    std::vector<Tableau> tableaux;          // all cc tableaux, ordered by zstar value
    std::vector<std::size_t> orbit_of;      // canonical-form class index per tableau
    std::size_t orbit_count_canonical = 0;
    std::size_t orbit_count_burnside = 0;
    std::size_t group_order = 0;
};

TableauCensus enumerate_and_count(const PyramidPtr& py, Residue p, std::uint64_t max_tableaux = 1000000);

}  // namespace moq
