#include "moq/tableau.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace moq {

Tableau::Tableau(PyramidPtr py, std::vector<Residue> entries, Residue p)
    : py_(std::move(py)), entries_(std::move(entries)), p_(p) {
    detail::require(py_ != nullptr, "tableau needs a pyramid");
    detail::require_same(entries_.size() == py_->size(), "tableau entry count must equal the number of boxes");
    for (auto& v : entries_) v %= p_;
}

Tableau Tableau::parse(PyramidPtr py, const std::string& text, Residue p) {
    std::vector<Residue> entries;
    std::stringstream rows(text);
    std::string row;
    std::size_t r = 0;
    while (std::getline(rows, row, ';')) {
        detail::require(r < py->rows(), "tableau '" + text + "' has too many rows");
        std::stringstream cells(row);
        std::string cell;
        std::size_t count = 0;
        while (std::getline(cells, cell, ',')) {
            std::size_t used = 0;
            long long v = 0;
            try {
                v = std::stoll(cell, &used);
            } catch (const std::exception&) {
                throw InvalidArgument("malformed tableau entry '" + cell + "'");
            }
            detail::require(used == cell.size(), "malformed tableau entry '" + cell + "'");
            entries.push_back(mod_reduce(v, p));
            ++count;
        }
        detail::require(count == py->partition().parts[r], "row " + std::to_string(r + 1) + " of tableau '" + text +
                                                               "' has the wrong length");
        ++r;
    }
    detail::require(r == py->rows(), "tableau '" + text + "' has too few rows");
    return Tableau(std::move(py), std::move(entries), p);
}

std::vector<Residue> Tableau::column_entries(std::size_t c) const {
    std::vector<Residue> v;
    for (auto b : py_->column(c)) v.push_back(entries_[b]);
    return v;
}

std::string Tableau::to_string() const {
    std::string s;
    for (std::size_t r = 0; r < py_->rows(); ++r) {
        if (r) s += ";";
        auto boxes = py_->row_boxes(r);
        for (std::size_t t = 0; t < boxes.size(); ++t) s += (t ? "," : "") + std::to_string(entries_[boxes[t]]);
    }
    return s;
}

// ---------------------------------------------------------------------------
// Permutations

BoxPermutation::BoxPermutation(const Pyramid& py, std::vector<std::size_t> images) : images_(std::move(images)) {
    const std::size_t n = py.size();
    detail::require_same(images_.size() == n, "permutation size must equal the number of boxes");
    std::vector<bool> seen(n, false);
    for (auto v : images_) {
        detail::require(v < n && !seen[v], "not a permutation of the boxes");
        seen[v] = true;
    }
    is_row_ = true;
    for (std::size_t i = 0; i < n; ++i)
        if (py.row(images_[i]) != py.row(i)) is_row_ = false;
    // Rigid column motion: column c lands top to bottom on a column of the same height.
    is_colswap_ = is_row_;
    std::vector<std::size_t> sigma(py.cols());
    for (std::size_t c = 0; c < py.cols() && is_colswap_; ++c) {
        const auto& src = py.column(c);
        std::size_t target = py.col(images_[src.front()]);
        const auto& dst = py.column(target);
        if (dst.size() != src.size()) {
            is_colswap_ = false;
            break;
        }
        for (std::size_t t = 0; t < src.size(); ++t)
            if (images_[src[t]] != dst[t]) is_colswap_ = false;
        sigma[c] = target;
    }
    if (is_colswap_) column_perm_ = std::move(sigma);
}

BoxPermutation BoxPermutation::identity(const Pyramid& py) {
    std::vector<std::size_t> id(py.size());
    std::iota(id.begin(), id.end(), 0);
    return BoxPermutation(py, std::move(id));
}

BoxPermutation BoxPermutation::from_column_permutation(const Pyramid& py, const std::vector<std::size_t>& sigma) {
    detail::require_same(sigma.size() == py.cols(), "column permutation size mismatch");
    std::vector<std::size_t> images(py.size());
    for (std::size_t c = 0; c < py.cols(); ++c) {
        detail::require(sigma[c] < py.cols() && py.heights()[sigma[c]] == py.heights()[c],
                        "column permutation must preserve heights");
        const auto& src = py.column(c);
        const auto& dst = py.column(sigma[c]);
        for (std::size_t t = 0; t < src.size(); ++t) images[src[t]] = dst[t];
    }
    BoxPermutation w(py, std::move(images));
    detail::ensure(w.is_colswap(), "rigid column permutation is not a column swap");
    return w;
}

BoxPermutation BoxPermutation::column_swap(const Pyramid& py, std::size_t a, std::size_t b) {
    detail::require(a < py.cols() && b < py.cols(), "column index out of range");
    detail::require(py.heights()[a] == py.heights()[b], "column swap needs columns of equal height");
    std::vector<std::size_t> sigma(py.cols());
    std::iota(sigma.begin(), sigma.end(), 0);
    std::swap(sigma[a], sigma[b]);
    return from_column_permutation(py, sigma);
}

BoxPermutation BoxPermutation::compose(const Pyramid& py, const BoxPermutation& v) const {
    detail::require_same(size() == v.size(), "permutation size mismatch");
    std::vector<std::size_t> out(size());
    for (std::size_t i = 0; i < size(); ++i) out[i] = images_[v.images_[i]];
    return BoxPermutation(py, std::move(out));
}

BoxPermutation BoxPermutation::inverse(const Pyramid& py) const {
    std::vector<std::size_t> out(size());
    for (std::size_t i = 0; i < size(); ++i) out[images_[i]] = i;
    return BoxPermutation(py, std::move(out));
}

Tableau act(const BoxPermutation& w, const Tableau& a) {
    detail::require_same(w.size() == a.entries().size(), "permutation and tableau differ in size");
    std::vector<Residue> out(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) out[i] = a[w(i)];
    return Tableau(a.pyramid_ptr(), std::move(out), a.modulus());
}

bool is_column_connected(const Tableau& a) {
    const auto& py = a.pyramid();
    for (std::size_t i = 0; i < py.size(); ++i)
        if (auto j = py.below(i); j != Pyramid::npos && a[i] != mod_add(a[j], 1 % a.modulus(), a.modulus()))
            return false;
    return true;
}

namespace {

void require_same_shape(const Tableau& a, const Tableau& b) {
    detail::require_same(a.pyramid() == b.pyramid() && a.modulus() == b.modulus(), "tableaux on different pyramids");
}

}  // namespace

bool row_equivalent(const Tableau& a, const Tableau& b) {
    require_same_shape(a, b);
    const auto& py = a.pyramid();
    for (std::size_t r = 0; r < py.rows(); ++r) {
        std::vector<Residue> x, y;
        for (auto box : py.row_boxes(r)) {
            x.push_back(a[box]);
            y.push_back(b[box]);
        }
        std::sort(x.begin(), x.end());
        std::sort(y.begin(), y.end());
        if (x != y) return false;
    }
    return true;
}

BoxPermutation row_witness(const Tableau& a, const Tableau& b) {
    detail::require(row_equivalent(a, b), "row_witness: tableaux are not row equivalent");
    const auto& py = a.pyramid();
    std::vector<std::size_t> img(py.size());
    for (std::size_t r = 0; r < py.rows(); ++r) {
        auto boxes = py.row_boxes(r);
        std::vector<bool> used(boxes.size(), false);
        for (auto i : boxes) {
            std::size_t t = 0;
            while (used[t] || a[boxes[t]] != b[i]) ++t;
            used[t] = true;
            img[i] = boxes[t];
        }
    }
    BoxPermutation w(py, std::move(img));
    detail::ensure(w.is_row() && act(w, a) == b, "row witness does not map a to b");
    return w;
}

BoxPermutation colswap_canonical_witness(const Tableau& a) {
    const auto& py = a.pyramid();
    // u carries column c onto source[c]: act(u, a) has the entries of source[c] in column c.
    std::vector<std::size_t> source(py.cols());
    for (const auto& cls : py.column_classes()) {
        std::vector<std::size_t> order = cls;
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t x, std::size_t y) { return a.column_entries(x) < a.column_entries(y); });
        for (std::size_t k = 0; k < cls.size(); ++k) source[cls[k]] = order[k];
    }
    return BoxPermutation::from_column_permutation(py, source);
}

Tableau colswap_canonical(const Tableau& a) { return act(colswap_canonical_witness(a), a); }

bool colswap_equivalent(const Tableau& a, const Tableau& b) {
    require_same_shape(a, b);
    return colswap_canonical(a) == colswap_canonical(b);
}

CapitalFixingTrace colswap_from_row_equivalence(const Tableau& a, const Tableau& b, const BoxPermutation& w0) {
    require_same_shape(a, b);
    detail::require(is_column_connected(a) && is_column_connected(b), "capital fixing needs column-connected tableaux");
    detail::require(w0.is_row(), "capital fixing needs a row permutation");
    detail::require(act(w0, a) == b, "capital fixing: act(w, A) differs from A'");
    const auto& py = a.pyramid();
    const auto caps = capitals(py);
    std::vector<std::vector<bool>> in_cap(py.rows(), std::vector<bool>(py.size(), false));
    for (std::size_t r = 0; r < py.rows(); ++r)
        for (auto i : caps[r]) in_cap[r][i] = true;

    std::vector<std::size_t> w = w0.images();
    std::size_t steps = 0;
    auto fixed_count = [&](std::size_t r) {
        std::size_t c = 0;
        for (auto l : caps[r])
            if (in_cap[r][w[l]]) ++c;
        return c;
    };
    // Non-capital boxes of row r sent directly below the image of the box above them.
    auto aligned_count = [&](std::size_t r) {
        std::size_t c = 0;
        for (auto box : py.row_boxes(r))
            if (!in_cap[r][box] && w[box] == py.below(w[py.above(box)])) ++c;
        return c;
    };
    std::size_t stalls = 0;
    for (;;) {
        std::size_t r = 0;
        while (r < py.rows() && fixed_count(r) == caps[r].size()) ++r;
        if (r == py.rows()) break;
        detail::ensure(r > 0, "capital fixing: row 1 capitals moved");
        std::size_t i = Pyramid::npos;
        for (auto box : py.row_boxes(r))
            if (!in_cap[r][box] && in_cap[r][w[box]]) {
                i = box;
                break;
            }
        detail::ensure(i != Pyramid::npos, "capital fixing: no box i available");
        const std::size_t k = py.above(i);
        const std::size_t j = py.box_at(r, py.col(w[k]));
        detail::ensure(k != Pyramid::npos && j != Pyramid::npos, "capital fixing: boxes k, j missing");
        detail::ensure(!in_cap[r][j] && a[j] == a[w[i]], "capital fixing: box j has the wrong properties");
        const std::size_t before = fixed_count(r);
        const std::size_t aligned_before = aligned_count(r);
        const std::size_t wi = w[i];
        for (auto& v : w) {
            if (v == j) v = wi;
            else if (v == wi) v = j;
        }
        const std::size_t after = fixed_count(r);
        detail::ensure(after >= before, "capital fixing: capital measure decreased");
        detail::ensure(aligned_count(r) > aligned_before, "capital fixing: alignment measure did not increase");
        if (after == before) ++stalls;
        detail::ensure(act(BoxPermutation(py, w), a) == b, "capital fixing: step changed the image tableau");
        ++steps;
    }
    BoxPermutation u(py, w);
    // Read off the column permutation from the column tops, which are exactly the capitals.
    std::vector<std::size_t> sigma(py.cols());
    for (std::size_t c = 0; c < py.cols(); ++c) sigma[c] = py.col(w[py.column(c).front()]);
    BoxPermutation witness = BoxPermutation::from_column_permutation(py, sigma);
    detail::ensure(act(witness, a) == b, "capital fixing: column swap does not map A to A'");
    return {witness, u, steps, stalls};
}

// ---------------------------------------------------------------------------
// z* correspondence

ZStarPoint zstar_of(const Tableau& a, const std::vector<long long>& rho) {
    detail::require(is_column_connected(a), "zstar_of needs a column-connected tableau");
    const auto& py = a.pyramid();
    const Residue p = a.modulus();
    ZStarPoint z;
    z.values.resize(py.cols());
    for (std::size_t c = 0; c < py.cols(); ++c) {
        const auto& boxes = py.column(c);
        z.values[c] = mod_sub(a[boxes[0]], mod_reduce(rho[boxes[0]], p), p);
        for (auto b : boxes)
            detail::ensure(mod_sub(a[b], mod_reduce(rho[b], p), p) == z.values[c], "zstar value not column-constant");
    }
    return z;
}

ZStarPoint zstar_of(const Tableau& a) { return zstar_of(a, rho_shift(a.pyramid())); }

Tableau tableau_of(const PyramidPtr& py, const ZStarPoint& z, Residue p, const std::vector<long long>& rho) {
    detail::require_same(z.values.size() == py->cols(), "z* point needs one value per column");
    std::vector<Residue> entries(py->size());
    for (std::size_t b = 0; b < py->size(); ++b) entries[b] = mod_add(z.values[py->col(b)] % p, mod_reduce(rho[b], p), p);
    return Tableau(py, std::move(entries), p);
}

Tableau tableau_of(const PyramidPtr& py, const ZStarPoint& z, Residue p) {
    return tableau_of(py, z, p, rho_shift(*py));
}

ZStarPoint dot_act(const BoxPermutation& w, const ZStarPoint& z, const Pyramid& py, Residue p,
                   const std::vector<long long>& rho) {
    detail::require(w.is_colswap(), "dot action is defined for column swaps");
    detail::require_same(z.values.size() == py.cols(), "z* point needs one value per column");
    const auto& sigma = w.column_permutation();
    ZStarPoint out;
    out.values.resize(py.cols());
    for (std::size_t c = 0; c < py.cols(); ++c) {
        // Per box: (w(ζ+ρ) − ρ)_i = ζ_col(w(i)) + ρ(w(i)) − ρ(i), constant along the column.
        const std::size_t i = py.column(c).front();
        const long long shift = rho[w(i)] - rho[i];
        out.values[c] = mod_add(z.values[sigma[c]] % p, mod_reduce(shift, p), p);
    }
    return out;
}

ZStarPoint dot_act(const BoxPermutation& w, const ZStarPoint& z, const Pyramid& py, Residue p) {
    return dot_act(w, z, py, p, rho_shift(py));
}

std::vector<BoxPermutation> column_swap_group(const Pyramid& py) {
    const auto classes = py.column_classes();
    std::vector<std::vector<std::size_t>> perms;
    for (const auto& cls : classes) perms.push_back(cls);
    std::vector<BoxPermutation> out;
    for (;;) {
        std::vector<std::size_t> sigma(py.cols());
        for (std::size_t k = 0; k < classes.size(); ++k)
            for (std::size_t t = 0; t < classes[k].size(); ++t) sigma[classes[k][t]] = perms[k][t];
        out.push_back(BoxPermutation::from_column_permutation(py, sigma));
        std::size_t k = 0;
        while (k < classes.size() && !std::next_permutation(perms[k].begin(), perms[k].end())) ++k;
        if (k == classes.size()) break;
    }
    return out;
}

TableauCensus enumerate_and_count(const PyramidPtr& py, Residue p, std::uint64_t max_tableaux) {
    std::uint64_t total = 1;
    for (std::size_t c = 0; c < py->cols(); ++c) {
        total *= p;
        if (total > max_tableaux)
            throw BudgetExceeded("p^columns = " + std::to_string(p) + "^" + std::to_string(py->cols()) +
                                 " exceeds the tableau budget " + std::to_string(max_tableaux));
    }
    TableauCensus census;
    const auto rho = rho_shift(*py);
    ZStarPoint z;
    z.values.assign(py->cols(), 0);
    for (std::uint64_t n = 0; n < total; ++n) {
        census.tableaux.push_back(tableau_of(py, z, p, rho));
        for (std::size_t c = py->cols(); c-- > 0;) {
            if (++z.values[c] < p) break;
            z.values[c] = 0;
        }
    }
    std::map<std::vector<Residue>, std::size_t> classes;
    for (const auto& t : census.tableaux) {
        auto key = colswap_canonical(t).entries();
        auto [it, fresh] = classes.emplace(key, classes.size());
        census.orbit_of.push_back(it->second);
    }
    census.orbit_count_canonical = classes.size();

    const auto group = column_swap_group(*py);
    census.group_order = group.size();
    std::uint64_t fixed = 0;
    for (const auto& w : group)
        for (const auto& t : census.tableaux)
            if (act(w, t) == t) ++fixed;
    detail::ensure(fixed % group.size() == 0, "Burnside sum is not divisible by the group order");
    census.orbit_count_burnside = fixed / group.size();
    detail::ensure(census.orbit_count_burnside == census.orbit_count_canonical,
                   "Burnside and canonical-form orbit counts disagree");
    return census;
}

}  // namespace moq
