#include "moq/pyramid.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace moq {

Partition::Partition(std::vector<std::size_t> p) : parts(std::move(p)) {
    detail::require(!parts.empty(), "partition must have at least one part");
    for (auto v : parts) detail::require(v >= 1, "partition parts must be positive");
    std::sort(parts.begin(), parts.end());
}

Partition Partition::parse(const std::string& text) {
    std::vector<std::size_t> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        detail::require(!item.empty() && item.find_first_not_of(" 0123456789") == std::string::npos,
                        "malformed partition '" + text + "'");
        parts.push_back(std::stoul(item));
    }
    return Partition(std::move(parts));
}

std::size_t Partition::size() const { return std::accumulate(parts.begin(), parts.end(), std::size_t{0}); }

std::vector<std::size_t> Partition::conjugate() const {
    std::vector<std::size_t> c(parts.back(), 0);
    for (auto v : parts)
        for (std::size_t k = 0; k < v; ++k) ++c[k];
    std::sort(c.begin(), c.end());
    return c;
}

std::string Partition::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "," : "") + std::to_string(parts[i]);
    return s;
}

Alignment parse_alignment(const std::string& text) {
    if (text == "left") return Alignment::left;
    if (text == "right") return Alignment::right;
    if (text == "symmetric") return Alignment::symmetric;
    throw InvalidArgument("unknown alignment '" + text + "'");
}

std::size_t Pyramid::box_at(std::size_t r, std::size_t c) const {
    if (r >= rows() || c >= cols()) return npos;
    return grid_[r * cols() + c];
}

std::vector<std::size_t> Pyramid::row_boxes(std::size_t r) const {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < cols(); ++c)
        if (auto b = box_at(r, c); b != npos) out.push_back(b);
    return out;
}

std::size_t Pyramid::above(std::size_t box) const { return row_[box] == 0 ? npos : box_at(row_[box] - 1, col_[box]); }

std::size_t Pyramid::below(std::size_t box) const { return box_at(row_[box] + 1, col_[box]); }

std::vector<std::vector<std::size_t>> Pyramid::column_classes() const {
    std::map<std::size_t, std::vector<std::size_t>> by_height;
    for (std::size_t c = 0; c < cols(); ++c) by_height[heights_[c]].push_back(c);
    std::vector<std::vector<std::size_t>> out;
    for (auto& [h, cs] : by_height) out.push_back(cs);
    std::sort(out.begin(), out.end());
    return out;
}

Pyramid build_pyramid(const Partition& lambda, std::vector<std::size_t> offsets) {
    const std::size_t n = lambda.rows();
    detail::require(offsets.size() == n, "one offset per row is required");
    detail::require(offsets.back() == 0, "the bottom row must start in column 0");
    for (std::size_t r = 0; r + 1 < n; ++r) {
        bool nested = offsets[r + 1] <= offsets[r] &&
                      offsets[r] + lambda.parts[r] <= offsets[r + 1] + lambda.parts[r + 1];
        detail::require(nested, "row " + std::to_string(r + 1) + " is not supported by the row beneath");
    }
    Pyramid py;
    py.partition_ = lambda;
    py.offsets_ = std::move(offsets);
    const std::size_t cols = lambda.parts.back();
    py.heights_.assign(cols, 0);
    py.grid_.assign(n * cols, Pyramid::npos);
    py.columns_.assign(cols, {});
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t t = 0; t < lambda.parts[r]; ++t) {
            std::size_t c = py.offsets_[r] + t;
            py.grid_[r * cols + c] = py.row_.size();
            py.columns_[c].push_back(py.row_.size());
            py.row_.push_back(r);
            py.col_.push_back(c);
            ++py.heights_[c];
        }
    auto sorted = py.heights_;
    std::sort(sorted.begin(), sorted.end());
    detail::ensure(sorted == lambda.conjugate(), "column heights do not realise the conjugate partition");
    return py;
}

Pyramid build_pyramid(const Partition& lambda, Alignment alignment) {
    const std::size_t width = lambda.parts.back();
    std::vector<std::size_t> offsets;
    for (auto part : lambda.parts) {
        switch (alignment) {
            case Alignment::left: offsets.push_back(0); break;
            case Alignment::right: offsets.push_back(width - part); break;
            case Alignment::symmetric: offsets.push_back((width - part) / 2); break;
        }
    }
    return build_pyramid(lambda, std::move(offsets));
}

std::vector<std::vector<std::size_t>> capitals(const Pyramid& py) {
    std::vector<std::vector<std::size_t>> out(py.rows());
    for (std::size_t b = 0; b < py.size(); ++b)
        if (py.heights()[py.col(b)] == py.rows() - py.row(b)) out[py.row(b)].push_back(b);
    return out;
}

GlElement nilpotent_from_pyramid(const Pyramid& py, Residue p) {
    const std::size_t n = py.size();
    FpMatrix m(n, n, p);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t j = py.box_at(py.row(i), py.col(i) + 1);
        if (j != Pyramid::npos) m.at(i, j) = 1 % p;
    }
    GlElement e(std::move(m));
    detail::ensure(conjugacy_invariants(e).jordan_type == py.partition().parts,
                   "Jordan type of e does not match the partition");
    return e;
}

std::vector<int> column_degrees(const Pyramid& py) {
    const std::size_t n = py.size();
    std::vector<int> d(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            d[i * n + j] = static_cast<int>(py.col(j)) - static_cast<int>(py.col(i));
    return d;
}

namespace {

template <class Pred>
Subspace units_where(std::size_t n, Residue p, Pred pred) {
    std::vector<std::size_t> coords;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (pred(i, j)) coords.push_back(i * n + j);
    return Subspace::coordinate(n * n, p, coords);
}

}  // namespace

Subspace column_grading(const Pyramid& py, int d, Residue p) {
    return units_where(py.size(), p, [&](std::size_t i, std::size_t j) {
        return static_cast<int>(py.col(j)) - static_cast<int>(py.col(i)) == d;
    });
}

SubalgebraSpans subalgebra_spans(const Pyramid& py, Residue p) {
    const std::size_t n = py.size();
    SubalgebraSpans s;
    s.p = units_where(n, p, [&](auto i, auto j) { return py.col(j) >= py.col(i); });
    s.g0 = units_where(n, p, [&](auto i, auto j) { return py.col(j) == py.col(i); });
    s.r = units_where(n, p, [&](auto i, auto j) { return py.col(j) > py.col(i); });
    s.r_minus = units_where(n, p, [&](auto i, auto j) { return py.col(i) > py.col(j); });
    FpMatrix z(py.cols(), n * n, p);
    for (std::size_t b = 0; b < n; ++b) z.at(py.col(b), b * n + b) = 1 % p;
    s.z_g0 = Subspace::span(z);
    detail::ensure(s.g0.sum(s.r) == s.p && s.g0.intersection(s.r).dim() == 0, "p is not g0 + r");
    return s;
}

std::vector<int> dynkin_weights(const Partition& lambda) {
    std::vector<int> w;
    for (auto m : lambda.parts)
        for (std::size_t t = 0; t < m; ++t) w.push_back(static_cast<int>(m) - 1 - 2 * static_cast<int>(t));
    return w;
}

std::vector<int> dynkin_weights(const Pyramid& py) {
    std::vector<int> w(py.size());
    for (std::size_t r = 0; r < py.rows(); ++r) {
        auto boxes = py.row_boxes(r);
        const int m = static_cast<int>(boxes.size());
        for (int t = 0; t < m; ++t) w[boxes[t]] = m - 1 - 2 * t;
    }
    return w;
}

std::vector<int> dynkin_degrees(const std::vector<int>& weights) {
    const std::size_t n = weights.size();
    std::vector<int> d(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) d[i * n + j] = weights[i] - weights[j];
    return d;
}

std::vector<long long> rho_shift(const Pyramid& py) {
    std::vector<long long> rho(py.size());
    long long remaining = static_cast<long long>(py.size());
    for (std::size_t c = 0; c < py.cols(); ++c)
        for (auto b : py.column(c)) rho[b] = --remaining;
    for (std::size_t b = 0; b < py.size(); ++b)
        if (auto d = py.below(b); d != Pyramid::npos)
            detail::ensure(rho[b] - rho[d] == 1, "rho does not step by one down a column");
    return rho;
}

std::vector<std::size_t> weyl_factors(const Pyramid& py) {
    std::vector<std::size_t> out;
    for (const auto& cls : py.column_classes()) out.push_back(cls.size());
    return out;
}

}  // namespace moq
