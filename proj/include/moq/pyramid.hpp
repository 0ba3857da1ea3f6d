#pragma once

// Partitions, pyramids and the gl_N data attached to a pyramid.
//
// Rows, columns and boxes are 0-based: row 0 is the top row, column 0 the
// leftmost column, and box k is the (k+1)-th box in row-major order.

#include <string>
#include <vector>

#include "moq/gl.hpp"

namespace moq {

struct Partition {
    /// Weakly increasing parts; parts[0] is the top row of a pyramid.
    std::vector<std::size_t> parts;

    Partition() = default;
    explicit Partition(std::vector<std::size_t> parts);

    /// Parses "1,2,2"; parts are sorted into weakly increasing order.
    static Partition parse(const std::string& text);

    std::size_t size() const;
    std::size_t rows() const { return parts.size(); }
    /// Conjugate partition, weakly increasing.
    std::vector<std::size_t> conjugate() const;
    std::string to_string() const;

    bool operator==(const Partition&) const = default;
};

enum class Alignment { left, right, symmetric };

Alignment parse_alignment(const std::string& text);

class Pyramid {
public:
    std::size_t size() const { return row_.size(); }
    std::size_t rows() const { return partition_.rows(); }
    std::size_t cols() const { return heights_.size(); }
    const Partition& partition() const { return partition_; }
    const std::vector<std::size_t>& offsets() const { return offsets_; }
    const std::vector<std::size_t>& heights() const { return heights_; }

    std::size_t row(std::size_t box) const { return row_[box]; }
    std::size_t col(std::size_t box) const { return col_[box]; }
    /// Box at (row, col), or npos when that cell is empty.
    std::size_t box_at(std::size_t row, std::size_t col) const;
    /// Boxes of column c from top to bottom.
    const std::vector<std::size_t>& column(std::size_t c) const { return columns_[c]; }
    /// Boxes of row r from left to right.
    std::vector<std::size_t> row_boxes(std::size_t r) const;
    /// The box directly above `box`, or npos.
    std::size_t above(std::size_t box) const;
    /// The box directly below `box`, or npos.
    std::size_t below(std::size_t box) const;

    /// Classes of columns with equal height, each sorted, ordered by first column.
    std::vector<std::vector<std::size_t>> column_classes() const;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    bool operator==(const Pyramid& o) const { return partition_ == o.partition_ && offsets_ == o.offsets_; }

private:
    friend Pyramid build_pyramid(const Partition&, std::vector<std::size_t>);

    Partition partition_;
    std::vector<std::size_t> offsets_;
    std::vector<std::size_t> heights_;
    std::vector<std::size_t> row_, col_;
    std::vector<std::size_t> grid_;  // rows × cols, npos for empty cells
    std::vector<std::vector<std::size_t>> columns_;
};

/// Pyramid with explicit left offsets per row (top row first).
Pyramid build_pyramid(const Partition& lambda, std::vector<std::size_t> row_offsets);
Pyramid build_pyramid(const Partition& lambda, Alignment alignment = Alignment::left);

/// C_r for every row r: boxes on row r sitting in a column of height rows() - r.
std::vector<std::vector<std::size_t>> capitals(const Pyramid& py);

/// e = sum of e_ij over same-row pairs with col(j) = col(i) + 1.
GlElement nilpotent_from_pyramid(const Pyramid& py, Residue p);

/// Degree col(j) - col(i) of each matrix unit e_ij, indexed by coordinate.
std::vector<int> column_degrees(const Pyramid& py);
Subspace column_grading(const Pyramid& py, int d, Residue p);

struct SubalgebraSpans {
    Subspace p, g0, r, r_minus, z_g0;
};

SubalgebraSpans subalgebra_spans(const Pyramid& py, Residue p);

/// Blockwise weights m-1, m-3, ..., 1-m for the Jordan-form representative.
std::vector<int> dynkin_weights(const Partition& lambda);
/// Weights of the boxes of a pyramid: row of length m, position t gives m-1-2t.
std::vector<int> dynkin_weights(const Pyramid& py);
/// Degree w_i - w_j of each matrix unit e_ij, indexed by coordinate.
std::vector<int> dynkin_degrees(const std::vector<int>& weights);

/// Number of boxes strictly after each box in column-major reading order.
std::vector<long long> rho_shift(const Pyramid& py);

/// Sizes of the symmetric factors of W_col (multiplicity of each column height).
std::vector<std::size_t> weyl_factors(const Pyramid& py);

}  // namespace moq
