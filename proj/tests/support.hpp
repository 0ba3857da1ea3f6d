#pragma once

#include <random>

#include "moq/ffmat.hpp"

namespace moq::testing {

inline std::mt19937_64& rng() {
    static std::mt19937_64 gen(20261014);
    return gen;
}

inline Residue random_residue(Residue p) {
    return std::uniform_int_distribution<Residue>(0, p - 1)(rng());
}

inline FpMatrix random_matrix(std::size_t r, std::size_t c, Residue p) {
    FpMatrix m(r, c, p);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = random_residue(p);
    return m;
}

/// Random matrix of rank at most k, as a product of r×k and k×c factors.
inline FpMatrix random_low_rank(std::size_t r, std::size_t c, std::size_t k, Residue p) {
    if (k == 0) return FpMatrix(r, c, p);
    return random_matrix(r, k, p) * random_matrix(k, c, p);
}

inline FpMatrix random_invertible(std::size_t n, Residue p) {
    for (;;) {
        FpMatrix m = random_matrix(n, n, p);
        if (rank(m) == n) return m;
    }
}

/// Inverse by Gauss-Jordan on [M | I].
inline FpMatrix inverse(const FpMatrix& m) {
    const std::size_t n = m.rows();
    FpMatrix aug(n, 2 * n, m.modulus());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = m(i, j);
        aug.at(i, n + i) = 1;
    }
    auto red = rref(aug).rref;
    FpMatrix inv(n, n, m.modulus());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = red(i, n + j);
    return inv;
}

inline Subspace random_subspace(std::size_t n, std::size_t gens, Residue p) {
    return Subspace::span(random_matrix(gens, n, p));
}

}  // namespace moq::testing
