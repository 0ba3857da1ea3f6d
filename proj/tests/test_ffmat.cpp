#include <catch_amalgamated.hpp>

#include <functional>

#include "moq/ffmat.hpp"
#include "support.hpp"

using namespace moq;
using moq::testing::random_matrix;

namespace {

std::vector<Residue> vec(std::initializer_list<Residue> v) { return v; }

// Counts vectors v in F_p^n with m v = 0 by exhaustion.
std::size_t brute_kernel_size(const FpMatrix& m) {
    const Residue p = m.modulus();
    const std::size_t n = m.cols();
    std::vector<Residue> v(n, 0);
    std::size_t count = 0;
    for (;;) {
        auto w = m.apply(v);
        if (std::all_of(w.begin(), w.end(), [](Residue x) { return x == 0; })) ++count;
        std::size_t k = 0;
        while (k < n && ++v[k] == p) v[k++] = 0;
        if (k == n) break;
    }
    return count;
}

std::size_t ipow(std::size_t b, std::size_t e) {
    std::size_t r = 1;
    while (e--) r *= b;
    return r;
}

// Polynomial determinant by Laplace expansion along the first row.
FpPoly poly_det(const std::vector<std::vector<FpPoly>>& a, Residue p) {
    const std::size_t n = a.size();
    if (n == 0) return FpPoly::constant(1, p);
    if (n == 1) return a[0][0];
    FpPoly acc(p);
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<std::vector<FpPoly>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<FpPoly> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != c) row.push_back(a[r][k]);
            minor.push_back(row);
        }
        FpPoly term = a[0][c] * poly_det(minor, p);
        acc = (c % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

void subsets(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
    std::vector<std::size_t> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (cur.size() == k) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = start; i < n; ++i) {
            cur.push_back(i);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
}

// Invariant factors via determinantal divisors D_k = gcd of all k×k minors.
std::vector<FpPoly> determinantal_factors(const FpMatrix& a) {
    const Residue p = a.modulus();
    const std::size_t n = a.rows();
    auto ch = FpPolyMatrix::characteristic(a);
    std::vector<FpPoly> d{FpPoly::constant(1, p)};
    for (std::size_t k = 1; k <= n; ++k) {
        std::vector<std::vector<std::size_t>> idx;
        subsets(n, k, idx);
        FpPoly g(p);
        for (const auto& rows : idx)
            for (const auto& cols : idx) {
                std::vector<std::vector<FpPoly>> m(k, std::vector<FpPoly>(k, FpPoly(p)));
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j) m[i][j] = ch(rows[i], cols[j]);
                g = poly_gcd(g, poly_det(m, p));
            }
        d.push_back(g);
    }
    std::vector<FpPoly> factors;
    for (std::size_t k = 1; k <= n; ++k) {
        FpPoly q(p), r(p);
        d[k].divmod(d[k - 1], q, r);
        REQUIRE(r.is_zero());
        factors.push_back(q.monic());
    }
    return factors;
}

}  // namespace

TEST_CASE("scalar arithmetic", "[ffmat]") {
    FpScalar a(3, 5), b(4, 5);
    CHECK((a + b).value() == 2);
    CHECK((a - b).value() == 4);
    CHECK((a * b).value() == 2);
    CHECK((a / b * b) == a);
    CHECK(FpScalar(-1, 7).value() == 6);
    CHECK_THROWS_AS(FpScalar(0, 5).inverse(), InvalidArgument);
    CHECK_THROWS_AS(a + FpScalar(1, 3), DimensionMismatch);
    CHECK(is_prime(2));
    CHECK(is_prime(5));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(9));
}

TEST_CASE("rref examples", "[ffmat]") {
    auto id = rref(FpMatrix::identity(3, 2));
    CHECK(id.rank == 3);
    CHECK(id.kernel.dim() == 0);

    auto z = rref(FpMatrix(2, 2, 3));
    CHECK(z.rank == 0);
    CHECK(z.kernel.dim() == 2);

    auto m = rref(FpMatrix::from_rows(5, {{1, 2}, {2, 4}}));
    CHECK(m.rank == 1);
    CHECK(m.rref == FpMatrix::from_rows(5, {{1, 2}, {0, 0}}));
    CHECK(m.kernel == Subspace::span(FpMatrix::from_rows(5, {{3, 1}})));
}

TEST_CASE("rank-nullity against brute-force kernel counts", "[ffmat][property]") {
    for (Residue p : {2u, 3u, 5u})
        for (int trial = 0; trial < 60; ++trial) {
            std::size_t r = 1 + trial % 4, c = 1 + (trial / 4) % 4;
            FpMatrix m = moq::testing::random_low_rank(r, c, trial % 3, p);
            auto red = rref(m);
            CHECK(red.rank + red.kernel.dim() == c);
            CHECK(brute_kernel_size(m) == ipow(p, red.kernel.dim()));
            for (std::size_t k = 0; k < red.kernel.dim(); ++k) {
                auto w = m.apply(red.kernel.basis().row(k));
                CHECK(std::all_of(w.begin(), w.end(), [](Residue x) { return x == 0; }));
            }
        }
}

TEST_CASE("subspace basis invariants and canonicity", "[ffmat][property]") {
    for (int trial = 0; trial < 200; ++trial) {
        const Residue p = trial % 2 ? 3 : 5;
        FpMatrix g = moq::testing::random_low_rank(4, 5, trial % 4, p);
        Subspace s = Subspace::span(g);
        const auto& b = s.basis();
        for (std::size_t r = 0; r < s.dim(); ++r) {
            CHECK(b(r, s.pivots()[r]) == 1);
            if (r > 0) CHECK(s.pivots()[r] > s.pivots()[r - 1]);
            for (std::size_t r2 = 0; r2 < s.dim(); ++r2)
                if (r2 != r) CHECK(b(r2, s.pivots()[r]) == 0);
        }
        // Same span from a mixed generating set gives identical bits.
        FpMatrix mixed = moq::testing::random_invertible(g.rows(), p) * g;
        CHECK(Subspace::span(mixed) == s);
    }
}

TEST_CASE("subspace lattice examples", "[ffmat]") {
    auto a = Subspace::span(3, 5, {vec({1, 2, 3})});
    auto l = subspace_lattice(a, a);
    CHECK(l.sum == a);
    CHECK(l.intersection == a);
    CHECK(l.equal);

    auto e1 = Subspace::span(2, 3, {vec({1, 0})});
    auto e2 = Subspace::span(2, 3, {vec({0, 1})});
    auto l2 = subspace_lattice(e1, e2);
    CHECK(l2.sum == Subspace::full(2, 3));
    CHECK(l2.intersection.dim() == 0);
    CHECK_FALSE(l2.contains);

    auto line = Subspace::span(3, 2, {vec({1, 1, 0})});
    auto plane = Subspace::span(3, 2, {vec({1, 0, 0}), vec({0, 1, 0})});
    CHECK(subspace_lattice(line, plane).contains);
    CHECK_FALSE(subspace_lattice(plane, line).contains);

    CHECK_THROWS_AS(subspace_lattice(e1, line), DimensionMismatch);
    CHECK_THROWS_AS(subspace_lattice(e1, Subspace::full(2, 5)), DimensionMismatch);
}

TEST_CASE("Grassmann identity on random pairs", "[ffmat][property]") {
    for (int trial = 0; trial < 300; ++trial) {
        const Residue p = std::array<Residue, 3>{2, 3, 5}[trial % 3];
        const std::size_t n = 2 + trial % 5;
        auto a = moq::testing::random_subspace(n, trial % (n + 1), p);
        auto b = moq::testing::random_subspace(n, (trial / 3) % (n + 1), p);
        auto l = subspace_lattice(a, b);
        CHECK(l.sum.dim() + l.intersection.dim() == a.dim() + b.dim());
        CHECK(l.sum.contains(a));
        CHECK(l.sum.contains(b));
        CHECK(a.contains(l.intersection));
        CHECK(b.contains(l.intersection));
    }
}

TEST_CASE("graded complement", "[ffmat]") {
    std::vector<std::size_t> order{0, 1};
    auto full = Subspace::full(2, 3);
    CHECK(graded_complement(Subspace::zero(2, 3), full, order) == full);
    CHECK(graded_complement(full, full, order).dim() == 0);
    auto diag = Subspace::span(2, 3, {vec({1, 1})});
    CHECK(graded_complement(diag, full, order) == Subspace::span(2, 3, {vec({0, 1})}));
    std::vector<std::size_t> reversed{1, 0};
    CHECK(graded_complement(diag, full, reversed) == Subspace::span(2, 3, {vec({1, 0})}));
    auto e1 = Subspace::span(2, 3, {vec({1, 0})});
    CHECK_THROWS_AS(graded_complement(full, e1, order), InvalidArgument);

    for (int trial = 0; trial < 100; ++trial) {
        auto inside = moq::testing::random_subspace(5, 4, 3);
        auto sub = inside.intersection(moq::testing::random_subspace(5, 3, 3));
        std::vector<std::size_t> ord{4, 2, 0, 1, 3};
        auto c = graded_complement(sub, inside, ord);
        CHECK(c.sum(sub) == inside);
        CHECK(c.intersection(sub).dim() == 0);
    }
}

TEST_CASE("polynomial arithmetic", "[ffmat]") {
    const Residue p = 5;
    FpPoly a(p, {1, 0, 1});  // t^2 + 1
    FpPoly b(p, {2, 1});     // t + 2
    FpPoly q(p), r(p);
    a.divmod(b, q, r);
    CHECK(q * b + r == a);
    CHECK(r.degree() < b.degree());
    CHECK(a.evaluate(2) == 0);
    CHECK(poly_gcd(a, b) == FpPoly(p, {2, 1}));
    CHECK(a.to_string() == "t^2 + 1");
    CHECK_THROWS_AS(a % FpPoly(p), InvalidArgument);
}

TEST_CASE("invariant factor examples", "[ffmat]") {
    auto f0 = poly_invariant_factors(FpPolyMatrix::characteristic(FpMatrix(2, 2, 2)));
    CHECK(f0 == std::vector<FpPoly>{FpPoly(2, {0, 1}), FpPoly(2, {0, 1})});

    auto fj = poly_invariant_factors(FpPolyMatrix::characteristic(FpMatrix::from_rows(3, {{0, 1}, {0, 0}})));
    CHECK(fj == std::vector<FpPoly>{FpPoly::constant(1, 3), FpPoly::monomial(2, 1, 3)});

    auto fd = poly_invariant_factors(FpPolyMatrix::characteristic(FpMatrix::from_rows(5, {{1, 0}, {0, 2}})));
    // (t-1)(t-2) = t^2 - 3t + 2 = t^2 + 2t + 2 over F_5
    CHECK(fd == std::vector<FpPoly>{FpPoly::constant(1, 5), FpPoly(5, {2, 2, 1})});
}

TEST_CASE("invariant factors match determinantal divisors", "[ffmat][property]") {
    for (Residue p : {2u, 3u, 5u})
        for (int trial = 0; trial < 40; ++trial) {
            const std::size_t n = 1 + trial % 3;
            FpMatrix a = random_matrix(n, n, p);
            if (trial % 4 == 0) a = FpMatrix::identity(n, p).scaled(moq::testing::random_residue(p));
            auto f = poly_invariant_factors(FpPolyMatrix::characteristic(a));
            CHECK(f == determinantal_factors(a));
            FpPoly prod = FpPoly::constant(1, p);
            for (std::size_t k = 0; k < f.size(); ++k) {
                prod = prod * f[k];
                if (k > 0) CHECK((f[k] % f[k - 1]).is_zero());
            }
            CHECK(prod.degree() == static_cast<int>(n));
        }
}

TEST_CASE("invariant factors are conjugation invariant", "[ffmat][property]") {
    for (Residue p : {2u, 3u, 5u})
        for (int trial = 0; trial < 50; ++trial) {
            const std::size_t n = 1 + trial % 4;
            FpMatrix a = random_matrix(n, n, p);
            FpMatrix g = moq::testing::random_invertible(n, p);
            FpMatrix conj = g * a * moq::testing::inverse(g);
            CHECK(poly_invariant_factors(FpPolyMatrix::characteristic(a)) ==
                  poly_invariant_factors(FpPolyMatrix::characteristic(conj)));
        }
}
