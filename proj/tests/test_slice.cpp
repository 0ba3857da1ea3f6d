#include <catch_amalgamated.hpp>
#include <cmath>

#include "moq/slice.hpp"

using namespace moq;

namespace {

Pyramid pyr(const char* s, Alignment a = Alignment::left) { return build_pyramid(Partition::parse(s), a); }

GlElement unit(std::size_t n, std::size_t i, std::size_t j, Residue p) { return GlElement::unit(n, i - 1, j - 1, p); }

Subspace span_of(const std::vector<GlElement>& xs, std::size_t n, Residue p) {
    FpMatrix m(0, n * n, p);
    for (const auto& x : xs) m.append_row(x.coords());
    return Subspace::span(m);
}

}  // namespace

TEST_CASE("slice construction", "[slice]") {
    auto s = build_slice(pyr("2"), 3);
    CHECK(s.ad_e == span_of({unit(2, 1, 2, 3), unit(2, 1, 1, 3) - unit(2, 2, 2, 3)}, 2, 3));
    CHECK(s.v == span_of({unit(2, 2, 1, 3), unit(2, 2, 2, 3)}, 2, 3));

    auto z = build_slice(pyr("1,1"), 5);
    CHECK(z.v == Subspace::full(4, 5));
    CHECK(z.e.is_zero());

    CHECK(build_slice(pyr("1,2"), 2).v.dim() == 5);

    for (const char* lam : {"2", "1,1", "3", "1,2", "1,1,1", "2,2", "1,3", "4", "1,1,2"})
        for (auto a : {Alignment::left, Alignment::right}) {
            auto py = pyr(lam, a);
            auto sl = build_slice(py, 3);
            std::size_t sq = 0;
            for (auto q : py.heights()) sq += q * q;
            CHECK(sl.v.dim() == sq);
            for (auto w : sl.kazhdan_weights) CHECK(w < 0);
        }
}

TEST_CASE("Kazhdan weights", "[slice]") {
    auto s = build_slice(pyr("2"), 3);
    CHECK(kazhdan_weight(s, kappa(unit(2, 2, 1, 3))) == -4);
    CHECK(kazhdan_weight(s, kappa(unit(2, 2, 2, 3))) == -2);
    CHECK(kazhdan_weight(s, s.chi) == 0);
    CHECK_THROWS_AS(kazhdan_weight(s, kappa(unit(2, 2, 1, 3) + unit(2, 2, 2, 3))), InvalidArgument);
}

TEST_CASE("Katsylo membership", "[slice]") {
    auto s = build_slice(pyr("2"), 3);
    auto chi_pt = slice_point(s, {0, 0});
    CHECK(katsylo_member(s, chi_pt));
    CHECK(chi_pt.x == s.e);
    // The v-basis is (e21, e22), so coefficients (1, 0) give e12 + e21.
    auto pt = slice_point(s, {1, 0});
    CHECK(pt.x == unit(2, 1, 2, 3) + unit(2, 2, 1, 3));
    CHECK(katsylo_member(s, pt));

    auto t = build_slice(pyr("1,2"), 3);
    bool found_regular = false;
    for (const auto& q : enumerate_slice(t))
        if (q.invariants.factors.back().degree() == 3 && q.orbit_dim == 6) {
            CHECK_FALSE(katsylo_member(t, q));
            found_regular = true;
        }
    CHECK(found_regular);
}

TEST_CASE("transversality at every slice point", "[slice]") {
    for (auto [lam, p] : std::vector<std::pair<const char*, Residue>>{{"2", 3}, {"1,2", 2}, {"1,1", 3}, {"3", 2}}) {
        auto s = build_slice(pyr(lam), p);
        auto pts = enumerate_slice(s);
        for (const auto& pt : pts) CHECK(verify_transversality(s, pt));
        CHECK(pts.size() == static_cast<std::size_t>(std::pow(p, s.v.dim()) + 0.5));
    }
}

TEST_CASE("Katsylo uniqueness", "[slice]") {
    auto a = verify_katsylo(pyr("1,1"), 3);
    CHECK(a.pass());
    CHECK(a.section_points == 3);
    CHECK(a.classes == 3);

    auto b = verify_katsylo(pyr("2"), 3);
    CHECK(b.pass());
    CHECK(b.slice_points == 9);
    CHECK(b.section_points == 9);
    CHECK(b.classes == 9);

    auto c = verify_katsylo(pyr("1,2"), 2);
    CHECK(c.pass());
    CHECK(c.slice_points == 32);
    CHECK(c.section_points == c.classes);

    CHECK_THROWS_AS(verify_katsylo(pyr("1,1,1"), 5, 1000), BudgetExceeded);
}

TEST_CASE("Kazhdan action on the F_p slice", "[slice]") {
    // Weights -4 and -2 for (2): at p = 3 every point is fixed, at p = 5 the e21 line is.
    auto r3 = verify_katsylo(pyr("2"), 3);
    CHECK(r3.rescaling_stable);
    CHECK(r3.fixed_points == 9);
    auto r5 = verify_katsylo(pyr("2"), 5);
    CHECK(r5.fixed_points_match);
    CHECK(r5.fixed_points == 5);
    // (3) at p = 5 has weights -6, -4, -2: only the weight -4 line is fixed.
    auto s = verify_katsylo(pyr("3"), 5);
    CHECK(s.fixed_points == 5);
    CHECK(s.pass());
    // e = 0: every weight is -2, so at p = 5 only chi itself is fixed.
    auto z = verify_katsylo(pyr("1,1"), 5);
    CHECK(z.fixed_points == 1);
}

TEST_CASE("associated graded subspaces", "[slice]") {
    auto s = build_slice(pyr("2"), 3);
    CHECK(assoc_graded_subspace(s.ad_e, s.degrees) == s.ad_e);
    auto noisy = span_of({s.e + unit(2, 1, 1, 3) + unit(2, 2, 1, 3)}, 2, 3);
    CHECK(assoc_graded_subspace(noisy, s.degrees) == span_of({s.e}, 2, 3));
    for (const auto& pt : enumerate_slice(s))
        if (katsylo_member(s, pt)) CHECK(assoc_graded_subspace(ad_image(pt.x), s.degrees) == s.ad_e);
}

TEST_CASE("centraliser degeneration", "[slice]") {
    auto chi = build_slice(pyr("2"), 3);
    CHECK(verify_centraliser_degeneration(chi, {slice_point(chi, {0, 0})}).pass());
    for (Residue p : {3u, 5u}) CHECK(verify_centraliser_degeneration(pyr("2"), p).pass());
    auto r = verify_centraliser_degeneration(pyr("3"), 2);
    CHECK(r.pass());
    CHECK(r.section_points > 0);
    CHECK(verify_centraliser_degeneration(pyr("1,2"), 3).pass());
}
