#include <catch_amalgamated.hpp>

#include "moq/classify.hpp"
#include "moq/cli.hpp"

using namespace moq;

namespace {

Pyramid pyr(const char* s, Alignment a = Alignment::left) { return build_pyramid(Partition::parse(s), a); }

nlohmann::ordered_json without_timings(const OrbitReport& r) {
    auto j = report_to_json(r);
    j.erase("timings_ms");
    return j;
}

}  // namespace

TEST_CASE("combinatorial classification", "[classify]") {
    for (Residue p : {2u, 3u, 5u}) {
        auto r = classify_orbit(pyr("1,1"), p);
        CHECK(r.d_chi == 0);
        CHECK(r.columns == 1);
        CHECK(r.orbit_count_burnside == p);
        CHECK(r.orbit_count_canonical == p);
        CHECK(r.cc_count == p);
        CHECK_FALSE(r.annihilator_count);
        CHECK(r.suites.empty());
    }
    auto two = classify_orbit(pyr("2"), 3);
    CHECK(two.d_chi == 2);
    CHECK(two.dim_ge == 2);
    CHECK(two.columns == 2);
    CHECK(two.orbit_count_burnside == 6);
    CHECK(two.weyl_factors == std::vector<std::size_t>{2});

    auto rect = classify_orbit(pyr("2,2"), 2);
    // dim O = 16 - (2² + 2²); the induced modules have dimension 2^{d/2} = 16.
    CHECK(rect.d_chi == 8);
    CHECK(rect.dim_ge == 8);
    CHECK(rect.heights == std::vector<std::size_t>{2, 2});
    CHECK(rect.orbit_count_burnside == 3);

    CHECK(classify_orbit(pyr("2"), 5).orbit_count_burnside == 15);
    CHECK(classify_orbit(pyr("3"), 2).orbit_count_burnside == 4);
    CHECK(classify_orbit(pyr("1,2"), 3).orbit_count_burnside == 9);
    CHECK_THROWS_AS(classify_orbit(pyr("2"), 4), InvalidArgument);
    Budgets tiny;
    tiny.max_tableaux = 2;
    CHECK_THROWS_AS(classify_orbit(pyr("2"), 3, tiny), BudgetExceeded);
}

TEST_CASE("full verification", "[classify]") {
    auto two = verify_bijection(pyr("2"), 3);
    CHECK(two.pass());
    CHECK(two.annihilator_count == 6u);
    CHECK(two.suites.size() == suite_names().size());
    CHECK(two.suites.at("bijection").details["modules"] == 9);
    CHECK(two.suites.at("central").details["separates_annihilators"] == true);

    auto zero = verify_bijection(pyr("1,1"), 3);
    CHECK(zero.pass());
    CHECK(zero.annihilator_count == 3u);

    auto mixed = verify_bijection(pyr("1,2"), 2);
    CHECK(mixed.pass());
    CHECK(mixed.annihilator_count == mixed.orbit_count_burnside);
    CHECK(mixed.suites.at("poisson").details["codim"] == 16);

    auto right = verify_bijection(pyr("1,2", Alignment::right), 2);
    CHECK(right.pass());
    CHECK(right.annihilator_count == 4u);
}

TEST_CASE("suite selection and budgets", "[classify]") {
    VerifyOptions opt;
    opt.suites = {"katsylo"};
    auto r = verify_bijection(pyr("2"), 3, opt);
    CHECK(r.suites.size() == 1);
    CHECK_FALSE(r.annihilator_count);

    opt.suites = {"nonsense"};
    CHECK_THROWS_AS(verify_bijection(pyr("2"), 3, opt), InvalidArgument);

    VerifyOptions small;
    small.suites = {"bijection", "katsylo"};
    small.budgets.max_pbw_dim = 10;
    auto s = verify_bijection(pyr("2"), 3, small);
    CHECK(s.suites.at("bijection").skipped);
    CHECK_FALSE(s.suites.at("katsylo").skipped);
    CHECK(s.pass());
    CHECK(s.skipped() == std::vector<std::string>{"bijection"});
}

TEST_CASE("fault injection is caught with a diagnosis", "[classify]") {
    for (auto [fault, suite] : std::vector<std::pair<Fault, const char*>>{
             {Fault::module, "bijection"}, {Fault::annihilator, "bijection"}, {Fault::count, "bijection"}}) {
        VerifyOptions opt;
        opt.fault = fault;
        auto r = verify_bijection(pyr("2"), 3, opt);
        CHECK_FALSE(r.pass());
        CHECK_FALSE(r.suites.at(suite).pass);
        CHECK_FALSE(r.suites.at(suite).failures.empty());
    }
    CHECK(parse_fault("none") == Fault::none);
    CHECK_THROWS_AS(parse_fault("bogus"), InvalidArgument);
}

TEST_CASE("reports are deterministic", "[classify]") {
    VerifyOptions a, b;
    b.workers = 1;
    CHECK(without_timings(verify_bijection(pyr("1,2"), 2, a)).dump() ==
          without_timings(verify_bijection(pyr("1,2"), 2, b)).dump());
    CHECK(without_timings(verify_bijection(pyr("2"), 5)).dump() == without_timings(verify_bijection(pyr("2"), 5)).dump());
}
