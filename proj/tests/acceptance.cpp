// Acceptance suite: one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "moq/classify.hpp"
#include "moq/poisson.hpp"
#include "moq/slice.hpp"
#include "moq/ured.hpp"
#include "support.hpp"

using namespace moq;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Instance {
    const char* partition;
    Residue p;
    std::uint64_t expected;  // 0 when only the oracle is compared
};

Pyramid pyr(const char* s) { return build_pyramid(Partition::parse(s), Alignment::left); }

struct Criterion {
    bool pass = true;
    std::vector<std::string> notes;

    void check(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            notes.push_back(what);
        }
    }
};

std::string label(const Instance& in) { return std::string("(") + in.partition + ")@" + std::to_string(in.p); }

std::uint64_t ipow(std::uint64_t b, std::size_t e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

// Row-equivalent unordered pairs, by direct comparison of sorted rows.
std::size_t row_pairs_oracle(const TableauCensus& census) {
    const auto& py = census.tableaux.front().pyramid();
    auto key = [&](const Tableau& t) {
        std::vector<std::vector<Residue>> rows;
        for (std::size_t r = 0; r < py.rows(); ++r) {
            std::vector<Residue> row;
            for (auto b : py.row_boxes(r)) row.push_back(t[b]);
            std::sort(row.begin(), row.end());
            rows.push_back(row);
        }
        return rows;
    };
    std::size_t n = 0;
    for (std::size_t i = 0; i < census.tableaux.size(); ++i)
        for (std::size_t j = i + 1; j < census.tableaux.size(); ++j)
            if (key(census.tableaux[i]) == key(census.tableaux[j])) ++n;
    return n;
}

const std::vector<Instance> kAc1 = {
    {"2", 2, 3}, {"2", 3, 6}, {"2", 5, 15}, {"1,1", 2, 2}, {"1,1", 3, 3},
    {"1,1", 5, 5}, {"1,2", 2, 4}, {"3", 2, 4}, {"1,2", 3, 9},
};

const std::vector<Instance> kSlice = {
    {"2", 2, 0}, {"2", 3, 0}, {"2", 5, 0}, {"1,1", 2, 0}, {"1,1", 3, 0},
    {"1,1", 5, 0}, {"1,2", 2, 0}, {"1,2", 3, 0}, {"3", 2, 0}, {"3", 3, 0},
};

std::map<std::string, OrbitReport> g_bijection;

const OrbitReport& bijection_report(const Instance& in) {
    auto key = label(in);
    auto it = g_bijection.find(key);
    if (it != g_bijection.end()) return it->second;
    VerifyOptions opt;
    opt.suites = {"bijection", "kw", "central"};
    return g_bijection.emplace(key, verify_bijection(pyr(in.partition), in.p, opt)).first->second;
}

Criterion ac1() {
    Criterion c;
    for (const auto& in : kAc1) {
        const auto t0 = Clock::now();
        // Oracle first: the Burnside count from the combinatorial half.
        const auto comb = classify_orbit(pyr(in.partition), in.p);
        c.check(comb.orbit_count_burnside == in.expected,
                label(in) + ": Burnside " + std::to_string(comb.orbit_count_burnside) + ", expected " +
                    std::to_string(in.expected));
        c.check(comb.orbit_count_canonical == comb.orbit_count_burnside, label(in) + ": canonical count differs");
        const auto& rep = bijection_report(in);
        const auto& s = rep.suites.at("bijection");
        c.check(!s.skipped && s.pass, label(in) + ": bijection suite did not pass");
        c.check(rep.annihilator_count && *rep.annihilator_count == comb.orbit_count_burnside,
                label(in) + ": distinct annihilators differ from the Burnside count");
        const double secs = seconds_since(t0);
        c.check(secs < 60.0, label(in) + ": took " + std::to_string(secs) + " s");
    }
    return c;
}

Criterion ac2() {
    Criterion c;
    std::size_t pairs = 0, witnesses = 0;
    for (const auto& in : kAc1) {
        const auto& rep = bijection_report(in);
        const auto& s = rep.suites.at("bijection");
        for (const auto& f : s.failures) c.check(false, label(in) + ": " + f);
        const auto census = enumerate_and_count(std::make_shared<const Pyramid>(pyr(in.partition)), in.p);
        const auto n = census.tableaux.size();
        c.check(s.details.value("pairs_checked", 0u) == n * n, label(in) + ": not every pair was compared");
        c.check(s.details.value("colswap_witnesses", 0u) == row_pairs_oracle(census),
                label(in) + ": capital-fixing witnesses do not cover every row-equivalent pair");
        pairs += n * n;
        witnesses += s.details.value("colswap_witnesses", 0u);
    }
    c.notes.insert(c.notes.begin(), std::to_string(pairs) + " ordered pairs, " + std::to_string(witnesses) +
                                        " column-swap witnesses");
    return c;
}

Criterion ac3() {
    Criterion c;
    for (const auto& in : kAc1) {
        const auto& rep = bijection_report(in);
        const auto& s = rep.suites.at("kw");
        c.check(!s.skipped && s.pass, label(in) + ": kw suite did not pass");
        c.check(s.details.value("small_modules", 0u) == rep.cc_count, label(in) + ": not every induced module is small");
        c.check(s.details.value("modules_checked", 0u) > rep.cc_count, label(in) + ": no non-induced module checked");
    }
    return c;
}

std::map<std::string, OrbitReport> g_slice;

const OrbitReport& slice_report(const Instance& in) {
    auto key = label(in);
    auto it = g_slice.find(key);
    if (it != g_slice.end()) return it->second;
    VerifyOptions opt;
    opt.suites = {"katsylo", "transversality", "degeneration", "kazhdan"};
    return g_slice.emplace(key, verify_bijection(pyr(in.partition), in.p, opt)).first->second;
}

Criterion ac4() {
    Criterion c;
    for (const auto& in : kSlice) {
        const auto t0 = Clock::now();
        const auto& rep = slice_report(in);
        for (const char* name : {"katsylo", "transversality"}) {
            const auto& s = rep.suites.at(name);
            c.check(!s.skipped && s.pass, label(in) + ": " + name + " did not pass");
            for (const auto& f : s.failures) c.check(false, label(in) + ": " + f);
        }
        const auto& k = rep.suites.at("katsylo").details;
        c.check(k.value("singletons", false), label(in) + ": a maximal class meets the slice more than once");
        c.check(k.value("slice_points", 0u) == rep.suites.at("transversality").details.value("slice_points", 1u),
                label(in) + ": transversality did not cover every slice point");
        const double secs = seconds_since(t0);
        c.check(secs < 120.0, label(in) + ": took " + std::to_string(secs) + " s");
    }
    return c;
}

Criterion ac5() {
    Criterion c;
    for (const auto& in : kSlice) {
        const auto& s = slice_report(in).suites.at("degeneration");
        c.check(!s.skipped && s.pass, label(in) + ": degeneration did not pass");
        c.check(s.details.value("section_points", 0u) > 0, label(in) + ": empty Katsylo section");
        for (const auto& f : s.failures) c.check(false, label(in) + ": " + f);
    }
    return c;
}

Criterion ac6() {
    Criterion c;
    for (const auto& in : kSlice) {
        const auto& rep = slice_report(in);
        const auto& s = rep.suites.at("kazhdan");
        c.check(!s.skipped && s.pass, label(in) + ": Kazhdan symbol check did not pass");
        c.check(s.details.value("slice_points", 0u) == rep.suites.at("katsylo").details.value("slice_points", 1u),
                label(in) + ": not every slice point checked");
    }
    return c;
}

Criterion ac7() {
    Criterion c;
    const auto t0 = Clock::now();
    for (const auto& in : std::vector<Instance>{{"2", 2, 4}, {"2", 3, 9}, {"1,2", 2, 16}}) {
        const auto py = pyr(in.partition);
        const auto e = nilpotent_from_pyramid(py, in.p);
        ReducedPoissonAlgebra alg(py.size(), in.p, kappa(e));
        const auto ideal = max_poisson_ideal(alg);
        c.check(ideal.codim == in.expected, label(in) + ": codim P_chi " + std::to_string(ideal.codim) +
                                                ", expected " + std::to_string(in.expected));
        c.check(ideal.codim == ipow(in.p, orbit_dim(e)), label(in) + ": codim differs from p^d");
        const auto check = check_poisson_ideal(alg, ideal);
        c.check(check.is_ideal && check.bracket_stable, label(in) + ": P_chi is not a Poisson ideal");
        c.check(check.maximality_checked && check.maximal, label(in) + ": maximality witness fails");
        auto ctx = make_ured_context(py, in.p);
        const auto census = enumerate_and_count(std::make_shared<const Pyramid>(py), in.p);
        for (const auto& a : census.tableaux)
            c.check(annihilator(ctx, induce_small_module(ctx, a)).codim == ideal.codim,
                    label(in) + ": annihilator codimension differs for " + a.to_string());
        c.notes.push_back(label(in) + ": codim " + std::to_string(ideal.codim));
    }
    const double secs = seconds_since(t0);
    c.check(secs < 300.0, "took " + std::to_string(secs) + " s");
    return c;
}

Criterion ac8() {
    Criterion c;
    const auto py = std::make_shared<const Pyramid>(pyr("2"));
    auto ctx = make_ured_context(*py, 3);
    const auto c1 = gelfand_element(ctx, 1), c2 = gelfand_element(ctx, 2);
    const auto census = enumerate_and_count(py, 3);
    c.check(census.tableaux.size() == 9, "expected 9 tableaux");
    std::vector<Annihilator> anns;
    std::vector<std::pair<Residue, Residue>> tuples;
    for (const auto& a : census.tableaux) {
        const auto m = induce_small_module(ctx, a);
        const Residue g1 = gelfand_central_character(ctx, m, 1), g2 = gelfand_central_character(ctx, m, 2);
        c.check(g1 == harish_chandra_scalar(c1, a), a.to_string() + ": c_1 disagrees");
        c.check(g2 == harish_chandra_scalar(c2, a), a.to_string() + ": c_2 disagrees");
        tuples.emplace_back(g1, g2);
        anns.push_back(annihilator(ctx, m));
    }
    for (std::size_t i = 0; i < anns.size(); ++i)
        for (std::size_t j = 0; j < anns.size(); ++j)
            if (anns[i] == anns[j])
                c.check(tuples[i] == tuples[j], census.tableaux[i].to_string() + " and " +
                                                    census.tableaux[j].to_string() +
                                                    " share an annihilator but not central characters");
    const auto& rep = bijection_report({"2", 3, 6});
    c.check(rep.suites.at("central").pass, "central suite did not pass");
    return c;
}

Criterion ac9() {
    using namespace moq::testing;
    Criterion c;
    const auto t0 = Clock::now();
    constexpr int cases = 1000;
    for (std::size_t n = 1; n <= 4; ++n)
        for (Residue p : {2u, 3u, 5u}) {
            const std::string where = "N=" + std::to_string(n) + " p=" + std::to_string(p);
            const std::size_t g = n * n;
            std::size_t bad[6] = {0, 0, 0, 0, 0, 0};
            std::uniform_int_distribution<std::size_t> dim(0, g);
            for (int t = 0; t < cases; ++t) {
                // Rank-nullity on a random g-column matrix of random rank.
                auto m = random_low_rank(dim(rng()) + 1, g, dim(rng()), p);
                auto red = rref(m);
                bool ok = red.rank + red.kernel.dim() == g;
                for (std::size_t k = 0; k < red.kernel.dim() && ok; ++k) {
                    auto w = m.apply(red.kernel.basis().row(k));
                    ok = std::all_of(w.begin(), w.end(), [](Residue v) { return v == 0; });
                }
                bad[0] += !ok;

                // Grassmann identity.
                auto a = random_subspace(g, dim(rng()), p), b = random_subspace(g, dim(rng()), p);
                auto lat = subspace_lattice(a, b);
                bad[1] += lat.sum.dim() + lat.intersection.dim() != a.dim() + b.dim();

                const GlElement x(random_matrix(n, n, p)), y(random_matrix(n, n, p)), z(random_matrix(n, n, p));
                // Jacobi.
                auto jac = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y));
                bad[2] += !jac.is_zero();
                // Invariance of the trace form.
                bad[3] += kappa_pair(bracket(x, y), z) != kappa_pair(x, bracket(y, z));
                // ad(x^[p]) = ad(x)^p.
                bad[4] += adjoint_matrix(p_power(x)) != adjoint_matrix(x).pow(p);
                // Invariant factors are conjugation invariant.
                auto s = random_invertible(n, p);
                bad[5] += !(conjugacy_invariants(GlElement(s * x.mat() * inverse(s))) == conjugacy_invariants(x));
            }
            const char* names[6] = {"rank-nullity", "Grassmann", "Jacobi", "kappa-invariance", "ad(x^[p])",
                                    "invariant factors"};
            for (int k = 0; k < 6; ++k)
                c.check(bad[k] == 0, where + ": " + names[k] + " failed " + std::to_string(bad[k]) + " of " +
                                         std::to_string(cases));
        }
    const double secs = seconds_since(t0);
    c.check(secs < 30.0, "took " + std::to_string(secs) + " s");
    c.notes.insert(c.notes.begin(), std::to_string(cases) + " cases per property and (N, p), " +
                                        std::to_string(secs).substr(0, 5) + " s");
    return c;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Criterion()>>> criteria{
        {"AC1 classification counts", ac1},
        {"AC2 annihilator / row / column-swap equivalence", ac2},
        {"AC3 divisibility and small modules", ac3},
        {"AC4 Katsylo uniqueness and transversality", ac4},
        {"AC5 centraliser degeneration", ac5},
        {"AC6 Kazhdan symbols", ac6},
        {"AC7 maximal Poisson ideal", ac7},
        {"AC8 central characters", ac8},
        {"AC9 kernel property suites", ac9},
    };
    int failed = 0;
    for (const auto& [name, fn] : criteria) {
        const auto t0 = Clock::now();
        Criterion c;
        try {
            c = fn();
        } catch (const std::exception& e) {
            c.check(false, std::string("exception: ") + e.what());
        }
        std::printf("%s %s (%.2f s)\n", c.pass ? "PASS" : "FAIL", name, seconds_since(t0));
        for (const auto& note : c.notes) std::printf("    %s\n", note.c_str());
        std::fflush(stdout);
        failed += !c.pass;
    }
    return failed ? 1 : 0;
}
