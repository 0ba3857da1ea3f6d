#include "moq/classify.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <set>

#include "moq/log.hpp"
#include "moq/parallel.hpp"
#include "moq/poisson.hpp"
#include "moq/slice.hpp"
#include "moq/ured.hpp"

namespace moq {

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"bijection", "kw",     "katsylo", "transversality",
                                                "degeneration", "kazhdan", "poisson", "central"};
    return names;
}

Fault parse_fault(const std::string& name) {
    if (name.empty() || name == "none") return Fault::none;
    if (name == "module") return Fault::module;
    if (name == "annihilator") return Fault::annihilator;
    if (name == "count") return Fault::count;
    throw InvalidArgument("unknown fault '" + name + "'");
}

bool OrbitReport::pass() const {
    for (const auto& [name, s] : suites)
        if (!s.skipped && !s.pass) return false;
    return true;
}

std::vector<std::string> OrbitReport::skipped() const {
    std::vector<std::string> out;
    for (const auto& [name, s] : suites)
        if (s.skipped) out.push_back(name);
    return out;
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::uint64_t ipow(std::uint64_t b, std::size_t e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

// Shared state across suites, built on first use.
struct Pipeline {
    const Pyramid& py;
    PyramidPtr pyp;
    Residue p;
    const VerifyOptions& opt;
    GlElement e;

    std::optional<TableauCensus> census{};
    URedContextPtr ctx{};
    std::vector<URedModule> modules{};
    std::vector<Annihilator> anns{};
    std::optional<SliceData> slice{};
    std::vector<SlicePoint> points{};

    const TableauCensus& get_census() {
        if (!census) census = enumerate_and_count(pyp, p, opt.budgets.max_tableaux);
        return *census;
    }

    const URedContextPtr& get_ctx() {
        if (!ctx) ctx = make_ured_context(py, p);
        return ctx;
    }

    const std::vector<URedModule>& get_modules() {
        if (!modules.empty() || get_census().tableaux.empty()) return modules;
        const auto& tabs = get_census().tableaux;
        std::vector<URedModule> out(tabs.size());
        const auto& c = get_ctx();
        parallel_for(tabs.size(), [&](std::size_t i) {
            out[i] = induce_small_module(c, tabs[i], opt.budgets.max_module_dim);
        }, opt.workers);
        if (opt.fault == Fault::module && !out.empty() && out[0].dim > 0) {
            auto& r = out[0].rho[0];
            r.at(0, 0) = mod_add(r(0, 0), 1, p);
        }
        modules = std::move(out);
        return modules;
    }

    const std::vector<Annihilator>& get_anns() {
        if (!anns.empty()) return anns;
        const auto& ms = get_modules();
        std::vector<Annihilator> out(ms.size());
        const auto& c = get_ctx();
        parallel_for(ms.size(), [&](std::size_t i) { out[i] = annihilator(c, ms[i], opt.budgets.max_pbw_dim); },
                     opt.workers);
        if (opt.fault == Fault::annihilator && out.size() > 1) out[1] = out[0];
        anns = std::move(out);
        return anns;
    }

    const SliceData& get_slice() {
        if (!slice) slice = build_slice(py, p);
        return *slice;
    }

    const std::vector<SlicePoint>& get_points() {
        if (points.empty()) points = enumerate_slice(get_slice(), opt.budgets.max_slice_points);
        return points;
    }
};

void run_bijection(Pipeline& pl, OrbitReport& rep, SuiteResult& s) {
    const auto& census = pl.get_census();
    const auto& ms = pl.get_modules();
    const auto& tabs = census.tableaux;
    std::size_t simple = 0;
    for (std::size_t i = 0; i < ms.size(); ++i) {
        if (!verify_module(ms[i]).pass()) s.fail("module " + tabs[i].to_string() + ": U_chi relations fail");
        if (is_absolutely_simple(ms[i])) ++simple;
        else s.fail("module " + tabs[i].to_string() + ": not absolutely simple");
    }
    const auto& anns = pl.get_anns();
    std::vector<std::size_t> ann_class(anns.size());
    std::vector<std::size_t> reps;
    for (std::size_t i = 0; i < anns.size(); ++i) {
        if (anns[i].codim != static_cast<std::uint64_t>(ms[i].dim) * ms[i].dim)
            s.fail("module " + tabs[i].to_string() + ": annihilator codimension " + std::to_string(anns[i].codim) +
                   " differs from dim^2");
        std::size_t k = 0;
        while (k < reps.size() && !(anns[reps[k]] == anns[i])) ++k;
        if (k == reps.size()) reps.push_back(i);
        ann_class[i] = k;
    }
    rep.annihilator_count = reps.size();

    std::size_t pairs = 0, witnesses = 0, stalls = 0;
    for (std::size_t i = 0; i < tabs.size(); ++i)
        for (std::size_t j = 0; j < tabs.size(); ++j) {
            ++pairs;
            const bool same_ann = ann_class[i] == ann_class[j];
            const bool row = row_equivalent(tabs[i], tabs[j]);
            const bool col = colswap_equivalent(tabs[i], tabs[j]);
            const std::string what = tabs[i].to_string() + " vs " + tabs[j].to_string();
            if (same_ann != row) s.fail(what + ": annihilator equality differs from row equivalence");
            if (row != col) s.fail(what + ": row equivalence differs from column-swap equivalence");
            if (row && i < j) {
                auto trace = colswap_from_row_equivalence(tabs[i], tabs[j], row_witness(tabs[i], tabs[j]));
                if (!trace.witness.is_colswap() || !(act(trace.witness, tabs[i]) == tabs[j]))
                    s.fail(what + ": capital-fixing witness does not map the tableaux");
                ++witnesses;
                stalls += trace.stalls;
            }
        }
    const std::uint64_t burnside = rep.orbit_count_burnside;
    if (reps.size() != burnside || rep.orbit_count_canonical != burnside)
        s.fail("counts: annihilators " + std::to_string(reps.size()) + ", canonical " +
               std::to_string(rep.orbit_count_canonical) + ", Burnside " + std::to_string(burnside));
    s.details["modules"] = ms.size();
    s.details["absolutely_simple"] = simple;
    s.details["module_dim"] = ms.empty() ? 0 : ms[0].dim;
    s.details["annihilator_codim"] = anns.empty() ? 0 : anns[0].codim;
    s.details["distinct_annihilators"] = reps.size();
    s.details["pairs_checked"] = pairs;
    s.details["colswap_witnesses"] = witnesses;
    s.details["capital_fixing_stalls"] = stalls;
    s.details["count_framing"] = "F_p-rational cc tableaux modulo W_col; the algebraically closed parameter space is not counted";
}

void run_kw(Pipeline& pl, SuiteResult& s) {
    const auto& ms = pl.get_modules();
    const auto& tabs = pl.get_census().tableaux;
    std::size_t checked = 0, small = 0;
    for (std::size_t i = 0; i < ms.size(); ++i) {
        auto r = kw_divisibility(ms[i], pl.e);
        ++checked;
        if (!r.divisible) s.fail("module " + tabs[i].to_string() + ": p^d does not divide dim^2");
        if (r.small) ++small;
        else s.fail("module " + tabs[i].to_string() + ": induced module is not small");
    }
    if (ms.size() >= 2) {
        auto sum = direct_sum(ms[0], ms[1]);
        ++checked;
        if (!kw_divisibility(sum, pl.e).divisible) s.fail("direct sum: p^d does not divide dim^2");
    }
    if (pl.get_ctx()->pbw_dim() <= pl.opt.budgets.max_module_dim) {
        auto reg = regular_module(pl.get_ctx(), pl.opt.budgets.max_module_dim);
        ++checked;
        if (!verify_module(reg).pass()) s.fail("regular module: U_chi relations fail");
        if (!kw_divisibility(reg, pl.e).divisible) s.fail("regular module: p^d does not divide dim^2");
    }
    s.details["modules_checked"] = checked;
    s.details["small_modules"] = small;
    s.details["d_chi"] = orbit_dim(pl.e);
}

void run_katsylo(Pipeline& pl, SuiteResult& s) {
    auto r = verify_katsylo(pl.get_slice(), pl.get_points());
    for (const auto& f : r.failures) s.fail(f);
    if (!r.pass() && r.failures.empty()) s.fail("katsylo: report failed");
    s.details["slice_points"] = r.slice_points;
    s.details["section_points"] = r.section_points;
    s.details["classes"] = r.classes;
    s.details["singletons"] = r.singletons;
    s.details["semicontinuous"] = r.semicontinuous;
    s.details["rescaling_stable"] = r.rescaling_stable;
    s.details["fixed_points"] = r.fixed_points;
    s.details["fixed_points_match"] = r.fixed_points_match;
}

std::string coeff_label(const SlicePoint& pt) {
    std::string out = "slice point (";
    for (std::size_t i = 0; i < pt.coeffs.size(); ++i) out += (i ? "," : "") + std::to_string(pt.coeffs[i]);
    return out + ")";
}

void run_transversality(Pipeline& pl, SuiteResult& s) {
    const auto& pts = pl.get_points();
    std::vector<char> ok(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) { ok[i] = verify_transversality(pl.get_slice(), pts[i]); },
                 pl.opt.workers);
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (!ok[i]) s.fail(coeff_label(pts[i]) + ": kappa[g,x] + kappa(v) is not g*");
    s.details["slice_points"] = pts.size();
}

void run_degeneration(Pipeline& pl, SuiteResult& s) {
    auto r = verify_centraliser_degeneration(pl.get_slice(), pl.get_points());
    for (const auto& f : r.failures) s.fail(f);
    if (!r.pass() && r.failures.empty()) s.fail("degeneration: report failed");
    s.details["section_points"] = r.section_points;
    s.details["dims_match"] = r.dims_match;
    s.details["graded_match"] = r.graded_match;
}

void run_kazhdan(Pipeline& pl, SuiteResult& s) {
    std::size_t below = 0, minus_two = 0, above = 0;
    for (const auto& pt : pl.get_points()) {
        auto r = kazhdan_symbol_check(pl.get_slice(), pt.eta);
        if (!r.pass()) s.fail(coeff_label(pt) + ": Kazhdan symbol check fails");
        below += r.case_below;
        minus_two += r.case_minus_two;
        above += r.case_above;
    }
    s.details["slice_points"] = pl.get_points().size();
    s.details["case_below_minus_two"] = below;
    s.details["case_minus_two"] = minus_two;
    s.details["case_above_minus_two"] = above;
}

void run_poisson(Pipeline& pl, SuiteResult& s) {
    const std::size_t n = pl.py.size();
    ReducedPoissonAlgebra alg(n, pl.p, kappa(pl.e), pl.opt.budgets.max_pbw_dim);
    auto ideal = max_poisson_ideal(alg, pl.opt.budgets.max_poisson_work);
    auto check = check_poisson_ideal(alg, ideal);
    const auto expected = ipow(pl.p, orbit_dim(pl.e));
    if (ideal.codim != expected) s.fail("P_chi: codimension " + std::to_string(ideal.codim) + ", expected p^d");
    if (!check.is_ideal) s.fail("P_chi: not closed under multiplication by generators");
    if (!check.bracket_stable) s.fail("P_chi: not closed under bracket with generators");
    if (check.maximality_checked && !check.maximal) s.fail("P_chi: maximality witness fails");
    s.details["algebra_dim"] = alg.dim();
    s.details["codim"] = ideal.codim;
    s.details["expected_codim"] = expected;
    s.details["maximality_checked"] = check.maximality_checked;
    if (!pl.anns.empty()) {
        for (std::size_t i = 0; i < pl.anns.size(); ++i)
            if (pl.anns[i].codim != ideal.codim) {
                s.fail("P_chi: codimension differs from the annihilator codimension");
                break;
            }
        s.details["annihilator_codim"] = pl.anns[0].codim;
    }
}

void run_central(Pipeline& pl, SuiteResult& s) {
    const auto& ms = pl.get_modules();
    const auto& tabs = pl.get_census().tableaux;
    const auto& c = pl.get_ctx();
    const std::size_t n = pl.py.size();
    std::vector<URedElement> gens;
    for (std::size_t k = 1; k <= n; ++k) gens.push_back(gelfand_element(c, k));
    std::vector<std::vector<Residue>> tuples(ms.size());
    for (std::size_t i = 0; i < ms.size(); ++i)
        for (std::size_t k = 1; k <= n; ++k) {
            try {
                const Residue g = gelfand_central_character(c, ms[i], k);
                const Residue h = harish_chandra_scalar(gens[k - 1], tabs[i]);
                if (g != h) s.fail("module " + tabs[i].to_string() + ": c_" + std::to_string(k) + " disagrees");
                tuples[i].push_back(g);
            } catch (const VerificationFailure& ex) {
                s.fail("module " + tabs[i].to_string() + ": c_" + std::to_string(k) + ": " + ex.what());
                tuples[i].push_back(pl.p);  // out of range, never equal to a scalar
            }
        }
    std::set<std::vector<Residue>> distinct(tuples.begin(), tuples.end());
    if (!pl.anns.empty())
        for (std::size_t i = 0; i < ms.size(); ++i)
            for (std::size_t j = i + 1; j < ms.size(); ++j)
                if (pl.anns[i] == pl.anns[j] && tuples[i] != tuples[j])
                    s.fail(tabs[i].to_string() + " vs " + tabs[j].to_string() +
                           ": equal annihilators with different central characters");
    s.details["invariants"] = n;
    s.details["modules"] = ms.size();
    s.details["distinct_tuples"] = distinct.size();
    if (pl.anns.size() == ms.size() && !ms.empty()) {
        std::size_t ann_classes = 0;
        for (std::size_t i = 0; i < ms.size(); ++i) {
            bool fresh = true;
            for (std::size_t j = 0; j < i; ++j)
                if (pl.anns[i] == pl.anns[j]) fresh = false;
            ann_classes += fresh;
        }
        s.details["separates_annihilators"] = distinct.size() == ann_classes;
    }
}

}  // namespace

OrbitReport classify_orbit(const Pyramid& py, Residue p, const Budgets& budgets) {
    detail::require(is_prime(p), "p must be prime");
    const auto t0 = Clock::now();
    OrbitReport rep;
    rep.partition = py.partition();
    rep.p = p;
    rep.heights = py.heights();
    rep.offsets = py.offsets();
    rep.columns = py.cols();
    rep.weyl_factors = weyl_factors(py);
    const auto e = nilpotent_from_pyramid(py, p);
    rep.d_chi = orbit_dim(e);
    rep.dim_ge = py.size() * py.size() - rep.d_chi;
    rep.cc_count = ipow(p, py.cols());
    auto census = enumerate_and_count(std::make_shared<const Pyramid>(py), p, budgets.max_tableaux);
    rep.orbit_count_burnside = census.orbit_count_burnside;
    rep.orbit_count_canonical = census.orbit_count_canonical;
    rep.timings_ms["classify"] = ms_since(t0);
    return rep;
}

OrbitReport verify_bijection(const Pyramid& py, Residue p, const VerifyOptions& opt) {
    OrbitReport rep = classify_orbit(py, p, opt.budgets);
    if (opt.fault == Fault::count) ++rep.orbit_count_burnside;
    for (const auto& name : opt.suites)
        if (std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end())
            throw InvalidArgument("unknown suite '" + name + "'");
    Pipeline pl{py, std::make_shared<const Pyramid>(py), p, opt, nilpotent_from_pyramid(py, p)};
    const std::map<std::string, std::function<void(SuiteResult&)>> runners{
        {"bijection", [&](SuiteResult& s) { run_bijection(pl, rep, s); }},
        {"kw", [&](SuiteResult& s) { run_kw(pl, s); }},
        {"katsylo", [&](SuiteResult& s) { run_katsylo(pl, s); }},
        {"transversality", [&](SuiteResult& s) { run_transversality(pl, s); }},
        {"degeneration", [&](SuiteResult& s) { run_degeneration(pl, s); }},
        {"kazhdan", [&](SuiteResult& s) { run_kazhdan(pl, s); }},
        {"poisson", [&](SuiteResult& s) { run_poisson(pl, s); }},
        {"central", [&](SuiteResult& s) { run_central(pl, s); }},
    };
    for (const auto& name : suite_names()) {
        if (!opt.suites.empty() && !opt.suites.count(name)) continue;
        SuiteResult s;
        const auto t0 = Clock::now();
        try {
            runners.at(name)(s);
        } catch (const BudgetExceeded& ex) {
            s = SuiteResult{};
            s.skipped = true;
            s.skip_reason = ex.what();
        } catch (const Error& ex) {
            s.fail(std::string(name) + ": " + ex.what());
        }
        rep.timings_ms[name] = ms_since(t0);
        if (s.skipped) logger().warn("{} skipped: {}", name, s.skip_reason);
        else logger().info("{} {} in {:.1f} ms", name, s.pass ? "passed" : "FAILED", rep.timings_ms[name]);
        for (const auto& f : s.failures) logger().debug("{}: {}", name, f);
        rep.suites.emplace(name, std::move(s));
    }
    return rep;
}

}  // namespace moq
