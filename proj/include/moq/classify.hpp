#pragma once

// Per-(partition, p) classification and the verification pipeline.

#include <json.hpp>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "moq/tableau.hpp"

namespace moq {

struct Budgets {
    std::uint64_t max_slice_points = 1000000;
    std::uint64_t max_pbw_dim = 1u << 16;
    std::size_t max_module_dim = 256;
    std::uint64_t max_tableaux = 1000000;
    double max_poisson_work = 4e10;
};

/// Suite names in report order.
const std::vector<std::string>& suite_names();

/// Deliberate corruption used to exercise the failure paths.
enum class Fault { none, module, annihilator, count };
Fault parse_fault(const std::string& name);

struct VerifyOptions {
    std::set<std::string> suites;  // empty means every suite
    Budgets budgets;
    Fault fault = Fault::none;
    unsigned workers = 0;
};

struct SuiteResult {
    bool pass = true;
    bool skipped = false;
    std::string skip_reason;
    nlohmann::ordered_json details = nlohmann::ordered_json::object();
    std::vector<std::string> failures;  // "object: invariant" diagnoses

    void fail(std::string what) {
        pass = false;
        failures.push_back(std::move(what));
    }
};

struct OrbitReport {
    Partition partition;
    Residue p = 2;
    std::vector<std::size_t> heights;
    std::vector<std::size_t> offsets;
    std::size_t d_chi = 0;
    std::size_t dim_ge = 0;
    std::size_t columns = 0;
    std::vector<std::size_t> weyl_factors;
    std::uint64_t cc_count = 0;
    std::uint64_t orbit_count_burnside = 0;
    std::uint64_t orbit_count_canonical = 0;
    std::optional<std::uint64_t> annihilator_count;
    std::map<std::string, SuiteResult> suites;
    std::map<std::string, double> timings_ms;

    /// Every suite that ran passed.
    bool pass() const;
    /// Suites that were skipped for budget reasons.
    std::vector<std::string> skipped() const;
};

/// The combinatorial half: pyramid data, d_chi and the orbit counts.
OrbitReport classify_orbit(const Pyramid& py, Residue p, const Budgets& budgets = {});

/// classify_orbit plus every requested verification suite.
OrbitReport verify_bijection(const Pyramid& py, Residue p, const VerifyOptions& options = {});

}  // namespace moq
