#include "moq/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include "moq/log.hpp"

namespace moq {

using ojson = nlohmann::ordered_json;

namespace {

struct RunConfig {
    std::string command;
    std::string partition;
    Residue p = 0;
    std::string alignment = "left";
    std::string suites;
    std::string format;  // empty: text for tabcanon, json otherwise
    std::string out;
    std::string tableau;
    std::string fault;
    Budgets budgets;
    unsigned workers = 0;
};

std::vector<std::size_t> parse_csv_ints(const std::string& text, const std::string& what) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
            throw InvalidArgument("malformed " + what + " '" + text + "'");
        out.push_back(std::stoul(item));
    }
    if (out.empty()) throw InvalidArgument("empty " + what);
    return out;
}

Pyramid make_pyramid(const RunConfig& cfg) {
    const auto lambda = Partition::parse(cfg.partition);
    const std::string prefix = "offsets:";
    if (cfg.alignment.rfind(prefix, 0) == 0)
        return build_pyramid(lambda, parse_csv_ints(cfg.alignment.substr(prefix.size()), "offsets"));
    return build_pyramid(lambda, parse_alignment(cfg.alignment));
}

std::set<std::string> parse_suites(const std::string& text) {
    std::set<std::string> out;
    if (text.empty() || text == "all") return out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (std::find(suite_names().begin(), suite_names().end(), item) == suite_names().end())
            throw InvalidArgument("unknown suite '" + item + "'");
        out.insert(item);
    }
    return out;
}

void configure_logging() {
    const char* env = std::getenv("MOQ_LOG");
    const std::string level = env ? env : "warn";
    if (level == "error") logger().set_level(spdlog::level::err);
    else if (level == "warn") logger().set_level(spdlog::level::warn);
    else if (level == "info") logger().set_level(spdlog::level::info);
    else if (level == "debug") logger().set_level(spdlog::level::debug);
    else throw InvalidArgument("MOQ_LOG must be error, warn, info or debug, not '" + level + "'");
}

void emit(const RunConfig& cfg, const std::string& content, std::ostream& out) {
    if (cfg.out.empty()) out << content;
    else write_atomic(cfg.out, content);
}

template <class T>
ojson to_array(const std::vector<T>& v) {
    ojson a = ojson::array();
    for (const auto& x : v) a.push_back(x);
    return a;
}

int cmd_classify_or_verify(const RunConfig& cfg, bool verify, std::ostream& out) {
    const auto py = make_pyramid(cfg);
    OrbitReport rep;
    std::set<std::string> suites = parse_suites(cfg.suites);
    if (verify) {
        VerifyOptions opt;
        opt.suites = suites;
        opt.budgets = cfg.budgets;
        opt.fault = parse_fault(cfg.fault);
        opt.workers = cfg.workers;
        rep = verify_bijection(py, cfg.p, opt);
    } else {
        rep = classify_orbit(py, cfg.p, cfg.budgets);
    }
    std::string content;
    if (cfg.format == "json") {
        auto doc = report_to_json(rep);
        auto problems = validate_report(nlohmann::json::parse(doc.dump()));
        detail::ensure(problems.empty(), "emitted report violates the schema: " +
                                             (problems.empty() ? std::string() : problems.front()));
        content = doc.dump(2) + "\n";
    } else if (cfg.format == "csv") {
        content = report_to_csv(rep);
    } else {
        content = report_to_text(rep);
    }
    emit(cfg, content, out);
    if (!rep.pass()) return exit_verification_failed;
    // A suite that was asked for by name but could not run within budget is a configuration error.
    for (const auto& name : rep.skipped())
        if (suites.count(name)) {
            logger().error("requested suite {} exceeded its budget: {}", name, rep.suites.at(name).skip_reason);
            return exit_usage;
        }
    return exit_ok;
}

int cmd_tabcanon(const RunConfig& cfg, std::ostream& out) {
    auto py = std::make_shared<const Pyramid>(make_pyramid(cfg));
    const auto a = Tableau::parse(py, cfg.tableau, cfg.p);
    const auto canon = colswap_canonical(a);
    std::string content;
    if (cfg.format == "json") {
        ojson doc;
        doc["tableau"] = a.to_string();
        doc["canonical"] = canon.to_string();
        doc["column_connected"] = is_column_connected(a);
        if (is_column_connected(a)) doc["zstar"] = to_array(zstar_of(a).values);
        content = doc.dump(2) + "\n";
    } else {
        content = canon.to_string() + "\n";
    }
    emit(cfg, content, out);
    return exit_ok;
}

int cmd_enumerate(const RunConfig& cfg, std::ostream& out) {
    auto py = std::make_shared<const Pyramid>(make_pyramid(cfg));
    const auto census = enumerate_and_count(py, cfg.p, cfg.budgets.max_tableaux);
    std::string content;
    if (cfg.format == "json") {
        ojson doc;
        doc["partition"] = py->partition().to_string();
        doc["p"] = cfg.p;
        doc["orbit_count_burnside"] = census.orbit_count_burnside;
        doc["orbit_count_canonical"] = census.orbit_count_canonical;
        ojson rows = ojson::array();
        for (std::size_t i = 0; i < census.tableaux.size(); ++i) {
            ojson r;
            r["tableau"] = census.tableaux[i].to_string();
            r["canonical"] = colswap_canonical(census.tableaux[i]).to_string();
            r["orbit"] = census.orbit_of[i];
            r["zstar"] = to_array(zstar_of(census.tableaux[i]).values);
            rows.push_back(r);
        }
        doc["tableaux"] = rows;
        content = doc.dump(2) + "\n";
    } else {
        std::ostringstream os;
        const char sep = cfg.format == "csv" ? ',' : '\t';
        if (cfg.format == "csv") os << "tableau,canonical,orbit\n";
        for (std::size_t i = 0; i < census.tableaux.size(); ++i) {
            auto quote = [&](const std::string& s) { return cfg.format == "csv" ? "\"" + s + "\"" : s; };
            os << quote(census.tableaux[i].to_string()) << sep
               << quote(colswap_canonical(census.tableaux[i]).to_string()) << sep << census.orbit_of[i] << "\n";
        }
        content = os.str();
    }
    emit(cfg, content, out);
    return exit_ok;
}

}  // namespace

ojson report_to_json(const OrbitReport& r) {
    ojson doc;
    doc["partition"] = to_array(r.partition.parts);
    doc["p"] = r.p;
    doc["pyramid"] = {{"heights", to_array(r.heights)}, {"offsets", to_array(r.offsets)}};
    doc["d_chi"] = r.d_chi;
    doc["dim_ge"] = r.dim_ge;
    doc["columns"] = r.columns;
    doc["weyl_factors"] = to_array(r.weyl_factors);
    doc["cc_count"] = r.cc_count;
    doc["orbit_count_burnside"] = r.orbit_count_burnside;
    doc["orbit_count_canonical"] = r.orbit_count_canonical;
    doc["annihilator_count"] = r.annihilator_count ? ojson(*r.annihilator_count) : ojson(nullptr);
    ojson suites = ojson::object();
    for (const auto& name : suite_names()) {
        auto it = r.suites.find(name);
        if (it == r.suites.end()) continue;
        const auto& s = it->second;
        ojson js;
        js["pass"] = s.skipped ? ojson(nullptr) : ojson(s.pass);
        js["skipped"] = s.skipped;
        ojson details = s.details;
        if (s.skipped) details["reason"] = s.skip_reason;
        if (!s.failures.empty()) details["failures"] = to_array(s.failures);
        js["details"] = details;
        suites[name] = js;
    }
    doc["suites"] = suites;
    doc["pass"] = r.pass();
    ojson timings = ojson::object();
    for (const auto& [k, v] : r.timings_ms) timings[k] = v;
    doc["timings_ms"] = timings;
    return doc;
}

std::string report_to_csv(const OrbitReport& r) {
    std::ostringstream os;
    os << "partition,p,d_chi,columns,cc_count,orbit_count_burnside,orbit_count_canonical,annihilator_count,pass\n";
    os << "\"" << r.partition.to_string() << "\"," << r.p << "," << r.d_chi << "," << r.columns << "," << r.cc_count
       << "," << r.orbit_count_burnside << "," << r.orbit_count_canonical << ","
       << (r.annihilator_count ? std::to_string(*r.annihilator_count) : std::string()) << ","
       << (r.pass() ? "true" : "false") << "\n";
    return os.str();
}

std::string report_to_text(const OrbitReport& r) {
    std::ostringstream os;
    auto list = [](const std::vector<std::size_t>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
        return s;
    };
    os << "partition      " << r.partition.to_string() << "\n";
    os << "p              " << r.p << "\n";
    os << "heights        " << list(r.heights) << "\n";
    os << "offsets        " << list(r.offsets) << "\n";
    os << "d_chi          " << r.d_chi << "\n";
    os << "dim g^e        " << r.dim_ge << "\n";
    os << "W(g0) factors  " << list(r.weyl_factors) << "\n";
    os << "cc tableaux    " << r.cc_count << "\n";
    os << "orbits         " << r.orbit_count_burnside << " (Burnside), " << r.orbit_count_canonical
       << " (canonical)\n";
    if (r.annihilator_count) os << "annihilators   " << *r.annihilator_count << "\n";
    for (const auto& name : suite_names()) {
        auto it = r.suites.find(name);
        if (it == r.suites.end()) continue;
        const auto& s = it->second;
        os << (s.skipped ? "SKIP " : s.pass ? "PASS " : "FAIL ") << name;
        if (s.skipped) os << "  (" << s.skip_reason << ")";
        os << "\n";
        for (const auto& f : s.failures) os << "     " << f << "\n";
    }
    return os.str();
}

std::vector<std::string> validate_report(const nlohmann::json& doc) {
    std::vector<std::string> bad;
    if (!doc.is_object()) return {"report is not an object"};
    auto need = [&](const char* key, auto pred, const char* type) {
        if (!doc.contains(key)) bad.push_back(std::string("missing ") + key);
        else if (!pred(doc[key])) bad.push_back(std::string(key) + " is not " + type);
    };
    auto uint_array = [](const nlohmann::json& v) {
        return v.is_array() && std::all_of(v.begin(), v.end(), [](const auto& x) { return x.is_number_unsigned(); });
    };
    auto is_uint = [](const nlohmann::json& v) { return v.is_number_unsigned(); };
    need("partition", uint_array, "an array of non-negative integers");
    need("p", is_uint, "a non-negative integer");
    need("pyramid", [](const nlohmann::json& v) { return v.is_object(); }, "an object");
    need("d_chi", is_uint, "a non-negative integer");
    need("columns", is_uint, "a non-negative integer");
    need("weyl_factors", uint_array, "an array of non-negative integers");
    need("cc_count", is_uint, "a non-negative integer");
    need("orbit_count_burnside", is_uint, "a non-negative integer");
    need("orbit_count_canonical", is_uint, "a non-negative integer");
    need("annihilator_count", [](const nlohmann::json& v) { return v.is_null() || v.is_number_unsigned(); },
         "null or a non-negative integer");
    need("suites", [](const nlohmann::json& v) { return v.is_object(); }, "an object");
    need("timings_ms", [](const nlohmann::json& v) { return v.is_object(); }, "an object");
    if (!bad.empty()) return bad;

    const auto& py = doc["pyramid"];
    for (const char* key : {"heights", "offsets"})
        if (!py.contains(key) || !uint_array(py[key])) bad.push_back(std::string("pyramid.") + key + " is invalid");
    if (bad.empty()) {
        std::size_t n = 0, h = 0;
        for (const auto& x : doc["partition"]) n += x.get<std::size_t>();
        for (const auto& x : py["heights"]) h += x.get<std::size_t>();
        if (n != h) bad.push_back("pyramid.heights do not sum to the partition size");
        if (py["heights"].size() != doc["columns"].get<std::size_t>()) bad.push_back("columns differs from heights");
    }
    if (doc["orbit_count_burnside"] != doc["orbit_count_canonical"] && doc.value("pass", true))
        bad.push_back("orbit counts differ in a passing report");
    for (const auto& [name, s] : doc["suites"].items()) {
        if (std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end())
            bad.push_back("unknown suite " + name);
        if (!s.is_object() || !s.contains("pass") || !s.contains("details") || !s.contains("skipped")) {
            bad.push_back("suite " + name + " lacks pass, skipped or details");
            continue;
        }
        if (!(s["pass"].is_boolean() || (s["pass"].is_null() && s["skipped"] == true)))
            bad.push_back("suite " + name + " has a non-boolean pass");
        if (!s["details"].is_object()) bad.push_back("suite " + name + " details is not an object");
    }
    for (const auto& [name, v] : doc["timings_ms"].items())
        if (!v.is_number()) bad.push_back("timing " + name + " is not a number");
    return bad;
}

void write_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    const fs::path dir = target.has_parent_path() ? target.parent_path() : fs::path(".");
    std::random_device rd;
    const fs::path tmp = dir / (target.filename().string() + ".tmp" + std::to_string(rd()));
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw InvalidArgument("cannot write " + tmp.string());
        f << content;
        f.flush();
        if (!f) {
            fs::remove(tmp);
            throw InvalidArgument("cannot write " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw InvalidArgument("cannot move report into " + path + ": " + ec.message());
    }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Nilpotent orbit classification over F_p", "moq"};
    app.require_subcommand(1);

    auto common = [&](CLI::App* sub) {
        sub->add_option("--partition", cfg.partition, "Partition as comma-separated parts")->required();
        sub->add_option("--p", cfg.p, "Prime modulus")->required();
        sub->add_option("--alignment", cfg.alignment, "left, right, symmetric or offsets:<csv>");
        sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
        sub->add_option("--out", cfg.out, "Write the output to this file");
        sub->add_option("--max-tableaux", cfg.budgets.max_tableaux, "Tableau enumeration budget")
            ->check(CLI::PositiveNumber);
    };
    auto* classify = app.add_subcommand("classify", "Combinatorial classification");
    auto* verify = app.add_subcommand("verify", "Classification plus verification suites");
    auto* tabcanon = app.add_subcommand("tabcanon", "Column-swap canonical form of a tableau");
    auto* enumerate = app.add_subcommand("enumerate", "List the column-connected tableaux");
    for (auto* sub : {classify, verify, tabcanon, enumerate}) common(sub);
    for (auto* sub : {classify, verify}) {
        sub->add_option("--max-slice-points", cfg.budgets.max_slice_points, "Slice enumeration budget")
            ->check(CLI::PositiveNumber);
        sub->add_option("--max-pbw-dim", cfg.budgets.max_pbw_dim, "Largest U_chi dimension")
            ->check(CLI::PositiveNumber);
        sub->add_option("--max-module-dim", cfg.budgets.max_module_dim, "Largest module dimension")
            ->check(CLI::PositiveNumber);
    }
    verify->add_option("--suites", cfg.suites, "Comma-separated suites, or all");
    verify->add_option("--workers", cfg.workers, "Worker threads (0 = hardware)");
    verify->add_option("--inject-fault", cfg.fault)->group("");
    classify->add_option("--suites", cfg.suites)->group("");
    tabcanon->add_option("--tableau", cfg.tableau, "Rows separated by ';', entries by ','")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }
    try {
        configure_logging();
        if (cfg.format.empty()) cfg.format = tabcanon->parsed() ? "text" : "json";
        if (!is_prime(cfg.p)) throw InvalidArgument("p = " + std::to_string(cfg.p) + " is not prime");
        cfg.command = app.get_subcommands().front()->get_name();
        if (cfg.command == "classify") return cmd_classify_or_verify(cfg, false, out);
        if (cfg.command == "verify") return cmd_classify_or_verify(cfg, true, out);
        if (cfg.command == "tabcanon") return cmd_tabcanon(cfg, out);
        return cmd_enumerate(cfg, out);
    } catch (const BudgetExceeded& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const VerificationFailure& e) {
        err << "verification failed: " << e.what() << "\n";
        return exit_verification_failed;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
}

}  // namespace moq
