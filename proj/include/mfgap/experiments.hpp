#pragma once
// Experiment runner: turns a parsed config into library calls, report.csv,
// optional members/exceptions files, and a structured manifest.
//
// Everything written here is deterministic for a fixed config: fixed row
// order, %.12g floats, exact rationals as num/den, no timestamps.

#include "mfgap/config.hpp"
#include "mfgap/constructions.hpp"
#include "mfgap/csv.hpp"
#include "mfgap/local_power.hpp"
#include "mfgap/multfunc.hpp"
#include "mfgap/parallel.hpp"
#include "mfgap/pretentious.hpp"
#include "mfgap/sieve_density.hpp"
#include "mfgap/solutions.hpp"

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace mfgap {

inline constexpr const char* TOOL_VERSION = "0.1.0";

namespace cfgparse {

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) { out.push_back(detail::trim(cur)); cur.clear(); }
        else cur += c;
    }
    cur = detail::trim(cur);
    if (!cur.empty() || !out.empty()) out.push_back(cur);
    if (out.size() == 1 && out[0].empty()) out.clear();
    return out;
}

inline uint64_t to_u64(const std::string& s, const std::string& what) {
    try {
        size_t pos = 0;
        unsigned long long v = std::stoull(s, &pos);
        if (pos != s.size() || (!s.empty() && s[0] == '-')) throw std::invalid_argument("trail");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config error: " + what + " is not a nonnegative integer: " + s);
    }
}

inline long long to_i64(const std::string& s, const std::string& what) {
    try {
        size_t pos = 0;
        long long v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trail");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config error: " + what + " is not an integer: " + s);
    }
}

inline std::vector<uint64_t> u64_list(const std::string& s, const std::string& what) {
    std::vector<uint64_t> out;
    for (const std::string& part : split(s, ','))
        if (!part.empty()) out.push_back(to_u64(part, what));
    return out;
}

// "" | "all" | "random:SEED" | "residue:M:r1,r2" | "3,7,11"
inline PrimeSet prime_set(const std::string& spec, const std::string& what,
                          std::vector<uint64_t> random_exclusions = {}) {
    if (spec.empty()) return PrimeSet::empty();
    if (spec == "all") return PrimeSet::all();
    if (spec.rfind("random:", 0) == 0)
        return PrimeSet::random(to_u64(spec.substr(7), what + " seed"),
                                std::move(random_exclusions));
    if (spec.rfind("residue:", 0) == 0) {
        auto parts = split(spec.substr(8), ':');
        if (parts.size() != 2)
            throw ConfigError("config error: " + what + " residue spec needs modulus:residues");
        return PrimeSet::residue(to_u64(parts[0], what + " modulus"),
                                 u64_list(parts[1], what + " residue"));
    }
    return PrimeSet::explicit_set(u64_list(spec, what));
}

// "3:6;5:10" -> {3: 6, 5: 10}
inline std::map<uint64_t, long long> exception_map(const std::string& spec) {
    std::map<uint64_t, long long> out;
    for (const std::string& item : split(spec, ';')) {
        if (item.empty()) continue;
        size_t colon = item.find(':');
        if (colon == std::string::npos)
            throw ConfigError("config error: function.exceptions entry needs key:value: " + item);
        uint64_t key = to_u64(detail::trim(item.substr(0, colon)), "function.exceptions key");
        long long value = to_i64(detail::trim(item.substr(colon + 1)), "function.exceptions value");
        out[key] = value;
    }
    return out;
}

inline MultFuncDef function_from(const ExperimentConfig& cfg) {
    const std::string& rule = cfg.get("function.default");
    MultFuncDef def;
    if (rule == "identity") def = MultFuncDef::identity();
    else if (rule == "one") def = MultFuncDef::one();
    else if (rule == "monomial")
        def = MultFuncDef::monomial(static_cast<uint32_t>(cfg.get_u64("function.k")));
    else if (rule == "signed-identity")
        def = MultFuncDef::signed_identity(prime_set(cfg.get("function.T"), "function.T"));
    else if (rule == "identity-on")
        def = MultFuncDef::identity_on(prime_set(cfg.get("function.U"), "function.U"));
    else
        throw ConfigError("config error: key 'function.default' has unknown value '" + rule + "'");
    def.completely_multiplicative = cfg.get_bool("function.complete");
    def.exceptions = exception_map(cfg.get("function.exceptions"));
    try {
        def.validate();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config error: key 'function.exceptions': ") + e.what());
    }
    return def;
}

// "one" | "nit:T" | "char:Q:J" | "charf:Q:J" | "lambda" | "mod4"
inline DiscFunc disc_from(const std::string& spec, const ExperimentConfig& cfg,
                          const std::string& what) {
    if (spec == "one") return DiscFunc::one();
    if (spec == "mod4") return DiscFunc::mod4();
    if (spec == "lambda")
        return DiscFunc::liouville(prime_set(cfg.get("function.T"), "function.T"));
    if (spec.rfind("nit:", 0) == 0) {
        try {
            return DiscFunc::archimedean(std::stod(spec.substr(4)));
        } catch (const std::exception&) {
            throw ConfigError("config error: " + what + " nit spec needs a number: " + spec);
        }
    }
    auto char_args = [&](const std::string& body) {
        auto parts = split(body, ':');
        if (parts.size() != 2)
            throw ConfigError("config error: " + what + " spec needs q:j: " + spec);
        return std::make_pair(to_u64(parts[0], what + " modulus"),
                              to_u64(parts[1], what + " index"));
    };
    try {
        if (spec.rfind("char:", 0) == 0) {
            auto [q, j] = char_args(spec.substr(5));
            return DiscFunc::character(DirichletCharacter(q, j));
        }
        if (spec.rfind("charf:", 0) == 0) {
            auto [q, j] = char_args(spec.substr(6));
            return DiscFunc::character_of(DirichletCharacter(q, j), function_from(cfg));
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError("config error: " + what + ": " + e.what());
    }
    throw ConfigError("config error: " + what + " has unknown value '" + spec + "'");
}

// "all" | "values:4,3" | "primes:3,7" | "residue:4:1"
inline PrimePowerSet power_set(const std::string& spec, const std::string& what) {
    if (spec == "all") return PrimePowerSet::all_prime_powers();
    if (spec.rfind("values:", 0) == 0)
        return PrimePowerSet::explicit_values(u64_list(spec.substr(7), what));
    if (spec.rfind("primes:", 0) == 0)
        return PrimePowerSet::powers_of(PrimeSet::explicit_set(u64_list(spec.substr(7), what)));
    if (spec.rfind("residue:", 0) == 0)
        return PrimePowerSet::powers_of(prime_set(spec, what));
    throw ConfigError("config error: " + what + " has unknown value '" + spec + "'");
}

// "3^1@0;5^1@1" (shift optional, signed)
inline std::vector<ExactDivision> constraints(const std::string& spec) {
    std::vector<ExactDivision> out;
    for (const std::string& item : split(spec, ';')) {
        if (item.empty()) continue;
        size_t caret = item.find('^');
        if (caret == std::string::npos)
            throw ConfigError("config error: constraints entry needs p^nu[@shift]: " + item);
        size_t at = item.find('@', caret);
        uint64_t p = to_u64(detail::trim(item.substr(0, caret)), "constraint prime");
        std::string nupart = at == std::string::npos
                                 ? item.substr(caret + 1)
                                 : item.substr(caret + 1, at - caret - 1);
        uint32_t nu = static_cast<uint32_t>(to_u64(detail::trim(nupart), "constraint exponent"));
        long long shift = 0;
        if (at != std::string::npos)
            shift = to_i64(detail::trim(item.substr(at + 1)), "constraint shift");
        out.push_back({p, nu, shift});
    }
    return out;
}

inline std::vector<CoprimeShift> coprime_shifts(const std::string& spec) {
    std::vector<CoprimeShift> out;
    for (const std::string& item : split(spec, ','))
        if (!item.empty()) out.push_back({to_i64(item, "coprime shift")});
    return out;
}

}  // namespace cfgparse

struct RunPaths {
    std::filesystem::path dir;
    std::filesystem::path report;
    std::filesystem::path manifest;
};

inline RunPaths resolve_paths(const ExperimentConfig& cfg, const std::string& override_dir) {
    std::string dir = override_dir;
    if (dir.empty()) dir = cfg.get("output");
    if (dir.empty()) {
        const char* env = std::getenv("MFGAP_OUT");
        dir = env && *env ? env : "mfgap-out";
    }
    RunPaths p;
    p.dir = dir;
    p.report = p.dir / "report.csv";
    p.manifest = p.dir / "manifest.json";
    return p;
}

namespace detail {

inline void write_manifest(const RunPaths& paths, const ExperimentConfig& cfg,
                           const std::vector<std::string>& outputs) {
    nlohmann::ordered_json j;
    j["tool"] = "mfgap";
    j["version"] = TOOL_VERSION;
    j["experiment"] = cfg.experiment;
    nlohmann::ordered_json conf;
    conf["experiment"] = cfg.experiment;
    for (const auto& [k, v] : cfg.values) conf[k] = v;
    j["config"] = conf;
    j["config_hash_fnv1a64"] = cfg.hash_hex();
    j["outputs"] = outputs;
    std::ofstream os(paths.manifest);
    if (!os) throw std::ios_base::failure("cannot open " + paths.manifest.string());
    os << j.dump(2) << "\n";
}

inline std::ofstream open_out(const std::filesystem::path& p) {
    std::ofstream os(p);
    if (!os) throw std::ios_base::failure("cannot open " + p.string());
    return os;
}

inline void write_members(const std::filesystem::path& p, const std::vector<uint64_t>& members) {
    std::ofstream os = open_out(p);
    for (uint64_t m : members) os << m << "\n";
}

inline std::shared_ptr<SpfTable> make_table(uint64_t need) {
    return std::make_shared<SpfTable>(std::max<uint64_t>(need, 16));
}

}  // namespace detail

// Runs one experiment; returns files written (relative names).  Throws
// ConfigError for bad inputs, VerificationFailure when a verification ran
// and failed, std::ios_base::failure for I/O trouble.
inline std::vector<std::string> run_experiment(const ExperimentConfig& cfg,
                                               const RunPaths& paths) {
    std::filesystem::create_directories(paths.dir);
    std::vector<std::string> outputs = {"report.csv", "manifest.json"};
    std::ofstream rep = detail::open_out(paths.report);
    CsvWriter csv(rep);
    const std::string& ex = cfg.experiment;

    if (ex == "solutions" || ex == "density") {
        MultFuncDef def = cfgparse::function_from(cfg);
        long long a = cfg.get_i64("a"), b = cfg.get_i64("b");
        long long A = cfg.get_i64("A"), B = cfg.get_i64("B");
        uint64_t X = cfg.get_u64("X");
        if (a == 0 || A == 0 || B == 0)
            throw ConfigError("config error: keys a, A, B must satisfy aAB != 0");
        uint64_t mag = static_cast<uint64_t>(a > 0 ? a : -a);
        auto table = detail::make_table(X + mag + 1);
        SolutionSetReport r = enumerate_solutions(def, a, b, A, B, X, *table);
        csv.row({"x", "count", "nat_density", "log_density"});
        for (const auto& c : r.checkpoints)
            csv.row({std::to_string(c.x), std::to_string(c.count), csv_double(c.nat_density),
                     csv_double(c.log_density)});
        if (cfg.get_bool("members")) {
            detail::write_members(paths.dir / "members.txt", r.members);
            outputs.push_back("members.txt");
        }
        std::cout << ex << ": count=" << r.count << " density="
                  << csv_double(static_cast<double>(r.count) / static_cast<double>(X)) << "\n";
    } else if (ex == "gap-scan") {
        MultFuncDef def = cfgparse::function_from(cfg);
        uint64_t C = cfg.get_u64("C"), X = cfg.get_u64("X");
        if (C > 1000000)
            throw ConfigError("config error: key 'C' too large (max 10^6)");
        auto table = detail::make_table(X + 2);
        GapScanReport r = gap_scan(def, static_cast<long long>(C), X, *table);
        csv.row({"row", "b", "count", "log_density"});
        for (long long b = -static_cast<long long>(C); b <= static_cast<long long>(C); ++b)
            csv.row({"gap", std::to_string(b),
                     std::to_string(r.counts[static_cast<size_t>(b + static_cast<long long>(C))]),
                     ""});
        csv.row({"aggregate", "", std::to_string(r.aggregate_count),
                 csv_double(r.aggregate_log_density)});
        std::cout << "gap-scan: aggregate=" << r.aggregate_count
                  << " log_density=" << csv_double(r.aggregate_log_density) << "\n";
    } else if (ex == "distance") {
        uint64_t X = cfg.get_u64("X");
        auto table = detail::make_table(X);
        DiscFunc g1 = cfgparse::disc_from(cfg.get("g1"), cfg, "key 'g1'");
        DiscFunc g2 = cfgparse::disc_from(cfg.get("g2"), cfg, "key 'g2'");
        DistanceResult r = pretentious_distance(g1, g2, X, *table);
        csv.row({"g1", "g2", "x", "squared", "distance", "primes"});
        csv.row({g1.name, g2.name, std::to_string(r.x), csv_double(r.squared),
                 csv_double(r.value), std::to_string(r.prime_count)});
        std::cout << "distance: squared=" << csv_double(r.squared) << "\n";
    } else if (ex == "halasz") {
        uint64_t X = cfg.get_u64("X");
        auto table = detail::make_table(X);
        DiscFunc g = cfgparse::disc_from(cfg.get("g"), cfg, "key 'g'");
        double T = cfg.get_f64("T");
        uint64_t grid = cfg.get_u64("grid");
        if (grid < 3 || grid > 10000000)
            throw ConfigError("config error: key 'grid' out of range [3, 10^7]");
        HalaszResult r = halasz_M(g, X, T, static_cast<uint32_t>(grid), *table);
        csv.row({"g", "x", "T", "grid", "M", "t_min"});
        csv.row({g.name, std::to_string(X), csv_double(T), std::to_string(grid),
                 csv_double(r.M), csv_double(r.t_min)});
        std::cout << "halasz: M=" << csv_double(r.M) << " t_min=" << csv_double(r.t_min) << "\n";
    } else if (ex == "tk") {
        uint64_t X = cfg.get_u64("X");
        auto table = detail::make_table(X);
        const std::string& add = cfg.get("additive");
        AdditiveFuncDef g;
        if (add == "omega") g = AdditiveFuncDef::omega();
        else if (add == "omega-set")
            g = AdditiveFuncDef::omega_of(cfgparse::power_set(cfg.get("set"), "key 'set'"));
        else
            throw ConfigError("config error: key 'additive' has unknown value '" + add + "'");
        TkStats r = tk_stats(g, X, *table);
        csv.row({"additive", "X", "A", "B2", "variance", "ratio"});
        csv.row({g.name, std::to_string(X), csv_double(r.A), csv_double(r.B2),
                 csv_double(r.variance), csv_double(r.ratio)});
        std::cout << "tk: A=" << csv_double(r.A) << " ratio=" << csv_double(r.ratio) << "\n";
    } else if (ex == "elliott") {
        uint64_t X = cfg.get_u64("X"), limit = cfg.get_u64("limit");
        const std::string& source = cfg.get("source");
        std::vector<uint64_t> members;
        std::shared_ptr<SpfTable> table;
        if (source == "all" || source == "even" || source == "odd") {
            table = detail::make_table(X);
            uint64_t start = source == "even" ? 2 : 1;
            uint64_t step = source == "all" ? 1 : 2;
            for (uint64_t n = start; n <= X; n += step) members.push_back(n);
        } else if (source == "solutions") {
            MultFuncDef def = cfgparse::function_from(cfg);
            long long a = cfg.get_i64("a"), b = cfg.get_i64("b");
            long long A = cfg.get_i64("A"), B = cfg.get_i64("B");
            if (a == 0 || A == 0 || B == 0)
                throw ConfigError("config error: keys a, A, B must satisfy aAB != 0");
            uint64_t mag = static_cast<uint64_t>(a > 0 ? a : -a);
            table = detail::make_table(X + mag + 1);
            SolutionSetReport r = enumerate_solutions(def, a, b, A, B, X, *table);
            members = std::move(r.members);
        } else {
            throw ConfigError("config error: key 'source' has unknown value '" + source + "'");
        }
        ElliottDefect r = elliott_defect(members, X, limit, *table);
        csv.row({"source", "X", "limit", "count", "lhs", "rhs", "ratio"});
        csv.row({source, std::to_string(X), std::to_string(limit),
                 std::to_string(members.size()), csv_double(r.lhs), csv_double(r.rhs),
                 csv_double(r.ratio)});
        std::cout << "elliott: ratio=" << csv_double(r.ratio) << "\n";
    } else if (ex == "correlation") {
        uint64_t X = cfg.get_u64("X");
        long long a = cfg.get_i64("a"), b = cfg.get_i64("b");
        long long c = cfg.get_i64("c"), d = cfg.get_i64("d");
        __int128 m1 = static_cast<__int128>(a) * X + b;
        __int128 m2 = static_cast<__int128>(c) * X + d;
        __int128 mx = m1 > m2 ? m1 : m2;
        if (mx < 2) mx = 2;
        auto table = detail::make_table(static_cast<uint64_t>(mx));
        DiscFunc g1 = cfgparse::disc_from(cfg.get("g1"), cfg, "key 'g1'");
        DiscFunc g2 = cfgparse::disc_from(cfg.get("g2"), cfg, "key 'g2'");
        std::complex<double> r = log_correlation(g1, g2, a, b, c, d, X, *table);
        csv.row({"g1", "g2", "a", "b", "c", "d", "x", "re", "im", "abs"});
        csv.row({g1.name, g2.name, std::to_string(a), std::to_string(b), std::to_string(c),
                 std::to_string(d), std::to_string(X), csv_double(r.real()), csv_double(r.imag()),
                 csv_double(std::abs(r))});
        std::cout << "correlation: re=" << csv_double(r.real()) << " im=" << csv_double(r.imag())
                  << "\n";
    } else if (ex == "local-power") {
        MultFuncDef def = cfgparse::function_from(cfg);
        uint64_t ell = cfg.get_u64("ell"), X = cfg.get_u64("X");
        uint32_t D = static_cast<uint32_t>(cfg.get_u64("D"));
        const std::string& mode_s = cfg.get("mode");
        LocalPowerMode mode;
        if (mode_s == "exact") mode = LocalPowerMode::Exact;
        else if (mode_s == "weighted") mode = LocalPowerMode::Weighted;
        else throw ConfigError("config error: key 'mode' has unknown value '" + mode_s + "'");
        auto table = detail::make_table(X);
        LocalPowerResult r = find_local_power_exponent(def, D, ell, X, mode, *table);
        const char* status = r.status == LocalPowerStatus::Unique ? "unique"
                             : r.status == LocalPowerStatus::Absent ? "absent"
                                                                    : "ambiguous";
        csv.row({"ell", "D", "mode", "status", "g", "candidates", "exception_count",
                 "exception_weight", "total_weight"});
        csv.row({std::to_string(ell), std::to_string(D), mode_s, status,
                 r.status == LocalPowerStatus::Absent ? "" : std::to_string(r.g),
                 std::to_string(r.candidate_count), std::to_string(r.exceptions.size()),
                 csv_double(r.exception_weight), csv_double(r.total_weight)});
        if (mode == LocalPowerMode::Weighted) {
            detail::write_members(paths.dir / "exceptions.txt", r.exceptions);
            outputs.push_back("exceptions.txt");
        }
        std::cout << "local-power: status=" << status << " g="
                  << (r.status == LocalPowerStatus::Absent ? std::string("-")
                                                           : std::to_string(r.g))
                  << "\n";
        if (!r.verified)
            throw VerificationFailure("verification failed: local power soundness re-check");
    } else if (ex == "fs-scan") {
        MultFuncDef def = cfgparse::function_from(cfg);
        uint64_t L = cfg.get_u64("L"), X = cfg.get_u64("X");
        uint32_t D = static_cast<uint32_t>(cfg.get_u64("D"));
        auto table = detail::make_table(X);
        FsScanReport r = fs_scan(def, L, X, *table, D);
        csv.row({"row", "ell", "g", "info"});
        for (const auto& res : r.per_ell)
            csv.row({"local", std::to_string(res.ell), std::to_string(res.g),
                     res.verified ? "verified" : "unverified"});
        csv.row({"global", "", r.global_power ? std::to_string(r.k) : "",
                 r.global_power ? "power" : "none"});
        std::cout << "fs-scan: moduli=" << r.per_ell.size() << " global="
                  << (r.global_power ? "k=" + std::to_string(r.k) : std::string("none")) << "\n";
    } else if (ex == "sf-density") {
        MultFuncDef def = cfgparse::function_from(cfg);
        uint64_t X = cfg.get_u64("X");
        auto table = detail::make_table(X);
        SfDensityReport r = s_f_density(def, X, *table);
        csv.row({"X", "count", "reciprocal_sum", "dirichlet_estimate"});
        csv.row({std::to_string(X), std::to_string(r.members.size()),
                 csv_double(r.reciprocal_sum), csv_double(r.dirichlet_estimate)});
        std::cout << "sf-density: count=" << r.members.size()
                  << " estimate=" << csv_double(r.dirichlet_estimate) << "\n";
    } else if (ex == "converse-verify") {
        ConverseParams params;
        params.a = cfg.get_i64("a");
        params.d = cfg.get_i64("d");
        params.b = cfg.get_i64("b");
        params.S = cfgparse::u64_list(cfg.get("S"), "key 'S'");
        params.T = cfgparse::prime_set(cfg.get("T"), "key 'T'", params.S);
        uint64_t X = cfg.get_u64("X");
        ConverseBuild build = [&] {
            try {
                return build_converse(params);
            } catch (const std::exception& e) {
                throw ConfigError(std::string("config error: ") + e.what());
            }
        }();
        const std::string& override_s = cfg.get("override");
        if (!override_s.empty()) {
            // Fault injection: override f at one prime and re-verify.
            auto tampered = cfgparse::exception_map(override_s);
            for (auto& [p, v] : tampered) build.def.exceptions[p] = v;
        }
        uint64_t mag = static_cast<uint64_t>(params.a > 0 ? params.a : -params.a);
        auto table = detail::make_table(X + mag + 1);
        ConverseVerifyReport r =
            verify_converse(build.def, params, X, *table, cfg.get_bool("members"));
        csv.row({"metric", "value", "detail"});
        csv.row({"item_i", r.item_i ? "pass" : "fail", ""});
        csv.row({"item_ii", r.item_ii ? "pass" : "fail", ""});
        csv.row({"item_iii", r.item_iii ? "pass" : "fail", ""});
        csv.row({"violations", std::to_string(r.violations), r.first_failure});
        csv.row({"nprime_count", std::to_string(r.nprime_count), ""});
        csv.row({"nprime_density", csv_double(r.nprime_density), ""});
        csv.row({"predicted", csv_double(r.predicted_double),
                 rational_num(r.predicted) + "/" + rational_den(r.predicted)});
        csv.row({"prediction_ratio",
                 r.predicted_double > 0 ? csv_double(r.nprime_density / r.predicted_double) : "",
                 r.prediction_heuristic ? "heuristic" : "exact"});
        if (cfg.get_bool("members")) {
            detail::write_members(paths.dir / "members.txt", r.members);
            outputs.push_back("members.txt");
        }
        std::cout << "converse-verify: items=" << (r.structural_pass() ? "pass" : "FAIL")
                  << " violations=" << r.violations << " density="
                  << csv_double(r.nprime_density) << " predicted="
                  << csv_double(r.predicted_double) << "\n";
        if (!r.structural_pass() || r.violations > 0)
            throw VerificationFailure("verification failed: " + r.first_failure);
    } else if (ex == "sieve-predict") {
        auto cons = cfgparse::constraints(cfg.get("constraints"));
        auto cop = cfgparse::coprime_shifts(cfg.get("coprime"));
        auto sparse = cfgparse::u64_list(cfg.get("S"), "key 'S'");
        DensityPrediction r = [&] {
            try {
                return zero_dim_density(cons, cop, sparse);
            } catch (const std::domain_error& e) {
                throw ConfigError(std::string("config error: ") + e.what());
            } catch (const std::invalid_argument& e) {
                throw ConfigError(std::string("config error: ") + e.what());
            }
        }();
        csv.row({"value", "num", "den", "degenerate"});
        csv.row({csv_double(r.to_double()), rational_num(r.value), rational_den(r.value),
                 r.degenerate ? "true" : "false"});
        std::cout << "sieve-predict: value=" << csv_double(r.to_double()) << " ("
                  << rational_num(r.value) << "/" << rational_den(r.value) << ")\n";
    } else if (ex == "random-T") {
        uint64_t X = cfg.get_u64("X"), seed = cfg.get_u64("seed");
        auto exclude = cfgparse::u64_list(cfg.get("exclude"), "key 'exclude'");
        auto table = detail::make_table(X);
        std::vector<uint64_t> T = sample_random_T(exclude, X, seed, *table);
        KahanSum recip;
        for (uint64_t p : T) recip.add(1.0 / static_cast<double>(p));
        csv.row({"metric", "value"});
        csv.row({"count", std::to_string(T.size())});
        csv.row({"reciprocal_sum", csv_double(recip.value())});
        detail::write_members(paths.dir / "members.txt", T);
        outputs.push_back("members.txt");
        std::cout << "random-T: count=" << T.size()
                  << " reciprocal_sum=" << csv_double(recip.value()) << "\n";
    } else {
        throw ConfigError("config error: key 'experiment' has unknown value '" + ex + "'");
    }

    rep.close();
    detail::write_manifest(paths, cfg, outputs);
    return outputs;
}

inline std::string explain_experiment(const std::string& name) {
    const auto& schemas = experiment_schemas();
    auto it = schemas.find(name);
    if (it == schemas.end())
        throw ConfigError("config error: key 'experiment' has unknown value '" + name + "'");
    std::ostringstream os;
    os << "experiment = " << name << "\n";
    for (const FieldSpec& f : it->second) {
        os << "  " << f.key << " : ";
        switch (f.type) {
            case FieldType::I64: os << "integer"; break;
            case FieldType::U64: os << "nonnegative integer"; break;
            case FieldType::F64: os << "number"; break;
            case FieldType::Bool: os << "boolean"; break;
            case FieldType::Str: os << "string"; break;
        }
        if (f.required) os << " (required)";
        else os << " (default: " << (f.fallback[0] ? f.fallback : "empty") << ")";
        os << "\n";
    }
    return os.str();
}

}  // namespace mfgap
