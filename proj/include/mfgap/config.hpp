#pragma once
// Flat key = value experiment configs.
//
// One experiment per file: an `experiment` key picks the schema, every
// other key must appear in that schema, and omitted keys take schema
// defaults.  Keys are case-sensitive (a/A and b/B are distinct equation
// parameters).  parse_config returns the fully resolved config; its
// canonical serialization (experiment first, remaining keys sorted) feeds
// the FNV-1a hash recorded in the manifest, and reparsing the canonical
// text gives back the identical config.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace mfgap {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// A verification that ran and failed (distinct from bad inputs).
struct VerificationFailure : std::runtime_error {
    explicit VerificationFailure(const std::string& msg) : std::runtime_error(msg) {}
};

enum class FieldType { I64, U64, F64, Bool, Str };

struct FieldSpec {
    const char* key;
    FieldType type;
    bool required;
    const char* fallback;  // default value when not required
};

// Shared function-definition block.
#define MFGAP_FUNCTION_FIELDS                                        \
    {"function.default", FieldType::Str, false, "identity"},        \
    {"function.k", FieldType::U64, false, "1"},                     \
    {"function.complete", FieldType::Bool, false, "true"},          \
    {"function.exceptions", FieldType::Str, false, ""},             \
    {"function.T", FieldType::Str, false, ""},                      \
    {"function.U", FieldType::Str, false, ""}

inline const std::map<std::string, std::vector<FieldSpec>>& experiment_schemas() {
    static const std::map<std::string, std::vector<FieldSpec>> schemas = {
        {"solutions",
         {MFGAP_FUNCTION_FIELDS,
          {"a", FieldType::I64, false, "1"},
          {"b", FieldType::I64, true, ""},
          {"A", FieldType::I64, false, "1"},
          {"B", FieldType::I64, false, "1"},
          {"X", FieldType::U64, true, ""},
          {"members", FieldType::Bool, false, "true"},
          {"output", FieldType::Str, false, ""}}},
        {"density",
         {MFGAP_FUNCTION_FIELDS,
          {"a", FieldType::I64, false, "1"},
          {"b", FieldType::I64, true, ""},
          {"A", FieldType::I64, false, "1"},
          {"B", FieldType::I64, false, "1"},
          {"X", FieldType::U64, true, ""},
          {"members", FieldType::Bool, false, "false"},
          {"output", FieldType::Str, false, ""}}},
        {"gap-scan",
         {MFGAP_FUNCTION_FIELDS,
          {"C", FieldType::U64, true, ""},
          {"X", FieldType::U64, true, ""},
          {"output", FieldType::Str, false, ""}}},
        {"distance",
         {MFGAP_FUNCTION_FIELDS,
          {"g1", FieldType::Str, true, ""},
          {"g2", FieldType::Str, true, ""},
          {"X", FieldType::U64, true, ""},
          {"output", FieldType::Str, false, ""}}},
        {"halasz",
         {MFGAP_FUNCTION_FIELDS,
          {"g", FieldType::Str, true, ""},
          {"X", FieldType::U64, true, ""},
          {"T", FieldType::F64, false, "10"},
          {"grid", FieldType::U64, false, "4097"},
          {"output", FieldType::Str, false, ""}}},
        {"tk",
         {{"additive", FieldType::Str, false, "omega"},
          {"set", FieldType::Str, false, "all"},
          {"X", FieldType::U64, true, ""},
          {"output", FieldType::Str, false, ""}}},
        {"elliott",
         {MFGAP_FUNCTION_FIELDS,
          {"source", FieldType::Str, false, "all"},
          {"a", FieldType::I64, false, "1"},
          {"b", FieldType::I64, false, "0"},
          {"A", FieldType::I64, false, "1"},
          {"B", FieldType::I64, false, "1"},
          {"X", FieldType::U64, true, ""},
          {"limit", FieldType::U64, true, ""},
          {"output", FieldType::Str, false, ""}}},
        {"correlation",
         {MFGAP_FUNCTION_FIELDS,
          {"g1", FieldType::Str, true, ""},
          {"g2", FieldType::Str, true, ""},
          {"a", FieldType::I64, false, "1"},
          {"b", FieldType::I64, false, "0"},
          {"c", FieldType::I64, false, "1"},
          {"d", FieldType::I64, false, "1"},
          {"X", FieldType::U64, true, ""},
          {"output", FieldType::Str, false, ""}}},
        {"local-power",
         {MFGAP_FUNCTION_FIELDS,
          {"ell", FieldType::U64, true, ""},
          {"D", FieldType::U64, false, "1"},
          {"X", FieldType::U64, true, ""},
          {"mode", FieldType::Str, false, "exact"},
          {"output", FieldType::Str, false, ""}}},
        {"fs-scan",
         {MFGAP_FUNCTION_FIELDS,
          {"L", FieldType::U64, true, ""},
          {"X", FieldType::U64, true, ""},
          {"D", FieldType::U64, false, "1"},
          {"output", FieldType::Str, false, ""}}},
        {"sf-density",
         {MFGAP_FUNCTION_FIELDS,
          {"X", FieldType::U64, true, ""},
          {"output", FieldType::Str, false, ""}}},
        {"converse-verify",
         {{"a", FieldType::I64, true, ""},
          {"d", FieldType::I64, false, "1"},
          {"b", FieldType::I64, true, ""},
          {"S", FieldType::Str, true, ""},
          {"T", FieldType::Str, false, ""},
          {"X", FieldType::U64, true, ""},
          {"override", FieldType::Str, false, ""},
          {"members", FieldType::Bool, false, "false"},
          {"output", FieldType::Str, false, ""}}},
        {"sieve-predict",
         {{"constraints", FieldType::Str, false, ""},
          {"coprime", FieldType::Str, false, ""},
          {"S", FieldType::Str, false, ""},
          {"output", FieldType::Str, false, ""}}},
        {"random-T",
         {{"X", FieldType::U64, true, ""},
          {"seed", FieldType::U64, true, ""},
          {"exclude", FieldType::Str, false, ""},
          {"output", FieldType::Str, false, ""}}},
    };
    return schemas;
}

#undef MFGAP_FUNCTION_FIELDS

struct ExperimentConfig {
    std::string experiment;
    std::map<std::string, std::string> values;  // resolved, schema-complete

    bool operator==(const ExperimentConfig&) const = default;

    const std::string& get(const std::string& key) const {
        auto it = values.find(key);
        if (it == values.end())
            throw ConfigError("config error: key '" + key + "' missing from resolved config");
        return it->second;
    }

    long long get_i64(const std::string& key) const {
        try {
            size_t pos = 0;
            long long v = std::stoll(get(key), &pos);
            if (pos != get(key).size()) throw std::invalid_argument("trail");
            return v;
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception&) {
            throw ConfigError("config error: key '" + key + "' is not an integer: " + get(key));
        }
    }

    uint64_t get_u64(const std::string& key) const {
        const std::string& s = get(key);
        try {
            if (!s.empty() && s[0] == '-') throw std::invalid_argument("neg");
            size_t pos = 0;
            unsigned long long v = std::stoull(s, &pos);
            if (pos != s.size()) throw std::invalid_argument("trail");
            return v;
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception&) {
            throw ConfigError("config error: key '" + key + "' is not a nonnegative integer: " + s);
        }
    }

    double get_f64(const std::string& key) const {
        const std::string& s = get(key);
        try {
            size_t pos = 0;
            double v = std::stod(s, &pos);
            if (pos != s.size()) throw std::invalid_argument("trail");
            return v;
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception&) {
            throw ConfigError("config error: key '" + key + "' is not a number: " + s);
        }
    }

    bool get_bool(const std::string& key) const {
        const std::string& s = get(key);
        if (s == "true" || s == "1" || s == "yes") return true;
        if (s == "false" || s == "0" || s == "no") return false;
        throw ConfigError("config error: key '" + key + "' is not a boolean: " + s);
    }

    // experiment line first, then keys in sorted order.
    std::string canonical_text() const {
        std::ostringstream os;
        os << "experiment = " << experiment << "\n";
        for (const auto& [k, v] : values) os << k << " = " << v << "\n";
        return os.str();
    }

    uint64_t hash() const {
        uint64_t h = 14695981039346656037ull;
        for (unsigned char c : canonical_text()) {
            h ^= c;
            h *= 1099511628211ull;
        }
        return h;
    }

    std::string hash_hex() const {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash()));
        return buf;
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline void check_type(const std::string& key, FieldType type, const std::string& value,
                       size_t line) {
    auto fail = [&](const char* what) {
        throw ConfigError("config error: line " + std::to_string(line) + ": key '" + key +
                          "' " + what + ": " + value);
    };
    try {
        size_t pos = 0;
        switch (type) {
            case FieldType::I64:
                std::stoll(value, &pos);
                if (pos != value.size()) fail("is not an integer");
                break;
            case FieldType::U64:
                if (!value.empty() && value[0] == '-') fail("is not a nonnegative integer");
                std::stoull(value, &pos);
                if (pos != value.size()) fail("is not a nonnegative integer");
                break;
            case FieldType::F64:
                std::stod(value, &pos);
                if (pos != value.size()) fail("is not a number");
                break;
            case FieldType::Bool:
                if (value != "true" && value != "false" && value != "0" && value != "1" &&
                    value != "yes" && value != "no")
                    fail("is not a boolean");
                break;
            case FieldType::Str:
                break;
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        fail("has an out-of-range or malformed value");
    }
}

}  // namespace detail

// Parses key = value text into a schema-resolved config.  Every problem is
// reported with the offending key (and line where one exists).
inline ExperimentConfig parse_config(const std::string& text) {
    std::map<std::string, std::string> raw;
    std::map<std::string, size_t> lines;
    std::istringstream is(text);
    std::string line;
    size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config error: line " + std::to_string(lineno) +
                              ": expected 'key = value': " + line);
        std::string key = detail::trim(line.substr(0, eq));
        std::string value = detail::trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config error: line " + std::to_string(lineno) + ": empty key");
        if (raw.count(key))
            throw ConfigError("config error: line " + std::to_string(lineno) +
                              ": duplicate key '" + key + "'");
        raw[key] = value;
        lines[key] = lineno;
    }

    auto expit = raw.find("experiment");
    if (expit == raw.end())
        throw ConfigError("config error: key 'experiment' is required");
    const auto& schemas = experiment_schemas();
    auto schit = schemas.find(expit->second);
    if (schit == schemas.end()) {
        std::string known;
        for (const auto& [name, fields] : schemas) {
            (void)fields;
            known += known.empty() ? name : ", " + name;
        }
        throw ConfigError("config error: key 'experiment' has unknown value '" + expit->second +
                          "' (known: " + known + ")");
    }

    ExperimentConfig cfg;
    cfg.experiment = expit->second;
    raw.erase(expit);

    for (const FieldSpec& f : schit->second) {
        auto it = raw.find(f.key);
        if (it == raw.end()) {
            if (f.required)
                throw ConfigError("config error: key '" + std::string(f.key) +
                                  "' is required for experiment '" + cfg.experiment + "'");
            cfg.values[f.key] = f.fallback;
        } else {
            detail::check_type(f.key, f.type, it->second, lines[f.key]);
            cfg.values[f.key] = it->second;
            raw.erase(it);
        }
    }
    if (!raw.empty()) {
        const auto& [key, value] = *raw.begin();
        (void)value;
        throw ConfigError("config error: line " + std::to_string(lines[key]) + ": key '" + key +
                          "' is not valid for experiment '" + cfg.experiment + "'");
    }
    // Semantic constraint shared by the equation experiments: aAB != 0.
    if (cfg.experiment == "solutions" || cfg.experiment == "density" ||
        cfg.experiment == "elliott") {
        for (const char* key : {"a", "A", "B"}) {
            auto it = cfg.values.find(key);
            if (it != cfg.values.end() && it->second == "0")
                throw ConfigError("config error: line " + std::to_string(lines[key]) + ": key '" +
                                  key + "': aAB != 0 required");
        }
    }
    return cfg;
}

}  // namespace mfgap
