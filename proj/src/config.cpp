#include "frihls/config.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include "json.hpp"

#include "frihls/errors.hpp"

namespace frihls {

using nlohmann::json;

namespace {

const std::set<std::string> kCommands = {"kernels", "semigroup", "frac",
                                         "mc",      "subord",    "hls"};

struct FieldSpec {
    double lo, hi;
    bool integral;
};

// Numeric scalar knobs per command; ranges are structural (module
// preconditions that do not depend on other fields are checked here, the
// cross-field ones right after).
const std::map<std::string, std::map<std::string, FieldSpec>>& scalar_fields() {
    static const std::map<std::string, std::map<std::string, FieldSpec>> m = {
        {"kernels", {{"d", {1, 3, true}}}},
        {"semigroup", {{"d", {1, 3, true}}, {"p", {1.0 + 1e-9, 64, false}}}},
        {"frac",
         {{"d", {1, 3, true}},
          // static cap loose; the alpha-vs-d relation is a cross check
          {"alpha", {1e-9, 16, false}},
          {"p", {1.0 + 1e-9, 64, false}},
          {"a", {1e-9, 1e6, false}},
          {"mixtures", {1, 64, true}}}},
        {"mc",
         {{"d", {1, 3, true}},
          {"a", {1e-9, 1e4, false}},
          {"M", {16, 1048576, true}},
          {"N", {2, 1e8, true}},
          {"L0", {0.1, 1e3, false}},
          {"alpha", {1e-9, 16, false}},
          {"bandwidth", {1e-6, 10, false}}}},
        {"subord",
         {{"beta", {1e-9, 1.0 - 1e-9, false}}, {"d", {1, 3, true}}, {"t", {1e-9, 1e4, false}}}},
        {"hls", {{"family", {0, 64, true}}}},
    };
    return m;
}

const std::map<std::string, std::map<std::string, FieldSpec>>& list_fields() {
    static const std::map<std::string, std::map<std::string, FieldSpec>> m = {
        {"hls",
         {{"dims", {1, 3, true}},
          {"alphas", {1e-9, 3, false}},
          {"ps", {1.0 + 1e-9, 64, false}},
          {"lambdas", {1e-6, 64, false}}}},
    };
    return m;
}

const std::map<std::string, std::map<std::string, std::set<std::string>>>& string_list_fields() {
    static const std::map<std::string, std::map<std::string, std::set<std::string>>> m = {
        {"hls", {{"methods", {"mellin", "riesz", "fourier"}}}},
    };
    return m;
}

[[noreturn]] void fail(const std::string& msg) { throw PreconditionError(msg); }

double checked_scalar(const std::string& field, const json& v, const FieldSpec& spec) {
    if (!v.is_number()) fail("validation error: field '" + field + "' must be a number");
    double x = v.get<double>();
    if (spec.integral && x != std::floor(x))
        fail("validation error: field '" + field + "' must be an integer");
    if (!(x >= spec.lo && x <= spec.hi))
        fail("validation error: field '" + field + "' out of range [" +
             std::to_string(spec.lo) + ", " + std::to_string(spec.hi) + "]");
    return x;
}

void cross_checks(const ExperimentConfig& cfg) {
    auto get = [&](const char* k, double dflt) {
        auto it = cfg.params.find(k);
        return it == cfg.params.end() ? dflt : it->second;
    };
    if (cfg.command == "frac" || cfg.command == "mc") {
        double d = get("d", 1);
        double alpha = get("alpha", 0.5);
        if (!(alpha > 0.0 && alpha < d))
            fail("validation error: alpha must lie in (0, d); got alpha=" +
                 std::to_string(alpha) + ", d=" + std::to_string(int(d)));
        if (cfg.command == "frac" && cfg.params.count("p")) {
            double p = cfg.params.at("p");
            if (!(p > 1.0 && p < d / alpha))
                fail("validation error: p must lie in (1, d/alpha)");
        }
    }
}

} // namespace

const std::map<std::string, ToleranceSpec>& tolerance_registry() {
    static const std::map<std::string, ToleranceSpec> reg = {
        {"mc_sigma", {3.0, 0.5, 10.0}},
        {"triple_rel", {1e-3, 1e-12, 0.1}},
        {"subord_rel", {1e-6, 1e-14, 0.1}},
        {"scaling_closed_rel", {1e-10, 1e-16, 1e-4}},
        {"fit_ratio_max", {100.0, 1.0, 1e6}},
        {"dilation_spread", {0.005, 1e-7, 0.5}},
        {"wrong_exponent_rel", {0.02, 1e-7, 0.5}},
        {"qnorm_rel", {1e-4, 1e-8, 0.05}},
        {"stabilization_rel", {0.05, 1e-6, 1.0}},
        {"grad_margin", {1.0, 0.1, 2.0}},
        {"frac_constant_rel", {0.01, 1e-6, 0.5}},
        {"oracle_rel", {0.02, 1e-6, 0.5}},
    };
    return reg;
}

double ExperimentConfig::tol(const std::string& name) const {
    auto it = tolerances.find(name);
    if (it != tolerances.end()) return it->second;
    auto reg = tolerance_registry().find(name);
    if (reg == tolerance_registry().end())
        throw PreconditionError("unknown tolerance name: " + name);
    return reg->second.fallback;
}

double ExperimentConfig::param(const std::string& name, double fallback) const {
    auto it = params.find(name);
    return it == params.end() ? fallback : it->second;
}

ExperimentConfig parse_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw PreconditionError(std::string("parse error: ") + e.what());
    }
    if (!doc.is_object()) fail("validation error: config must be a JSON object");

    ExperimentConfig cfg;
    if (!doc.contains("command") || !doc["command"].is_string())
        fail("validation error: field 'command' (string) is required");
    cfg.command = doc["command"].get<std::string>();
    if (!kCommands.count(cfg.command))
        fail("validation error: unknown command '" + cfg.command + "'");

    const auto& scal = scalar_fields().at(cfg.command);
    auto list_it = list_fields().find(cfg.command);
    auto slist_it = string_list_fields().find(cfg.command);

    for (const auto& [key, value] : doc.items()) {
        if (key == "command") continue;
        if (key == "seed") {
            if (!value.is_number_unsigned())
                fail("validation error: field 'seed' must be an unsigned integer");
            cfg.seed = value.get<std::uint64_t>();
        } else if (key == "out") {
            if (!value.is_string()) fail("validation error: field 'out' must be a string");
            cfg.output_dir = value.get<std::string>();
        } else if (key == "format") {
            if (!value.is_string() ||
                (value.get<std::string>() != "csv" && value.get<std::string>() != "json"))
                fail("validation error: field 'format' must be \"csv\" or \"json\"");
            cfg.format = value.get<std::string>();
        } else if (key == "threads") {
            if (!value.is_number_integer() || value.get<std::int64_t>() < 0 ||
                value.get<std::int64_t>() > 4096)
                fail("validation error: field 'threads' must be an integer in [0, 4096]");
            cfg.threads = int(value.get<std::int64_t>());
        } else if (key == "tolerances") {
            if (!value.is_object())
                fail("validation error: field 'tolerances' must be an object");
            for (const auto& [tname, tval] : value.items()) {
                auto reg = tolerance_registry().find(tname);
                if (reg == tolerance_registry().end())
                    fail("validation error: unknown tolerance name '" + tname + "'");
                if (!tval.is_number())
                    fail("validation error: tolerance '" + tname + "' must be a number");
                double x = tval.get<double>();
                if (!(x >= reg->second.lo && x <= reg->second.hi))
                    fail("validation error: tolerance '" + tname + "' out of range");
                cfg.tolerances[tname] = x;
            }
        } else if (scal.count(key)) {
            cfg.params[key] = checked_scalar(key, value, scal.at(key));
        } else if (list_it != list_fields().end() && list_it->second.count(key)) {
            if (!value.is_array())
                fail("validation error: field '" + key + "' must be an array of numbers");
            std::vector<double> xs;
            for (const auto& v : value)
                xs.push_back(checked_scalar(key, v, list_it->second.at(key)));
            if (xs.empty()) fail("validation error: field '" + key + "' must be non-empty");
            cfg.lists[key] = xs;
        } else if (slist_it != string_list_fields().end() && slist_it->second.count(key)) {
            if (!value.is_array())
                fail("validation error: field '" + key + "' must be an array of strings");
            std::vector<std::string> xs;
            for (const auto& v : value) {
                if (!v.is_string())
                    fail("validation error: field '" + key + "' must be an array of strings");
                std::string s = v.get<std::string>();
                if (!slist_it->second.at(key).count(s))
                    fail("validation error: '" + s + "' is not valid for field '" + key + "'");
                xs.push_back(s);
            }
            if (xs.empty()) fail("validation error: field '" + key + "' must be non-empty");
            cfg.string_lists[key] = xs;
        } else {
            fail("validation error: unknown field '" + key + "' for command '" + cfg.command +
                 "'");
        }
    }
    cross_checks(cfg);
    return cfg;
}

std::string serialize_config(const ExperimentConfig& cfg) {
    json doc;
    doc["command"] = cfg.command;
    doc["seed"] = cfg.seed;
    doc["out"] = cfg.output_dir;
    doc["format"] = cfg.format;
    doc["threads"] = cfg.threads;
    if (!cfg.tolerances.empty()) {
        json t;
        for (const auto& [k, v] : cfg.tolerances) t[k] = v;
        doc["tolerances"] = t;
    }
    for (const auto& [k, v] : cfg.params) doc[k] = v;
    for (const auto& [k, v] : cfg.lists) doc[k] = v;
    for (const auto& [k, v] : cfg.string_lists) doc[k] = v;
    return doc.dump(2) + "\n";
}

void apply_tolerance_override(ExperimentConfig& cfg, const std::string& spec) {
    auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size())
        fail("validation error: --tolerance expects name=value, got '" + spec + "'");
    std::string name = spec.substr(0, eq);
    auto reg = tolerance_registry().find(name);
    if (reg == tolerance_registry().end())
        fail("validation error: unknown tolerance name '" + name + "'");
    double x;
    try {
        std::size_t used = 0;
        x = std::stod(spec.substr(eq + 1), &used);
        if (used != spec.size() - eq - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
        fail("validation error: tolerance '" + name + "' value is not a number");
    }
    if (!(x >= reg->second.lo && x <= reg->second.hi))
        fail("validation error: tolerance '" + name + "' out of range");
    cfg.tolerances[name] = x;
}

} // namespace frihls
