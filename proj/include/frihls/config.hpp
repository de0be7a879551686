#pragma once
// Experiment configuration: one JSON config drives one battery. Command
// parameters live at the top level of the document next to the bookkeeping
// fields; tolerance overrides sit under "tolerances" and unknown names are
// rejected at parse time.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace frihls {

struct ExperimentConfig {
    std::string command;        // kernels|semigroup|frac|mc|subord|hls
    std::uint64_t seed = 0x5EEDF12AULL;
    std::string output_dir = ".";
    std::string format = "csv"; // csv|json
    int threads = 0;            // 0 = machine parallelism
    std::map<std::string, double> tolerances;
    std::map<std::string, double> params;             // numeric command knobs
    std::map<std::string, std::vector<double>> lists; // list-valued knobs
    std::map<std::string, std::vector<std::string>> string_lists;

    // Tolerance by name with the registry default as fallback.
    double tol(const std::string& name) const;
    double param(const std::string& name, double fallback) const;
};

struct ToleranceSpec {
    double fallback;
    double lo, hi; // accepted override range, inclusive
};

const std::map<std::string, ToleranceSpec>& tolerance_registry();

// Parses and validates. Malformed JSON raises a parse error carrying the
// line/column from the reader; a value outside its registered range raises a
// validation error naming the field.
ExperimentConfig parse_config(const std::string& text);

// Canonical JSON (sorted keys); parse(serialize(c)) equals c field by field.
std::string serialize_config(const ExperimentConfig& cfg);

// name=value override, same validation as the config file.
void apply_tolerance_override(ExperimentConfig& cfg, const std::string& spec);

} // namespace frihls
