#pragma once
// Per-command check batteries and the experiment driver. A battery runs its
// module's contracted invariants, collects a report table, and returns a
// status: 0 all held, 1 violation (the violating record stays in the table),
// 2 resource budget exceeded (partial table, truncated flag set).

#include <string>
#include <vector>

#include "frihls/config.hpp"
#include "frihls/report.hpp"

namespace frihls {

struct BatteryResult {
    int status = 0;
    bool truncated = false;
    Csv table;
    std::string json_override; // when set, used verbatim for format=json
    std::vector<std::string> lines;
};

BatteryResult run_battery(const ExperimentConfig& cfg);

// Dispatches, writes <command>-<seed>-<timestamp>.{csv|json} into the output
// directory (FRIHLS_OUT overrides the config), prints the summary lines, and
// returns the exit status.
int run_experiment(const ExperimentConfig& cfg);

} // namespace frihls
