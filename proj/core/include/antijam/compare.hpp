#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "antijam/assessment.hpp"

namespace antijam {

struct RunComparison {
    std::string name;
    RunSummary summary;
    double final_throughput_ma = 0.0;
    double mean_reward = 0.0;  // over the trailing window
    double max_action_probability = 0.0;
    std::vector<CriterionResult> criteria;

    bool pass() const;
};

/// Reads metrics.csv (required) and summary.json (optional) from a run directory.
RunComparison load_run(const std::filesystem::path& directory);

/// Plain-text table with one row per run and a PASS/FAIL verdict against the thresholds.
std::string compare_runs(std::span<const std::filesystem::path> directories);

}  // namespace antijam
