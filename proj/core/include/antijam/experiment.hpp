#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "antijam/assessment.hpp"
#include "antijam/config.hpp"
#include "antijam/darla.hpp"

namespace antijam {

/// File names written into a run directory.
namespace run_files {
inline constexpr const char* kMetrics = "metrics.csv";
inline constexpr const char* kSummary = "summary.json";
inline constexpr const char* kCheckpoint = "checkpoint.bin";
inline constexpr const char* kWaterfallInitial = "waterfall_initial.pgm";
inline constexpr const char* kWaterfallMid = "waterfall_mid.pgm";
inline constexpr const char* kWaterfallFinal = "waterfall_final.pgm";
}  // namespace run_files

struct RunResult {
    std::filesystem::path directory;
    std::vector<std::filesystem::path> files;
    TrainingReport report;
    EvalMetrics greedy;
    EvalMetrics random;
    EvalMetrics best_fixed;
    std::size_t best_fixed_action = 0;
    RunSummary summary;
    std::vector<CriterionResult> criteria;
};

/// Seed shared by every evaluation policy of a run.
std::uint64_t evaluation_seed(const ExperimentConfig& cfg);

/// Trains, evaluates greedy / random / best fixed-channel policies and writes the run directory:
/// metrics.csv, summary.json, checkpoint.bin and waterfall snapshots after epochs 0, T/2 and T.
/// Throws ConfigError for invalid configs and IoError (with the path) for file failures.
RunResult run_experiment(const ExperimentConfig& cfg);

}  // namespace antijam
