#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "antijam/jammers.hpp"

namespace antijam {

/// Pass thresholds for converged runs, one group per jamming pattern.
namespace thresholds {
inline constexpr std::size_t kConvergedWindow = 2000;  // trailing epochs considered "converged"
inline constexpr double kCombThroughput = 0.90;
inline constexpr double kCombRandomBaseline = 4.0 / 9.0;
inline constexpr double kCombRandomTolerance = 0.05;
inline constexpr double kSweepThroughput = 0.75;
inline constexpr double kSweepRandomRatio = 1.5;
inline constexpr double kRandomJammerGap = 0.15;
inline constexpr double kIntelligentMaxActionProbability = 0.25;
inline constexpr double kIntelligentEntropyFraction = 0.90;
}  // namespace thresholds

/// Headline numbers of one finished run.
struct RunSummary {
    std::optional<JammerKind> jammer;
    double train_throughput = 0.0;  // mean over the trailing window of training
    double train_mean_reward = 0.0;
    std::optional<double> greedy_throughput;  // evaluation with epsilon = 0
    std::optional<double> random_throughput;  // uniform random policy baseline
    std::vector<double> final_histogram;      // action frequencies over the trailing window
};

struct CriterionResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Applies the thresholds matching the run's jammer. Checks whose inputs are absent are skipped.
std::vector<CriterionResult> assess_run(const RunSummary& run);

}  // namespace antijam
