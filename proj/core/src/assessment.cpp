#include "antijam/assessment.hpp"

#include <algorithm>
#include <cstdio>

#include "antijam/darla.hpp"

namespace antijam {

namespace {

std::string fmt(const char* pattern, double a, double b) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), pattern, a, b);
    return buf;
}

}  // namespace

std::vector<CriterionResult> assess_run(const RunSummary& run) {
    using namespace thresholds;
    std::vector<CriterionResult> out;
    if (!run.jammer) return out;
    const auto& greedy = run.greedy_throughput;
    const auto& random = run.random_throughput;

    switch (*run.jammer) {
        case JammerKind::comb:
            out.push_back({"comb trailing throughput", run.train_throughput >= kCombThroughput,
                           fmt("%.4f >= %.2f", run.train_throughput, kCombThroughput)});
            if (random) {
                out.push_back({"comb random baseline",
                               std::abs(*random - kCombRandomBaseline) <= kCombRandomTolerance,
                               fmt("|%.4f - 4/9| <= %.2f", *random, kCombRandomTolerance)});
            }
            break;
        case JammerKind::sweep:
            if (greedy) {
                out.push_back({"sweep converged throughput", *greedy >= kSweepThroughput,
                               fmt("%.4f >= %.2f", *greedy, kSweepThroughput)});
                if (random) {
                    out.push_back({"sweep gain over random", *greedy >= kSweepRandomRatio * *random,
                                   fmt("%.4f >= 1.5 x %.4f", *greedy, *random)});
                }
            }
            break;
        case JammerKind::random:
            if (greedy && random) {
                out.push_back({"random-jammer gap over random policy", *greedy - *random >= kRandomJammerGap,
                               fmt("%.4f - %.4f >= 0.15", *greedy, *random)});
            }
            break;
        case JammerKind::intelligent:
            if (!run.final_histogram.empty()) {
                const double max_p = *std::max_element(run.final_histogram.begin(), run.final_histogram.end());
                const double h = entropy(run.final_histogram);
                const double h_min =
                    kIntelligentEntropyFraction * std::log(static_cast<double>(run.final_histogram.size()));
                out.push_back({"intelligent max action probability", max_p <= kIntelligentMaxActionProbability,
                               fmt("%.4f <= %.2f", max_p, kIntelligentMaxActionProbability)});
                out.push_back({"intelligent action entropy", h >= h_min, fmt("%.4f >= %.4f", h, h_min)});
            }
            if (greedy && random) {
                out.push_back({"intelligent throughput vs random policy", *greedy >= *random,
                               fmt("%.4f >= %.4f", *greedy, *random)});
            }
            break;
    }
    return out;
}

}  // namespace antijam
