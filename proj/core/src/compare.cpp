#include "antijam/compare.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "antijam/darla.hpp"
#include "antijam/errors.hpp"
#include "antijam/experiment.hpp"
#include "antijam/metrics.hpp"

namespace antijam {

bool RunComparison::pass() const {
    return !criteria.empty() &&
           std::all_of(criteria.begin(), criteria.end(), [](const CriterionResult& c) { return c.pass; });
}

RunComparison load_run(const std::filesystem::path& directory) {
    const auto metrics_path = directory / run_files::kMetrics;
    if (!std::filesystem::exists(metrics_path)) throw IoError("missing metrics file: " + metrics_path.string());
    const auto rows = read_metrics_csv(metrics_path);

    RunComparison run;
    run.name = directory.filename().string();
    if (run.name.empty()) run.name = directory.parent_path().filename().string();

    const std::size_t window = std::min(thresholds::kConvergedWindow, rows.size());
    std::size_t actions = 0;
    for (const auto& r : rows) actions = std::max(actions, r.action + 1);
    std::vector<std::size_t> counts(actions, 0);
    double reward_sum = 0.0;
    for (std::size_t i = rows.size() - window; i < rows.size(); ++i) {
        reward_sum += rows[i].reward;
        ++counts[rows[i].action];
    }
    run.mean_reward = window ? reward_sum / static_cast<double>(window) : 0.0;
    run.final_throughput_ma = rows.empty() ? 0.0 : rows.back().throughput_ma;
    run.summary.train_throughput = run.final_throughput_ma;
    run.summary.train_mean_reward = run.mean_reward;
    run.summary.final_histogram = normalize_histogram(counts);

    const auto summary_path = directory / run_files::kSummary;
    if (std::ifstream in(summary_path); in) {
        nlohmann::json j;
        try {
            in >> j;
            const std::string jammer = j.at("jammer").get<std::string>();
            if (jammer != "none") run.summary.jammer = parse_jammer_kind(jammer);
            const auto& train = j.at("train");
            run.summary.train_throughput = train.at("trailing_throughput").get<double>();
            run.summary.final_histogram = train.at("trailing_action_histogram").get<std::vector<double>>();
            const auto& eval = j.at("eval");
            if (j.value("eval_epochs", 0) > 0) {
                run.summary.greedy_throughput = eval.at("greedy").at("throughput").get<double>();
                run.summary.random_throughput = eval.at("random").at("throughput").get<double>();
            }
        } catch (const nlohmann::json::exception& e) {
            throw IoError("malformed summary " + summary_path.string() + ": " + e.what());
        }
    }
    const auto& h = run.summary.final_histogram;
    run.max_action_probability = h.empty() ? 0.0 : *std::max_element(h.begin(), h.end());
    run.criteria = assess_run(run.summary);
    return run;
}

std::string compare_runs(std::span<const std::filesystem::path> directories) {
    if (directories.empty()) throw UsageError("compare: at least one run directory is required");
    std::string out;
    char line[512];
    std::snprintf(line, sizeof(line), "%-24s %-12s %10s %10s %10s %10s %11s %7s\n", "run", "jammer", "throughput",
                  "greedy", "random", "reward", "max_action", "verdict");
    out += line;
    std::vector<RunComparison> runs;
    for (const auto& dir : directories) runs.push_back(load_run(dir));
    for (const auto& r : runs) {
        auto opt = [](const std::optional<double>& v) {
            char buf[32];
            if (v) std::snprintf(buf, sizeof(buf), "%.4f", *v);
            else std::snprintf(buf, sizeof(buf), "-");
            return std::string(buf);
        };
        const char* verdict = r.criteria.empty() ? "n/a" : (r.pass() ? "PASS" : "FAIL");
        std::snprintf(line, sizeof(line), "%-24s %-12s %10.4f %10s %10s %10.4f %11.4f %7s\n", r.name.c_str(),
                      r.summary.jammer ? to_string(*r.summary.jammer).c_str() : "-", r.summary.train_throughput,
                      opt(r.summary.greedy_throughput).c_str(), opt(r.summary.random_throughput).c_str(),
                      r.mean_reward, r.max_action_probability, verdict);
        out += line;
    }
    for (const auto& r : runs) {
        for (const auto& c : r.criteria) {
            std::snprintf(line, sizeof(line), "  %s: %s %s (%s)\n", r.name.c_str(), c.pass ? "PASS" : "FAIL",
                          c.name.c_str(), c.detail.c_str());
            out += line;
        }
    }
    return out;
}

}  // namespace antijam
