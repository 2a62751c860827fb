#include "antijam/experiment.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "antijam/checkpoint.hpp"
#include "antijam/errors.hpp"
#include "antijam/metrics.hpp"
#include "antijam/pgm.hpp"

namespace antijam {

namespace {

nlohmann::json to_json(const EvalMetrics& m) {
    return {{"epochs", m.epochs},
            {"throughput", m.throughput},
            {"mean_reward", m.mean_reward},
            {"action_histogram", m.action_histogram}};
}

}  // namespace

std::uint64_t evaluation_seed(const ExperimentConfig& cfg) { return derive_seed(cfg.seed, 100); }

RunResult run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    namespace fs = std::filesystem;
    RunResult result;
    result.directory = cfg.output_dir;
    std::error_code ec;
    fs::create_directories(result.directory, ec);
    if (ec) throw IoError("cannot create run directory " + result.directory.string() + ": " + ec.message());

    const EnvConfig env = cfg.env();
    const std::size_t mid = cfg.epochs / 2;
    const auto path_of = [&](const char* name) { return result.directory / name; };
    auto snapshot = [&](std::size_t epoch, const WaterfallState& state) {
        if (epoch == 0) export_waterfall_pgm(state, path_of(run_files::kWaterfallInitial));
        if (epoch == mid) export_waterfall_pgm(state, path_of(run_files::kWaterfallMid));
        if (epoch == cfg.epochs) export_waterfall_pgm(state, path_of(run_files::kWaterfallFinal));
    };
    result.report = train(env, cfg.train, cfg.epochs, cfg.seed, snapshot);

    const auto rows = to_metrics_rows(result.report);
    write_metrics_csv(rows, path_of(run_files::kMetrics));
    save_checkpoint(result.report.params, path_of(run_files::kCheckpoint));

    const std::uint64_t eval_seed = evaluation_seed(cfg);
    const std::size_t d = cfg.train.decimation;
    result.greedy = evaluate(&result.report.params, env, d, cfg.eval_epochs, Policy::greedy(), eval_seed);
    result.random = evaluate(nullptr, env, d, cfg.eval_epochs, Policy::random(), eval_seed);
    for (std::size_t a = 0; a < env.channels.count; ++a) {
        auto m = evaluate(nullptr, env, d, cfg.eval_epochs, Policy::fixed(a), eval_seed);
        if (a == 0 || m.throughput > result.best_fixed.throughput) {
            result.best_fixed = std::move(m);
            result.best_fixed_action = a;
        }
    }

    const std::size_t window = thresholds::kConvergedWindow;
    RunSummary& s = result.summary;
    if (cfg.jammer_enabled) s.jammer = cfg.jammer.kind;
    s.train_throughput = result.report.trailing_throughput(window);
    s.final_histogram = result.report.trailing_histogram(window, env.channels.count);
    if (!result.report.records.empty()) {
        const std::size_t n = std::min(window, result.report.records.size());
        double sum = 0.0;
        for (std::size_t i = result.report.records.size() - n; i < result.report.records.size(); ++i)
            sum += result.report.records[i].reward;
        s.train_mean_reward = sum / static_cast<double>(n);
    }
    if (cfg.eval_epochs > 0) {
        s.greedy_throughput = result.greedy.throughput;
        s.random_throughput = result.random.throughput;
    }
    result.criteria = assess_run(s);

    nlohmann::json criteria = nlohmann::json::array();
    for (const auto& c : result.criteria)
        criteria.push_back({{"criterion", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    const double max_p = s.final_histogram.empty()
                             ? 0.0
                             : *std::max_element(s.final_histogram.begin(), s.final_histogram.end());
    nlohmann::json summary = {
        {"jammer", cfg.jammer_enabled ? to_string(cfg.jammer.kind) : "none"},
        {"seed", cfg.seed},
        {"epochs", cfg.epochs},
        {"eval_epochs", cfg.eval_epochs},
        {"evaluation_seed", eval_seed},
        {"train",
         {{"trailing_window", window},
          {"trailing_throughput", s.train_throughput},
          {"trailing_mean_reward", s.train_mean_reward},
          {"final_throughput_ma", rows.empty() ? 0.0 : rows.back().throughput_ma},
          {"trailing_action_histogram", s.final_histogram},
          {"max_action_probability", max_p},
          {"action_entropy", entropy(s.final_histogram)},
          {"action_histogram", result.report.action_histogram}}},
        {"eval",
         {{"greedy", to_json(result.greedy)},
          {"random", to_json(result.random)},
          {"best_fixed", to_json(result.best_fixed)},
          {"best_fixed_action", result.best_fixed_action}}},
        {"criteria", criteria},
    };
    {
        const fs::path p = path_of(run_files::kSummary);
        std::ofstream out(p, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open summary for writing: " + p.string());
        out << summary.dump(2) << '\n';
        if (!out) throw IoError("failed writing summary: " + p.string());
    }

    for (const char* name : {run_files::kMetrics, run_files::kSummary, run_files::kCheckpoint,
                             run_files::kWaterfallInitial, run_files::kWaterfallMid, run_files::kWaterfallFinal})
        result.files.push_back(path_of(name));
    return result;
}

}  // namespace antijam
