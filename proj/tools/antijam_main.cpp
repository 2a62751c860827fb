// Command-line front end: train, eval, export, compare.
//
// Exit codes: 0 success, 1 configuration error, 2 runtime error.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "antijam/checkpoint.hpp"
#include "antijam/compare.hpp"
#include "antijam/config.hpp"
#include "antijam/darla.hpp"
#include "antijam/errors.hpp"
#include "antijam/experiment.hpp"
#include "antijam/pgm.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

struct CommonOptions {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<std::string> jammer;
    std::optional<std::size_t> epochs;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("--config", o.config_path, "Experiment config file (key = value)");
    cmd->add_option("--seed", o.seed, "Master seed");
    cmd->add_option("--out", o.out, "Output directory (or file for export)");
    cmd->add_option("--jammer", o.jammer, "Jammer override: sweep, comb, random, intelligent or none");
    cmd->add_option("--epochs", o.epochs, "Number of epochs");
}

antijam::ExperimentConfig resolve(const CommonOptions& o) {
    antijam::ExperimentConfig cfg;
    if (!o.config_path.empty()) cfg = antijam::load_config(o.config_path);
    if (o.seed) cfg.seed = *o.seed;
    if (o.out) cfg.output_dir = *o.out;
    if (o.jammer) antijam::set_config_value(cfg, "jammer.kind", *o.jammer);
    cfg.validate();
    return cfg;
}

antijam::Policy parse_policy(const std::string& text) {
    if (text == "greedy") return antijam::Policy::greedy();
    if (text == "random") return antijam::Policy::random();
    if (text.rfind("fixed:", 0) == 0) {
        try {
            return antijam::Policy::fixed(std::stoul(text.substr(6)));
        } catch (const std::exception&) {
        }
    }
    throw antijam::ConfigError("--policy", "expected greedy, random or fixed:<action>, got '" + text + "'");
}

void print_histogram(const std::vector<double>& h) {
    for (std::size_t a = 0; a < h.size(); ++a) std::printf("  action %zu: %.4f\n", a, h[a]);
}

int cmd_train(const CommonOptions& o) {
    auto cfg = resolve(o);
    if (o.epochs) cfg.epochs = *o.epochs;
    const auto result = antijam::run_experiment(cfg);
    std::printf("run directory: %s\n", result.directory.string().c_str());
    std::printf("trailing throughput: %.4f\n", result.summary.train_throughput);
    std::printf("greedy throughput:   %.4f (mean reward %.4f)\n", result.greedy.throughput, result.greedy.mean_reward);
    std::printf("random throughput:   %.4f\n", result.random.throughput);
    std::printf("best fixed (%zu):      %.4f\n", result.best_fixed_action, result.best_fixed.throughput);
    for (const auto& c : result.criteria)
        std::printf("%s %s (%s)\n", c.pass ? "PASS" : "FAIL", c.name.c_str(), c.detail.c_str());
    return kExitOk;
}

int cmd_eval(const CommonOptions& o, const std::string& checkpoint, const std::string& policy_text) {
    const auto cfg = resolve(o);
    const auto policy = parse_policy(policy_text);
    std::optional<antijam::QNetworkParams> params;
    if (!checkpoint.empty()) params = antijam::load_checkpoint(checkpoint);
    const std::size_t epochs = o.epochs.value_or(cfg.eval_epochs);
    const auto seed = o.seed ? *o.seed : antijam::evaluation_seed(cfg);
    const auto m = antijam::evaluate(params ? &*params : nullptr, cfg.env(), cfg.train.decimation, epochs,
                                     policy, seed);
    std::printf("policy: %s\nepochs: %zu\nthroughput: %.6f\nmean reward: %.6f\naction histogram:\n",
                policy.name().c_str(), m.epochs, m.throughput, m.mean_reward);
    print_histogram(m.action_histogram);
    return kExitOk;
}

int cmd_export(const CommonOptions& o) {
    const auto cfg = resolve(o);
    antijam::SpectrumEnv env(cfg.env());
    env.reset(cfg.seed);
    // Optionally let a random user transmit for a while so its blocks show up in the image.
    antijam::Rng rng(antijam::derive_seed(cfg.seed, 7));
    std::uniform_int_distribution<std::size_t> pick(0, env.num_actions() - 1);
    for (std::size_t t = 0; t < o.epochs.value_or(0); ++t) env.step(antijam::Action{pick(rng)});

    std::filesystem::path path = o.out ? *o.out : "waterfall.pgm";
    if (std::filesystem::is_directory(path)) path /= "waterfall.pgm";
    antijam::export_waterfall_pgm(env.state(), path);
    std::printf("wrote %s (%zux%zu)\n", path.string().c_str(), env.state().bins(), env.state().rows());
    return kExitOk;
}

int cmd_compare(const std::vector<std::string>& runs) {
    std::vector<std::filesystem::path> dirs(runs.begin(), runs.end());
    std::fputs(antijam::compare_runs(dirs).c_str(), stdout);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Anti-jamming channel selection from spectrum waterfalls with deep Q-learning"};
    app.require_subcommand(1);

    CommonOptions train_opts, eval_opts, export_opts;
    auto* train = app.add_subcommand("train", "Train, evaluate and write a run directory");
    add_common(train, train_opts);

    auto* eval = app.add_subcommand("eval", "Evaluate a policy without learning");
    add_common(eval, eval_opts);
    std::string checkpoint, policy = "greedy";
    eval->add_option("--checkpoint", checkpoint, "Checkpoint for the greedy policy");
    eval->add_option("--policy", policy, "greedy, random or fixed:<action>");

    auto* exporter = app.add_subcommand("export", "Write the sensed waterfall after reset as a PGM image");
    add_common(exporter, export_opts);

    auto* compare = app.add_subcommand("compare", "Tabulate finished runs against the pass thresholds");
    std::vector<std::string> runs;
    compare->add_option("runs", runs, "Run directories")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (*train) return cmd_train(train_opts);
        if (*eval) return cmd_eval(eval_opts, checkpoint, policy);
        if (*exporter) return cmd_export(export_opts);
        if (*compare) return cmd_compare(runs);
    } catch (const antijam::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const antijam::UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitRuntime;
}
