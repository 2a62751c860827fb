// Acceptance runner: prints one PASS/FAIL line per criterion and exits nonzero if any fails.
//
//   antijam_acceptance [--workdir DIR] [--epochs N] [--only 1,2,...]
//
// Criteria 1-4 train full-length runs with the default configuration (about 6 minutes each on
// one core). --epochs shortens them for smoke testing; results are then not meaningful.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <set>
#include <string>
#include <vector>

#include "antijam/assessment.hpp"
#include "antijam/checkpoint.hpp"
#include "antijam/config.hpp"
#include "antijam/darla.hpp"
#include "antijam/env.hpp"
#include "antijam/experiment.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace antijam;

namespace {

struct Options {
    fs::path workdir = "acceptance_runs";
    std::size_t epochs = 0;  // 0 = configured default
    std::set<int> only;
};

struct Line {
    int id;
    std::string name;
    bool pass;
    std::string detail;
};

std::vector<Line> g_lines;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
    g_lines.push_back({id, name, pass, detail});
    std::printf("[%s] criterion %d: %s -- %s\n", pass ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
    std::fflush(stdout);
}

void info(const std::string& text) {
    std::printf("       info: %s\n", text.c_str());
    std::fflush(stdout);
}

std::string join(const std::vector<CriterionResult>& rs) {
    std::string out;
    for (const auto& r : rs) {
        if (!out.empty()) out += "; ";
        out += r.name + (r.pass ? " ok " : " FAILED ") + "(" + r.detail + ")";
    }
    return out;
}

RunResult train_default(JammerKind kind, const Options& opt) {
    ExperimentConfig cfg;
    cfg.jammer.kind = kind;
    if (opt.epochs) cfg.epochs = opt.epochs;
    cfg.output_dir = (opt.workdir / to_string(kind)).string();
    const auto t0 = std::chrono::steady_clock::now();
    auto result = run_experiment(cfg);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%s: %zu epochs in %.0f s, trailing %.4f, greedy %.4f, random %.4f, best fixed %.4f",
                  to_string(kind).c_str(), cfg.epochs, secs, result.summary.train_throughput, result.greedy.throughput,
                  result.random.throughput, result.best_fixed.throughput);
    info(buf);
    return result;
}

bool all_pass(const std::vector<CriterionResult>& rs) {
    if (rs.empty()) return false;
    for (const auto& r : rs)
        if (!r.pass) return false;
    return true;
}

std::size_t free_channel_count(const EnvConfig& env, const std::vector<Emission>& jams) {
    std::size_t n = 0;
    for (std::size_t a = 0; a < env.channels.count; ++a) {
        bool hit = false;
        for (const auto& j : jams)
            hit |= oracle::bands_overlap(env.channels.center(a), env.user.bandwidth_mhz, j.center_mhz,
                                         j.waveform.bandwidth_mhz);
        n += !hit;
    }
    return n;
}

void criterion1(const Options& opt) {
    const auto r = train_default(JammerKind::comb, opt);
    const EnvConfig env = ExperimentConfig{}.env();
    const std::size_t free = free_channel_count(env, comb_emissions(env.jammers[0]));
    info("comb overlap enumeration: " + std::to_string(free) + "/9 channels clear of the comb tones");
    report(1, "comb jamming convergence", all_pass(r.criteria), join(r.criteria));
}

void criterion2(const Options& opt) {
    const auto r = train_default(JammerKind::sweep, opt);
    info("sweep: expected random-policy throughput by slot enumeration is 6/9 = 0.6667");
    report(2, "sweep jamming", all_pass(r.criteria), join(r.criteria));
}

void criterion3(const Options& opt) {
    const auto r = train_default(JammerKind::random, opt);
    report(3, "random jamming", all_pass(r.criteria), join(r.criteria));
}

void criterion4(const Options& opt) {
    const auto r = train_default(JammerKind::intelligent, opt);
    report(4, "intelligent jamming", all_pass(r.criteria), join(r.criteria));
}

void criterion5() {
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) worst = std::max(worst, gradient_check(seed));
    double weakest_fault = INFINITY;
    const LayerFault faults[] = {LayerFault::conv1, LayerFault::conv2, LayerFault::fc1, LayerFault::fc2};
    for (LayerFault f : faults) weakest_fault = std::min(weakest_fault, gradient_check(0, f));
    char buf[160];
    std::snprintf(buf, sizeof(buf), "max rel error %.3e <= 1e-4 over 20 seeds; smallest faulted error %.3e > 1e-2",
                  worst, weakest_fault);
    report(5, "gradient correctness", worst <= 1e-4 && weakest_fault > 1e-2, buf);
}

void criterion6() {
    Rng rng(2026);
    std::uniform_real_distribution<double> center(0.0, 20.0);
    std::uniform_real_distribution<double> power(-10.0, 40.0);
    const RewardConfig reward;
    const WaveformSpec user_wave{4.0, 0.3, 0.0};
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const Emission user{2.0 + 2.0 * static_cast<double>(rng() % 9), user_wave};
        const Emission jam{center(rng), WaveformSpec{4.0, 0.3, power(rng)}};
        const double closed = compute_sinr(user, std::vector<Emission>{jam}, reward);
        const double quad = oracle::quad_sinr_db(user, {jam}, reward.noise_power_dbm);
        worst = std::max(worst, std::abs(closed - quad));
    }
    char buf[128];
    std::snprintf(buf, sizeof(buf), "max |closed form - 1 kHz quadrature| = %.2e dB over 1000 placements", worst);
    report(6, "SINR oracle equivalence", worst <= 0.1, buf);
}

void criterion7() {
    const RewardConfig cfg;
    const std::vector<double> clear(10, 100.0), jammed(10, -30.0);
    const double stay = epoch_reward(Action{3}, Action{3}, clear, 10, cfg);
    const double hop = epoch_reward(Action{3}, Action{5}, clear, 10, cfg);
    const double fail = epoch_reward(Action{3}, Action{3}, jammed, 10, cfg);
    char buf[128];
    std::snprintf(buf, sizeof(buf), "stay %.17g, switch %.17g, jammed %.17g", stay, hop, fail);
    report(7, "reward examples", stay == 1.0 && hop == 0.8 && fail == 0.0, buf);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

void criterion8(const Options& opt) {
    ExperimentConfig cfg;
    cfg.jammer.kind = JammerKind::random;
    cfg.epochs = 700;  // crosses the replay warm-up so network updates are exercised
    cfg.eval_epochs = 100;
    cfg.seed = 99;
    bool same = true;
    std::string detail;
    std::vector<std::string> metrics, checkpoints;
    for (const char* tag : {"determinism_a", "determinism_b"}) {
        cfg.output_dir = (opt.workdir / tag).string();
        run_experiment(cfg);
        metrics.push_back(slurp(opt.workdir / tag / run_files::kMetrics));
        checkpoints.push_back(slurp(opt.workdir / tag / run_files::kCheckpoint));
    }
    same = metrics[0] == metrics[1] && checkpoints[0] == checkpoints[1] && !metrics[0].empty() &&
           !checkpoints[0].empty();
    detail = "metrics.csv " + std::string(metrics[0] == metrics[1] ? "identical" : "DIFFER") + " (" +
             std::to_string(metrics[0].size()) + " bytes), checkpoint.bin " +
             (checkpoints[0] == checkpoints[1] ? "identical" : "DIFFER") + " (" +
             std::to_string(checkpoints[0].size()) + " bytes)";
    report(8, "determinism", same, detail);
}

Options parse_args(int argc, char** argv) {
    Options opt;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        auto next = [&]() -> std::string {
            if (i + 1 >= argc) {
                std::fprintf(stderr, "missing value for %s\n", a.c_str());
                std::exit(1);
            }
            return argv[++i];
        };
        if (a == "--workdir") opt.workdir = next();
        else if (a == "--epochs") opt.epochs = std::stoul(next());
        else if (a == "--only") {
            std::string list = next();
            for (std::size_t pos = 0; pos < list.size();) {
                const auto comma = list.find(',', pos);
                opt.only.insert(std::stoi(list.substr(pos, comma - pos)));
                pos = comma == std::string::npos ? list.size() : comma + 1;
            }
        } else {
            std::fprintf(stderr, "usage: %s [--workdir DIR] [--epochs N] [--only 1,2,...]\n", argv[0]);
            std::exit(1);
        }
    }
    return opt;
}

}  // namespace

int main(int argc, char** argv) {
    const Options opt = parse_args(argc, argv);
    fs::create_directories(opt.workdir);
    auto wanted = [&](int id) { return opt.only.empty() || opt.only.count(id); };

    // Cheap criteria first so their verdicts appear without waiting for training.
    if (wanted(5)) criterion5();
    if (wanted(6)) criterion6();
    if (wanted(7)) criterion7();
    if (wanted(8)) criterion8(opt);
    if (wanted(1)) criterion1(opt);
    if (wanted(2)) criterion2(opt);
    if (wanted(3)) criterion3(opt);
    if (wanted(4)) criterion4(opt);

    std::size_t failed = 0;
    std::printf("\nsummary:\n");
    std::sort(g_lines.begin(), g_lines.end(), [](const Line& a, const Line& b) { return a.id < b.id; });
    for (const auto& l : g_lines) {
        std::printf("  %d %-28s %s\n", l.id, l.name.c_str(), l.pass ? "PASS" : "FAIL");
        failed += !l.pass;
    }
    std::printf("%zu/%zu criteria passed\n", g_lines.size() - failed, g_lines.size());
    return failed ? 1 : 0;
}
