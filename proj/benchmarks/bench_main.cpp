#include <benchmark/benchmark.h>

#include <random>

#include "antijam/darla.hpp"
#include "antijam/env.hpp"
#include "antijam/qnet.hpp"
#include "antijam/spectrum.hpp"

namespace {

using namespace antijam;

StateTensor random_input(const QNetArch& arch) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    StateTensor x{arch.input_rows, arch.input_cols, std::vector<double>(arch.input_rows * arch.input_cols)};
    for (double& v : x.values) v = u(rng);
    return x;
}

void BM_RenderRow(benchmark::State& state) {
    const BandConfig band;
    const std::vector<Emission> e{{10.0, {4.0, 0.3, 0.0}}, {3.5, {4.0, 0.3, 30.0}}};
    for (auto _ : state) benchmark::DoNotOptimize(render_row(e, band, 2.5e-11));
}
BENCHMARK(BM_RenderRow);

void BM_EnvStep(benchmark::State& state) {
    EnvConfig cfg;
    cfg.jammers[0].kind = JammerKind::random;
    SpectrumEnv env(cfg);
    env.reset(1);
    std::size_t a = 0;
    for (auto _ : state) benchmark::DoNotOptimize(env.step(Action{a++ % 9}));
}
BENCHMARK(BM_EnvStep);

void BM_Preprocess(benchmark::State& state) {
    SpectrumEnv env(EnvConfig{});
    const auto& s = env.reset(1);
    for (auto _ : state) benchmark::DoNotOptimize(preprocess(s, 4));
}
BENCHMARK(BM_Preprocess);

void BM_Forward(benchmark::State& state) {
    const QNetArch arch;
    const auto p = init_params(arch, 1);
    const auto x = random_input(arch);
    for (auto _ : state) benchmark::DoNotOptimize(forward(p, x));
}
BENCHMARK(BM_Forward);

void BM_BackwardBatch(benchmark::State& state) {
    const QNetArch arch;
    const auto p = init_params(arch, 1);
    const auto x = random_input(arch);
    std::vector<TrainingSample> batch(static_cast<std::size_t>(state.range(0)));
    for (std::size_t i = 0; i < batch.size(); ++i) batch[i] = {&x, i % 9, 0.5};
    for (auto _ : state) benchmark::DoNotOptimize(backward(p, batch));
}
BENCHMARK(BM_BackwardBatch)->Arg(1)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
