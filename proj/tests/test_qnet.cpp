#include <gtest/gtest.h>

#include <cmath>

#include "antijam/errors.hpp"
#include "antijam/qnet.hpp"
#include "antijam/random.hpp"
#include "oracles.hpp"

namespace antijam {
namespace {

StateTensor random_input(const QNetArch& arch, std::uint64_t seed) {
    Rng rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    StateTensor x{arch.input_rows, arch.input_cols, std::vector<double>(arch.input_rows * arch.input_cols)};
    for (double& v : x.values) v = u(rng);
    return x;
}

QNetworkParams with_random_biases(const QNetArch& arch, std::uint64_t seed) {
    auto p = init_params(arch, seed);
    Rng rng(seed + 1);
    std::uniform_real_distribution<double> b(-0.1, 0.1);
    for (Tensor* t : {&p.conv1_b, &p.conv2_b, &p.fc1_b, &p.fc2_b})
        for (double& v : t->values) v = b(rng);
    return p;
}

WaterfallState filled(double dbm) {
    WaterfallState s(200, 200);
    const std::vector<double> row(200, dbm);
    for (int i = 0; i < 200; ++i) s.push_row(row);
    return s;
}

TEST(QNetArch, DefaultGeometry) {
    const QNetArch a;
    EXPECT_EQ(a.conv1_rows(), 11u);
    EXPECT_EQ(a.conv2_rows(), 4u);
    EXPECT_EQ(a.flatten_size(), 512u);
    const auto p = QNetworkParams::zeros(a);
    EXPECT_EQ(p.parameter_count(), 16u * 64 + 16 + 32u * 16 * 16 + 32 + 256u * 512 + 256 + 9u * 256 + 9);
}

TEST(Preprocess, MapsDbmRangeOntoUnitInterval) {
    const auto lo = preprocess(filled(-100.0), 4);
    const auto hi = preprocess(filled(35.0), 4);
    const auto below = preprocess(filled(-130.0), 4);
    EXPECT_EQ(lo.rows, 50u);
    EXPECT_EQ(lo.cols, 50u);
    for (double v : lo.values) EXPECT_DOUBLE_EQ(v, 0.0);
    for (double v : hi.values) EXPECT_DOUBLE_EQ(v, 1.0);
    for (double v : below.values) EXPECT_DOUBLE_EQ(v, 0.0);
}

TEST(Preprocess, AveragesBlocks) {
    WaterfallState s(4, 4);
    s.push_row(std::vector<double>{-100, -100, 35, 35});
    s.push_row(std::vector<double>{-100, 35, 35, 35});
    const auto x = preprocess(s, 2);
    ASSERT_EQ(x.values.size(), 4u);
    EXPECT_DOUBLE_EQ(x.at(0, 0), 0.25);
    EXPECT_DOUBLE_EQ(x.at(0, 1), 1.0);
    const auto full = preprocess(s, 1);
    EXPECT_EQ(full.rows, 4u);
    EXPECT_DOUBLE_EQ(full.at(0, 1), 1.0);
}

TEST(Preprocess, DecimationMustDivideTheGrid) {
    EXPECT_THROW(preprocess(filled(0.0), 3), ConfigError);
    EXPECT_THROW(preprocess(filled(0.0), 0), ConfigError);
}

TEST(InitParams, DeterministicBoundedAndZeroBias) {
    const QNetArch arch;
    const auto a = init_params(arch, 11);
    EXPECT_EQ(a, init_params(arch, 11));
    EXPECT_NE(a, init_params(arch, 12));
    const double fan_ins[] = {64, 256, 512, 256};
    const Tensor* weights[] = {&a.conv1_w, &a.conv2_w, &a.fc1_w, &a.fc2_w};
    for (int i = 0; i < 4; ++i) {
        const double bound = std::sqrt(2.0 / fan_ins[i]);
        for (double w : weights[i]->values) EXPECT_LE(std::abs(w), bound);
    }
    for (const Tensor* b : {&a.conv1_b, &a.conv2_b, &a.fc1_b, &a.fc2_b})
        for (double v : b->values) EXPECT_EQ(v, 0.0);
}

TEST(Forward, ZeroParamsGiveZeroQ) {
    const QNetArch arch;
    const auto q = forward(QNetworkParams::zeros(arch), random_input(arch, 1));
    ASSERT_EQ(q.size(), 9u);
    for (double v : q) EXPECT_EQ(v, 0.0);
}

TEST(Forward, OutputBiasShiftsAndScalingIsLinear) {
    const QNetArch arch;
    auto p = init_params(arch, 3);
    const auto x = random_input(arch, 4);
    const auto base = forward(p, x);
    for (double& v : p.fc2_b.values) v += 1.5;
    const auto shifted = forward(p, x);
    for (std::size_t i = 0; i < 9; ++i) EXPECT_NEAR(shifted[i], base[i] + 1.5, 1e-12);
    for (double& v : p.fc2_b.values) v -= 1.5;
    for (double& v : p.fc2_w.values) v *= 2.0;
    const auto doubled = forward(p, x);
    for (std::size_t i = 0; i < 9; ++i) EXPECT_NEAR(doubled[i], 2.0 * base[i], 1e-12);
}

TEST(Forward, MatchesNaiveReference) {
    for (const QNetArch& arch : {QNetArch{}, QNetArch::reduced()}) {
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const auto p = with_random_biases(arch, seed);
            const auto x = random_input(arch, seed + 100);
            const auto q = forward(p, x);
            const auto ref = oracle::naive_forward(p, x);
            for (std::size_t i = 0; i < q.size(); ++i) EXPECT_NEAR(q[i], ref[i], 1e-10);
        }
    }
}

TEST(Forward, IsPureAndChecksShape) {
    const QNetArch arch;
    const auto p = init_params(arch, 5);
    const auto x = random_input(arch, 6);
    EXPECT_EQ(forward(p, x), forward(p, x));
    EXPECT_THROW(forward(p, random_input(QNetArch::reduced(), 1)), StructuralError);
}

TEST(Loss, SquaredTdError) {
    const QNetArch arch;
    const auto p = QNetworkParams::zeros(arch);
    const auto x = random_input(arch, 1);
    const TrainingSample zero[] = {{&x, 0, 0.0}};
    EXPECT_EQ(loss(p, zero), 0.0);
    const TrainingSample half[] = {{&x, 2, 0.5}, {&x, 3, -0.5}};
    EXPECT_DOUBLE_EQ(loss(p, half), 0.25);
    EXPECT_THROW(loss(p, std::span<const TrainingSample>{}), UsageError);
}

TEST(Backward, ZeroResidualGivesZeroGradient) {
    const QNetArch arch = QNetArch::reduced();
    const auto p = with_random_biases(arch, 2);
    const auto x = random_input(arch, 3);
    const TrainingSample batch[] = {{&x, 4, forward(p, x)[4]}};
    const auto g = backward(p, batch);
    EXPECT_NEAR(g.loss, 0.0, 1e-20);
    for (const Tensor* t : g.gradients.tensors())
        for (double v : t->values) EXPECT_EQ(v, 0.0);
}

TEST(Backward, OnlySelectedActionRowsReceiveGradient) {
    const QNetArch arch;
    const auto p = with_random_biases(arch, 7);
    const auto x = random_input(arch, 8);
    const TrainingSample batch[] = {{&x, 2, 1.0}, {&x, 5, -1.0}};
    const auto g = backward(p, batch);
    for (std::size_t a = 0; a < 9; ++a) {
        const bool used = a == 2 || a == 5;
        EXPECT_EQ(g.gradients.fc2_b.values[a] != 0.0, used) << a;
        if (!used)
            for (std::size_t u = 0; u < arch.fc1_units; ++u) EXPECT_EQ(g.gradients.fc2_w.values[a * arch.fc1_units + u], 0.0);
    }
}

TEST(Backward, MatchesFiniteDifferencesOnFullNetwork) {
    const QNetArch arch;
    auto p = with_random_biases(arch, 21);
    const auto x1 = random_input(arch, 22);
    const auto x2 = random_input(arch, 23);
    const TrainingSample batch[] = {{&x1, 1, 0.7}, {&x2, 6, -0.3}};
    const auto g = backward(p, batch);
    Rng rng(24);
    auto tensors = p.tensors();
    const auto grads = g.gradients.tensors();
    for (std::size_t t = 0; t < kParamTensorCount; ++t) {
        for (int k = 0; k < 8; ++k) {
            const std::size_t i = rng() % tensors[t]->size();
            double& w = tensors[t]->values[i];
            const double orig = w;
            w = orig + 1e-5;
            const double up = loss(p, batch);
            w = orig - 1e-5;
            const double down = loss(p, batch);
            w = orig;
            const double fd = (up - down) / 2e-5;
            const double an = grads[t]->values[i];
            EXPECT_LE(std::abs(fd - an) / std::max({std::abs(fd), std::abs(an), 1e-6}), 1e-4)
                << QNetworkParams::tensor_names()[t] << "[" << i << "]";
        }
    }
}

TEST(SgdStep, UpdatesAgainstGradient) {
    const QNetArch arch = QNetArch::reduced();
    auto p = QNetworkParams::zeros(arch);
    p.fc2_b.values[0] = 1.0;
    auto g = QNetworkParams::zeros(arch);
    g.fc2_b.values[0] = 2.0;
    sgd_step(p, g, 0.1);
    EXPECT_DOUBLE_EQ(p.fc2_b.values[0], 0.8);
    const auto before = p;
    sgd_step(p, g, 0.0);
    EXPECT_EQ(p, before);
    EXPECT_THROW(sgd_step(p, QNetworkParams::zeros(QNetArch{}), 0.1), StructuralError);
}

TEST(GradientCheck, PassesAcrossSeeds) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) EXPECT_LE(gradient_check(seed), 1e-4) << seed;
}

TEST(GradientCheck, DetectsEveryInjectedFault) {
    for (LayerFault f : {LayerFault::conv1, LayerFault::conv2, LayerFault::fc1, LayerFault::fc2})
        EXPECT_GT(gradient_check(3, f), 1e-2) << static_cast<int>(f);
}

TEST(GradientCheck, IsRepeatable) {
    EXPECT_EQ(gradient_check(9), gradient_check(9));
}

TEST(Training, SmallStepReducesLoss) {
    const QNetArch arch = QNetArch::reduced();
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto p = with_random_biases(arch, seed);
        const auto x = random_input(arch, seed + 50);
        const TrainingSample batch[] = {{&x, seed % 9, 1.0}};
        const auto g = backward(p, batch);
        if (g.loss == 0.0) continue;
        sgd_step(p, g.gradients, 1e-5);
        EXPECT_LT(loss(p, batch), g.loss);
    }
}

TEST(Training, StaysFiniteOverManyUpdates) {
    const QNetArch arch = QNetArch::reduced();
    auto p = init_params(arch, 1);
    Rng rng(2);
    std::vector<StateTensor> xs;
    for (int i = 0; i < 32; ++i) xs.push_back(random_input(arch, 1000 + i));
    std::uniform_real_distribution<double> target(-1.0, 1.0);
    for (int step = 0; step < 10000; ++step) {
        std::vector<TrainingSample> batch;
        for (int b = 0; b < 8; ++b) batch.push_back({&xs[rng() % xs.size()], rng() % 9, target(rng)});
        sgd_step(p, backward(p, batch).gradients, 1e-3);
    }
    EXPECT_TRUE(p.all_finite());
}

TEST(Training, RegressionWithoutBootstrapConverges) {
    // With gamma = 0 the target is the reward, so fixed per-action rewards must be learned exactly.
    const QNetArch arch = QNetArch::reduced();
    auto p = init_params(arch, 4);
    const auto x = random_input(arch, 5);
    const double reward[9] = {1.0, 0.8, 0.0, -0.2, 1.0, 0.5, 0.0, 0.8, 0.3};
    Rng rng(6);
    for (int step = 0; step < 5000; ++step) {
        std::vector<TrainingSample> batch;
        for (int b = 0; b < 16; ++b) {
            const std::size_t a = rng() % 9;
            batch.push_back({&x, a, reward[a]});
        }
        sgd_step(p, backward(p, batch).gradients, 1e-2);
    }
    const auto q = forward(p, x);
    for (std::size_t a = 0; a < 9; ++a) EXPECT_NEAR(q[a], reward[a], 1e-2) << a;
}

}  // namespace
}  // namespace antijam
