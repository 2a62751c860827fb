#include <gtest/gtest.h>

#include <map>

#include "antijam/env.hpp"
#include "antijam/errors.hpp"
#include "antijam/jammers.hpp"
#include "oracles.hpp"

namespace antijam {
namespace {

JammerConfig kind(JammerKind k) {
    JammerConfig cfg;
    cfg.kind = k;
    return cfg;
}

TEST(SweepJammer, CenterFollowsWrappedLinearTrajectory) {
    const BandConfig band;
    const auto cfg = kind(JammerKind::sweep);
    EXPECT_DOUBLE_EQ(sweep_emissions(0, cfg, band)[0].center_mhz, 2.0);
    EXPECT_DOUBLE_EQ(sweep_emissions(10, cfg, band)[0].center_mhz, 12.0);
    EXPECT_DOUBLE_EQ(sweep_emissions(19, cfg, band)[0].center_mhz, 1.0);
}

TEST(SweepJammer, PeriodIsTwentySlots) {
    const BandConfig band;
    const auto cfg = kind(JammerKind::sweep);
    for (std::int64_t t = 0; t < 200; ++t) {
        const auto a = sweep_emissions(t, cfg, band)[0];
        const auto b = sweep_emissions(t + 20, cfg, band)[0];
        EXPECT_DOUBLE_EQ(a.center_mhz, b.center_mhz);
        EXPECT_GE(a.center_mhz, band.lo_mhz);
        EXPECT_LT(a.center_mhz, band.hi_mhz);
        EXPECT_DOUBLE_EQ(a.waveform.bandwidth_mhz, 4.0);
    }
}

TEST(CombJammer, ThreeStaticTones) {
    const auto e = comb_emissions(kind(JammerKind::comb));
    ASSERT_EQ(e.size(), 3u);
    EXPECT_DOUBLE_EQ(e[0].center_mhz, 2.0);
    EXPECT_DOUBLE_EQ(e[1].center_mhz, 10.0);
    EXPECT_DOUBLE_EQ(e[2].center_mhz, 18.0);
    for (const auto& x : e) EXPECT_DOUBLE_EQ(x.waveform.power_dbm, 30.0);
}

TEST(CombJammer, OverlappingUserChannelsFail) {
    const auto comb = comb_emissions(kind(JammerKind::comb));
    const RewardConfig reward;
    const ChannelPlan plan;
    for (std::size_t a : {1u, 3u}) {  // 4 MHz overlaps the 2 MHz tone, 8 MHz the 10 MHz tone
        const Emission user{plan.center(a), WaveformSpec{4.0, 0.3, 0.0}};
        const double oracle_sinr = oracle::quad_sinr_db(user, comb, reward.noise_power_dbm);
        EXPECT_LT(oracle_sinr, reward.sinr_threshold_db);
        EXPECT_NEAR(compute_sinr(user, comb, reward), oracle_sinr, 0.01);
    }
}

TEST(RandomJammer, ConstantWithinADwell) {
    const BandConfig band;
    RandomJammer j(kind(JammerKind::random));
    Rng rng(3);
    for (std::int64_t dwell = 0; dwell < 50; ++dwell) {
        const double first = j.emissions(dwell * 20, band, rng)[0].center_mhz;
        for (std::int64_t s = 1; s < 20; ++s) EXPECT_EQ(j.emissions(dwell * 20 + s, band, rng)[0].center_mhz, first);
    }
}

TEST(RandomJammer, GridCentersAreUniform) {
    const BandConfig band;
    RandomJammer j(kind(JammerKind::random));
    Rng rng(2024);
    std::map<double, int> counts;
    constexpr int kDwells = 10000;
    for (std::int64_t d = 0; d < kDwells; ++d) ++counts[j.emissions(d * 20, band, rng)[0].center_mhz];
    ASSERT_EQ(counts.size(), 5u);
    for (const auto& [center, n] : counts) EXPECT_NEAR(n / static_cast<double>(kDwells), 0.2, 0.02) << center;
}

TEST(RandomJammer, SameSeedSameSequence) {
    const BandConfig band;
    RandomJammer a(kind(JammerKind::random)), b(kind(JammerKind::random));
    Rng ra(9), rb(9);
    for (std::int64_t t = 0; t < 2000; ++t)
        EXPECT_EQ(a.emissions(t, band, ra)[0].center_mhz, b.emissions(t, band, rb)[0].center_mhz);
}

TEST(IntelligentJammer, CountsObservations) {
    const ChannelPlan plan;
    IntelligentJammer j(kind(JammerKind::intelligent), plan.centers(), 10.0);
    for (std::size_t a : {0u, 0u, 1u}) j.observe(a);  // centers 2, 2, 4 MHz
    EXPECT_EQ(j.counts()[0], 2u);
    EXPECT_EQ(j.counts()[1], 1u);
    EXPECT_DOUBLE_EQ(j.target_mhz(), 2.0);
}

TEST(IntelligentJammer, WindowEvictsOldest) {
    auto cfg = kind(JammerKind::intelligent);
    cfg.window_epochs = 3;
    IntelligentJammer j(cfg, ChannelPlan{}.centers(), 10.0);
    for (std::size_t a : {5u, 5u, 2u, 2u}) j.observe(a);
    EXPECT_EQ(j.observations(), 3u);
    EXPECT_EQ(j.counts()[5], 1u);
    EXPECT_EQ(j.counts()[2], 2u);
}

TEST(IntelligentJammer, EmptyWindowJamsBandMiddle) {
    IntelligentJammer j(kind(JammerKind::intelligent), ChannelPlan{}.centers(), 10.0);
    for (auto c : j.counts()) EXPECT_EQ(c, 0u);
    EXPECT_DOUBLE_EQ(j.emissions()[0].center_mhz, 10.0);
}

TEST(IntelligentJammer, ArgmaxAndLowestFrequencyTieBreak) {
    const ChannelPlan plan;
    IntelligentJammer j(kind(JammerKind::intelligent), plan.centers(), 10.0);
    for (int i = 0; i < 5; ++i) j.observe(0);  // 2 MHz x5
    for (int i = 0; i < 3; ++i) j.observe(4);  // 10 MHz x3
    EXPECT_DOUBLE_EQ(j.emissions()[0].center_mhz, 2.0);

    IntelligentJammer tie(kind(JammerKind::intelligent), plan.centers(), 10.0);
    for (int i = 0; i < 3; ++i) tie.observe(3);  // 8 MHz
    for (int i = 0; i < 3; ++i) tie.observe(1);  // 4 MHz
    EXPECT_DOUBLE_EQ(tie.emissions()[0].center_mhz, 4.0);
}

TEST(IntelligentJammer, OutputDependsOnlyOnWindow) {
    auto cfg = kind(JammerKind::intelligent);
    cfg.window_epochs = 4;
    IntelligentJammer a(cfg, ChannelPlan{}.centers(), 10.0), b(cfg, ChannelPlan{}.centers(), 10.0);
    for (std::size_t x : {8u, 8u, 8u, 1u, 6u, 6u, 7u}) a.observe(x);
    for (std::size_t x : {6u, 1u, 6u, 7u}) b.observe(x);  // same multiset as a's window
    EXPECT_DOUBLE_EQ(a.target_mhz(), b.target_mhz());
}

TEST(Jammer, ParsesKindsAndRejectsUnknown) {
    EXPECT_EQ(parse_jammer_kind("sweep"), JammerKind::sweep);
    EXPECT_EQ(parse_jammer_kind("intelligent"), JammerKind::intelligent);
    EXPECT_EQ(to_string(JammerKind::random), "random");
    EXPECT_THROW(parse_jammer_kind("reactive"), ConfigError);
}

}  // namespace
}  // namespace antijam
