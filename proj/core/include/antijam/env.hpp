#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "antijam/jammers.hpp"
#include "antijam/random.hpp"
#include "antijam/spectrum.hpp"

namespace antijam {

/// User channel grid: channel i is centered at first_center + i * step.
struct ChannelPlan {
    double first_center_mhz = 2.0;
    double step_mhz = 2.0;
    std::size_t count = 9;

    double center(std::size_t index) const {
        return first_center_mhz + step_mhz * static_cast<double>(index);
    }
    std::vector<double> centers() const;
    bool operator==(const ChannelPlan&) const = default;
};

/// A user decision: which channel to transmit on for the next epoch.
struct Action {
    std::size_t index = 0;
    bool operator==(const Action&) const = default;
};

struct RewardConfig {
    double rate = 1.0;               // R(a), identical for every action
    double switch_cost = 0.2;        // lambda as a fraction of R(a)
    double sinr_threshold_db = 10.0;
    double noise_power_dbm = -100.0; // total noise inside one user band

    void validate() const;
    bool operator==(const RewardConfig&) const = default;
};

struct EnvConfig {
    BandConfig band;
    ChannelPlan channels;
    WaveformSpec user{4.0, 0.3, 0.0};
    RewardConfig reward;
    std::vector<JammerConfig> jammers{JammerConfig{}};

    /// Flat noise density that puts `reward.noise_power_dbm` inside one user band.
    double noise_density() const { return dbm_to_mw(reward.noise_power_dbm) / user.bandwidth_mhz; }
    void validate() const;
    bool operator==(const EnvConfig&) const = default;
};

/// SINR in dB of `user` against `interferers` over the user's occupied band.
double compute_sinr(const Emission& user, std::span<const Emission> interferers,
                    const RewardConfig& cfg);

/// Per-epoch reward: success fraction times R, minus lambda * R when the channel changed.
double epoch_reward(const Action& action, const std::optional<Action>& previous,
                    std::span<const double> slot_sinr_db, std::size_t epoch_slots,
                    const RewardConfig& cfg);

struct StepOutcome {
    WaterfallState next_state;
    double reward = 0.0;
    bool switched = false;
    std::vector<bool> slot_success;
    std::vector<double> slot_sinr_db;

    double success_fraction() const;
};

/// The jammed radio environment seen by one transmitter-receiver pair.
///
/// Time advances in sensing slots on an absolute clock shared by all jammers. Each step
/// holds the user's channel for `band.epoch_slots` slots, rendering one waterfall row per
/// slot with the user's own emission included.
class SpectrumEnv {
public:
    explicit SpectrumEnv(EnvConfig cfg);

    /// Re-seeds, restarts the clock and fills the waterfall with `band.rows` jammer-only slots.
    const WaterfallState& reset(std::uint64_t seed);
    /// Throws StateError before reset, StructuralError for out-of-range actions.
    StepOutcome step(const Action& action);

    const WaterfallState& state() const { return state_; }
    const EnvConfig& config() const { return cfg_; }
    std::int64_t clock() const { return clock_; }
    std::size_t num_actions() const { return cfg_.channels.count; }
    Emission user_emission(const Action& action) const;
    const std::vector<Jammer>& jammers() const { return jammers_; }

private:
    std::vector<Emission> jammer_emissions(std::int64_t slot);

    EnvConfig cfg_;
    double noise_density_;
    std::vector<Jammer> jammers_;
    Rng rng_;
    WaterfallState state_;
    std::int64_t clock_ = 0;
    std::optional<Action> previous_;
    bool ready_ = false;
};

}  // namespace antijam
