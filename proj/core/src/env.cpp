#include "antijam/env.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "antijam/errors.hpp"

namespace antijam {

std::vector<double> ChannelPlan::centers() const {
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = center(i);
    return out;
}

void RewardConfig::validate() const {
    if (!std::isfinite(rate)) throw ConfigError("reward.rate", "must be finite");
    if (!(switch_cost >= 0.0 && switch_cost < 1.0))
        throw ConfigError("reward.switch_cost", "must lie in [0, 1)");
    if (!std::isfinite(sinr_threshold_db)) throw ConfigError("reward.sinr_threshold_db", "must be finite");
    if (!std::isfinite(noise_power_dbm)) throw ConfigError("reward.noise_power_dbm", "must be finite");
}

void EnvConfig::validate() const {
    band.validate();
    reward.validate();
    try {
        user.validate();
    } catch (const ConfigError& e) {
        throw ConfigError("user." + e.key(), "invalid user waveform");
    }
    if (channels.count == 0) throw ConfigError("user.channels", "must be positive");
    if (!(channels.step_mhz > 0.0)) throw ConfigError("user.channel_step_mhz", "must be positive");
    const double half = user.bandwidth_mhz / 2.0;
    const double eps = 1e-9;
    if (channels.center(0) - half < band.lo_mhz - eps ||
        channels.center(channels.count - 1) + half > band.hi_mhz + eps) {
        throw ConfigError("user.first_center_mhz", "user channels must lie inside the band");
    }
    for (const auto& j : jammers) j.validate();
}

double compute_sinr(const Emission& user, std::span<const Emission> interferers,
                    const RewardConfig& cfg) {
    const double half = user.waveform.bandwidth_mhz / 2.0;
    const double lo = user.center_mhz - half;
    const double hi = user.center_mhz + half;
    double interference = dbm_to_mw(cfg.noise_power_dbm);
    for (const Emission& e : interferers) interference += band_power(e, lo, hi);
    return mw_to_dbm(user.waveform.power_mw() / interference);
}

double epoch_reward(const Action& action, const std::optional<Action>& previous,
                    std::span<const double> slot_sinr_db, std::size_t epoch_slots,
                    const RewardConfig& cfg) {
    if (slot_sinr_db.size() != epoch_slots) {
        throw StructuralError("epoch_reward: expected " + std::to_string(epoch_slots) +
                              " slot SINR values, got " + std::to_string(slot_sinr_db.size()));
    }
    const auto ok = std::count_if(slot_sinr_db.begin(), slot_sinr_db.end(),
                                  [&](double s) { return s >= cfg.sinr_threshold_db; });
    const double success = static_cast<double>(ok) / static_cast<double>(epoch_slots);
    const bool switched = previous.has_value() && *previous != action;
    return success * cfg.rate - (switched ? cfg.switch_cost * cfg.rate : 0.0);
}

double StepOutcome::success_fraction() const {
    if (slot_success.empty()) return 0.0;
    const auto ok = std::count(slot_success.begin(), slot_success.end(), true);
    return static_cast<double>(ok) / static_cast<double>(slot_success.size());
}

SpectrumEnv::SpectrumEnv(EnvConfig cfg) : cfg_(std::move(cfg)) {
    cfg_.validate();
    noise_density_ = cfg_.noise_density();
    jammers_.reserve(cfg_.jammers.size());
    for (const auto& j : cfg_.jammers) jammers_.emplace_back(j, cfg_.band, cfg_.channels.centers());
}

Emission SpectrumEnv::user_emission(const Action& action) const {
    return Emission{cfg_.channels.center(action.index), cfg_.user};
}

std::vector<Emission> SpectrumEnv::jammer_emissions(std::int64_t slot) {
    std::vector<Emission> out;
    for (auto& j : jammers_) {
        auto e = j.emissions(slot, rng_);
        out.insert(out.end(), e.begin(), e.end());
    }
    return out;
}

const WaterfallState& SpectrumEnv::reset(std::uint64_t seed) {
    rng_.seed(seed);
    for (auto& j : jammers_) j.reset();
    clock_ = 0;
    previous_.reset();
    state_ = WaterfallState(cfg_.band.rows, cfg_.band.bins);
    for (std::size_t k = 0; k < cfg_.band.rows; ++k, ++clock_) {
        const auto emissions = jammer_emissions(clock_);
        state_.push_row(render_row(emissions, cfg_.band, noise_density_, clock_));
    }
    ready_ = true;
    return state_;
}

StepOutcome SpectrumEnv::step(const Action& action) {
    if (!ready_) throw StateError("SpectrumEnv::step called before reset");
    if (action.index >= cfg_.channels.count) {
        throw StructuralError("SpectrumEnv::step: action " + std::to_string(action.index) +
                              " out of range");
    }
    const Emission user = user_emission(action);
    const std::size_t slots = cfg_.band.epoch_slots;

    StepOutcome out;
    out.slot_success.reserve(slots);
    out.slot_sinr_db.reserve(slots);
    for (std::size_t s = 0; s < slots; ++s, ++clock_) {
        auto emissions = jammer_emissions(clock_);
        const double sinr = compute_sinr(user, emissions, cfg_.reward);
        out.slot_sinr_db.push_back(sinr);
        out.slot_success.push_back(sinr >= cfg_.reward.sinr_threshold_db);
        emissions.push_back(user);
        state_.push_row(render_row(emissions, cfg_.band, noise_density_, clock_));
    }
    out.switched = previous_.has_value() && *previous_ != action;
    out.reward = epoch_reward(action, previous_, out.slot_sinr_db, slots, cfg_.reward);
    for (auto& j : jammers_) j.observe_user(action.index);
    previous_ = action;
    out.next_state = state_;
    return out;
}

}  // namespace antijam
