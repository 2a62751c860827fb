#include "antijam/jammers.hpp"

#include <algorithm>
#include <cmath>

#include "antijam/errors.hpp"

namespace antijam {

std::string to_string(JammerKind kind) {
    switch (kind) {
        case JammerKind::sweep: return "sweep";
        case JammerKind::comb: return "comb";
        case JammerKind::random: return "random";
        case JammerKind::intelligent: return "intelligent";
    }
    return "unknown";
}

JammerKind parse_jammer_kind(std::string_view name) {
    if (name == "sweep") return JammerKind::sweep;
    if (name == "comb") return JammerKind::comb;
    if (name == "random") return JammerKind::random;
    if (name == "intelligent") return JammerKind::intelligent;
    throw ConfigError("jammer.kind", "unknown jammer kind '" + std::string(name) +
                                         "' (expected sweep, comb, random or intelligent)");
}

void JammerConfig::validate() const {
    try {
        waveform.validate();
    } catch (const ConfigError& e) {
        throw ConfigError("jammer." + e.key(), "invalid jammer waveform");
    }
    switch (kind) {
        case JammerKind::sweep:
            if (!(sweep_speed_mhz_per_ms > 0.0) || !std::isfinite(sweep_speed_mhz_per_ms))
                throw ConfigError("jammer.sweep_speed_mhz_per_ms", "must be positive");
            if (!std::isfinite(sweep_start_mhz))
                throw ConfigError("jammer.sweep_start_mhz", "must be finite");
            break;
        case JammerKind::comb:
            if (comb_centers_mhz.empty())
                throw ConfigError("jammer.comb_centers_mhz", "needs at least one center");
            break;
        case JammerKind::random:
            if (!(random_dwell_ms > 0.0)) throw ConfigError("jammer.random_dwell_ms", "must be positive");
            if (random_grid_mhz.empty())
                throw ConfigError("jammer.random_grid_mhz", "needs at least one center");
            break;
        case JammerKind::intelligent:
            if (window_epochs == 0) throw ConfigError("jammer.window_epochs", "must be positive");
            break;
    }
}

std::vector<Emission> sweep_emissions(std::int64_t slot, const JammerConfig& cfg,
                                      const BandConfig& band) {
    const double t_ms = static_cast<double>(slot) * band.slot_ms;
    double offset = std::fmod(cfg.sweep_start_mhz - band.lo_mhz + cfg.sweep_speed_mhz_per_ms * t_ms,
                              band.span_mhz());
    if (offset < 0.0) offset += band.span_mhz();
    return {Emission{band.lo_mhz + offset, cfg.waveform}};
}

std::vector<Emission> comb_emissions(const JammerConfig& cfg) {
    std::vector<Emission> out;
    out.reserve(cfg.comb_centers_mhz.size());
    for (double c : cfg.comb_centers_mhz) out.push_back(Emission{c, cfg.waveform});
    return out;
}

std::vector<Emission> RandomJammer::emissions(std::int64_t slot, const BandConfig& band, Rng& rng) {
    const double t_ms = static_cast<double>(slot) * band.slot_ms;
    const auto dwell = static_cast<std::int64_t>(std::floor(t_ms / cfg_.random_dwell_ms));
    if (dwell != dwell_) {
        std::uniform_int_distribution<std::size_t> pick(0, cfg_.random_grid_mhz.size() - 1);
        center_ = cfg_.random_grid_mhz[pick(rng)];
        dwell_ = dwell;
    }
    return {Emission{center_, cfg_.waveform}};
}

void RandomJammer::reset() {
    dwell_ = -1;
    center_ = 0.0;
}

IntelligentJammer::IntelligentJammer(JammerConfig cfg, std::vector<double> channel_centers_mhz,
                                     double band_center_mhz)
    : cfg_(std::move(cfg)),
      centers_(std::move(channel_centers_mhz)),
      fallback_mhz_(band_center_mhz),
      counts_(centers_.size(), 0) {}

void IntelligentJammer::observe(std::size_t channel) {
    if (channel >= centers_.size()) throw StructuralError("IntelligentJammer::observe: bad channel");
    window_.push_back(channel);
    ++counts_[channel];
    if (window_.size() > cfg_.window_epochs) {
        --counts_[window_.front()];
        window_.pop_front();
    }
}

double IntelligentJammer::target_mhz() const {
    if (window_.empty()) return fallback_mhz_;
    // max_element returns the first maximum, i.e. the lowest channel on ties.
    const auto best = std::max_element(counts_.begin(), counts_.end());
    return centers_[static_cast<std::size_t>(best - counts_.begin())];
}

std::vector<Emission> IntelligentJammer::emissions() const {
    return {Emission{target_mhz(), cfg_.waveform}};
}

void IntelligentJammer::reset() {
    window_.clear();
    std::fill(counts_.begin(), counts_.end(), 0);
}

Jammer::Jammer(const JammerConfig& cfg, const BandConfig& band,
               std::vector<double> channel_centers_mhz)
    : kind_(cfg.kind), band_(band), state_(Sweep{cfg}) {
    cfg.validate();
    switch (cfg.kind) {
        case JammerKind::sweep: break;
        case JammerKind::comb: state_ = Comb{cfg}; break;
        case JammerKind::random: state_ = RandomJammer(cfg); break;
        case JammerKind::intelligent:
            state_ = IntelligentJammer(cfg, std::move(channel_centers_mhz),
                                       0.5 * (band.lo_mhz + band.hi_mhz));
            break;
    }
}

std::vector<Emission> Jammer::emissions(std::int64_t slot, Rng& rng) {
    if (auto* s = std::get_if<Sweep>(&state_)) return sweep_emissions(slot, s->cfg, band_);
    if (auto* c = std::get_if<Comb>(&state_)) return comb_emissions(c->cfg);
    if (auto* r = std::get_if<RandomJammer>(&state_)) return r->emissions(slot, band_, rng);
    return std::get<IntelligentJammer>(state_).emissions();
}

void Jammer::observe_user(std::size_t channel) {
    if (auto* j = std::get_if<IntelligentJammer>(&state_)) j->observe(channel);
}

void Jammer::reset() {
    if (auto* r = std::get_if<RandomJammer>(&state_)) r->reset();
    if (auto* j = std::get_if<IntelligentJammer>(&state_)) j->reset();
}

}  // namespace antijam
