#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "antijam/random.hpp"
#include "antijam/spectrum.hpp"

namespace antijam {

enum class JammerKind { sweep, comb, random, intelligent };

std::string to_string(JammerKind kind);
/// Throws ConfigError for unknown names.
JammerKind parse_jammer_kind(std::string_view name);

struct JammerConfig {
    JammerKind kind = JammerKind::comb;
    WaveformSpec waveform{4.0, 0.3, 30.0};
    double sweep_speed_mhz_per_ms = 1.0;  // 1 GHz/s
    double sweep_start_mhz = 2.0;
    std::vector<double> comb_centers_mhz{2.0, 10.0, 18.0};
    double random_dwell_ms = 20.0;
    std::vector<double> random_grid_mhz{2.0, 6.0, 10.0, 14.0, 18.0};
    std::size_t window_epochs = 200;

    void validate() const;
    bool operator==(const JammerConfig&) const = default;
};

/// Linear sweep wrapping modulo the band: center = lo + ((start - lo + speed * t) mod span).
std::vector<Emission> sweep_emissions(std::int64_t slot, const JammerConfig& cfg,
                                      const BandConfig& band);

/// Static multi-tone jammer.
std::vector<Emission> comb_emissions(const JammerConfig& cfg);

/// Hops to a uniformly drawn grid center at every dwell boundary.
class RandomJammer {
public:
    explicit RandomJammer(JammerConfig cfg) : cfg_(std::move(cfg)) {}

    /// Draws from `rng` the first time a slot in a new dwell is queried.
    std::vector<Emission> emissions(std::int64_t slot, const BandConfig& band, Rng& rng);
    void reset();

    double current_center() const { return center_; }

private:
    JammerConfig cfg_;
    std::int64_t dwell_ = -1;
    double center_ = 0.0;
};

/// Tracks the user's channel usage over a sliding window and jams the most used channel.
/// Ties go to the lowest channel; an empty window jams the middle of the band.
class IntelligentJammer {
public:
    IntelligentJammer(JammerConfig cfg, std::vector<double> channel_centers_mhz,
                      double band_center_mhz);

    void observe(std::size_t channel);
    std::vector<Emission> emissions() const;
    void reset();

    std::span<const std::size_t> counts() const { return counts_; }
    std::size_t observations() const { return window_.size(); }
    double target_mhz() const;

private:
    JammerConfig cfg_;
    std::vector<double> centers_;
    double fallback_mhz_;
    std::deque<std::size_t> window_;
    std::vector<std::size_t> counts_;
};

/// Owns one configured jammer and dispatches to its pattern.
class Jammer {
public:
    Jammer(const JammerConfig& cfg, const BandConfig& band,
           std::vector<double> channel_centers_mhz);

    JammerKind kind() const { return kind_; }
    std::vector<Emission> emissions(std::int64_t slot, Rng& rng);
    /// Called once per user decision epoch with the chosen channel.
    void observe_user(std::size_t channel);
    void reset();

    const IntelligentJammer* intelligent() const { return std::get_if<IntelligentJammer>(&state_); }

private:
    struct Sweep { JammerConfig cfg; };
    struct Comb { JammerConfig cfg; };

    JammerKind kind_;
    BandConfig band_;
    std::variant<Sweep, Comb, RandomJammer, IntelligentJammer> state_;
};

}  // namespace antijam
