#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "antijam/darla.hpp"
#include "antijam/env.hpp"

namespace antijam {

/// Everything needed to reproduce one training run.
///
/// The text form is one `key = value` per line with `#` comments. Strings may be quoted,
/// lists are written `[a, b, c]`. Unknown or repeated keys are rejected and missing keys keep
/// their defaults, so an empty file describes the default comb-jamming setup. See
/// docs/config.md for the key reference.
struct ExperimentConfig {
    BandConfig band;
    ChannelPlan channels;
    WaveformSpec user{4.0, 0.3, 0.0};
    RewardConfig reward;
    JammerConfig jammer;
    bool jammer_enabled = true;  // `jammer.kind = none` disables jamming
    TrainHyper train;
    std::size_t epochs = 20000;
    std::size_t eval_epochs = 2000;
    std::uint64_t seed = 1;
    std::string output_dir = "runs/default";

    EnvConfig env() const;
    /// Throws ConfigError naming the first offending key.
    void validate() const;
    bool operator==(const ExperimentConfig&) const = default;
};

/// Every recognized key, in serialization order.
std::vector<std::string> config_keys();

ExperimentConfig parse_config(std::string_view text);
/// Parses and validates a config file. Throws IoError if unreadable, ConfigError otherwise.
ExperimentConfig load_config(const std::filesystem::path& path);
std::string serialize_config(const ExperimentConfig& cfg);

/// Applies a single `key = value` assignment; used for command-line overrides.
void set_config_value(ExperimentConfig& cfg, std::string_view key, std::string_view value);

}  // namespace antijam
