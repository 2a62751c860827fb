#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "antijam/spectrum.hpp"

namespace antijam {

/// 8-bit intensity of a dBm value: round(255 * clamp((dbm + 100) / 135, 0, 1)).
std::uint8_t waterfall_pixel(double dbm);

/// Binary PGM (P5): width = bins, height = rows, newest slot in the top image row.
std::vector<std::uint8_t> encode_waterfall_pgm(const WaterfallState& state);
void export_waterfall_pgm(const WaterfallState& state, const std::filesystem::path& path);

}  // namespace antijam
