#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "antijam/qnet.hpp"

namespace antijam {

/// Checkpoint layout (all integers and floats little-endian):
///
///   8 bytes   magic "AJQNET01"
///   u32       number of architecture fields (10), then that many u64 fields in QNetArch order
///   u32       number of tensors (8)
///   per tensor: u32 rank, then rank x u32 dimensions
///   payload   every tensor's values as IEEE-754 binary64, in header order
std::vector<std::uint8_t> encode_checkpoint(const QNetworkParams& params);
/// Throws StructuralError for malformed input.
QNetworkParams decode_checkpoint(const std::vector<std::uint8_t>& bytes);

/// Throws IoError with the path on failure.
void save_checkpoint(const QNetworkParams& params, const std::filesystem::path& path);
QNetworkParams load_checkpoint(const std::filesystem::path& path);

}  // namespace antijam
