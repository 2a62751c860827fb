#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "antijam/darla.hpp"

namespace antijam {

struct MetricsRow {
    std::size_t epoch = 0;
    double epsilon = 0.0;
    double reward = 0.0;
    double throughput_ma = 0.0;
    double loss = 0.0;
    std::size_t action = 0;
};

inline constexpr const char* kMetricsHeader = "epoch,epsilon,reward,throughput_ma,loss,action";

std::vector<MetricsRow> to_metrics_rows(const TrainingReport& report);

/// Reals use printf "%#.6g" (six significant digits, trailing zeros kept).
std::string format_metrics_row(const MetricsRow& row);

void write_metrics_csv(std::span<const MetricsRow> rows, const std::filesystem::path& path);
/// Throws IoError when the file is missing or malformed.
std::vector<MetricsRow> read_metrics_csv(const std::filesystem::path& path);

}  // namespace antijam
