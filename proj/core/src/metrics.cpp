#include "antijam/metrics.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "antijam/errors.hpp"

namespace antijam {

std::vector<MetricsRow> to_metrics_rows(const TrainingReport& report) {
    std::vector<MetricsRow> rows;
    rows.reserve(report.records.size());
    for (const auto& r : report.records)
        rows.push_back(MetricsRow{r.epoch, r.epsilon, r.reward, r.throughput_ma, r.loss, r.action});
    return rows;
}

std::string format_metrics_row(const MetricsRow& row) {
    char buf[256];
    const int n = std::snprintf(buf, sizeof(buf), "%zu,%#.6g,%#.6g,%#.6g,%#.6g,%zu", row.epoch, row.epsilon,
                                row.reward, row.throughput_ma, row.loss, row.action);
    return std::string(buf, static_cast<std::size_t>(n));
}

void write_metrics_csv(std::span<const MetricsRow> rows, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open metrics file for writing: " + path.string());
    out << kMetricsHeader << '\n';
    for (const auto& row : rows) out << format_metrics_row(row) << '\n';
    if (!out) throw IoError("failed writing metrics file: " + path.string());
}

std::vector<MetricsRow> read_metrics_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read metrics file: " + path.string());
    std::string line;
    if (!std::getline(in, line) || line != kMetricsHeader)
        throw IoError("unexpected metrics header in " + path.string());
    std::vector<MetricsRow> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        MetricsRow row;
        char tail = 0;
        const int got = std::sscanf(line.c_str(), "%zu,%lf,%lf,%lf,%lf,%zu%c", &row.epoch, &row.epsilon,
                                    &row.reward, &row.throughput_ma, &row.loss, &row.action, &tail);
        if (got != 6)
            throw IoError("malformed metrics row " + std::to_string(line_no) + " in " + path.string());
        rows.push_back(row);
    }
    return rows;
}

}  // namespace antijam
