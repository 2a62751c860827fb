#include "antijam/pgm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>

#include "antijam/errors.hpp"
#include "antijam/qnet.hpp"

namespace antijam {

std::uint8_t waterfall_pixel(double dbm) {
    const double level = std::clamp((dbm - kInputFloorDbm) / (kInputCeilDbm - kInputFloorDbm), 0.0, 1.0);
    return static_cast<std::uint8_t>(std::lround(255.0 * level));
}

std::vector<std::uint8_t> encode_waterfall_pgm(const WaterfallState& state) {
    const std::string header =
        "P5\n" + std::to_string(state.bins()) + " " + std::to_string(state.rows()) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.reserve(header.size() + state.rows() * state.bins());
    for (std::size_t k = 0; k < state.rows(); ++k)
        for (double v : state.row(k)) out.push_back(waterfall_pixel(v));
    return out;
}

void export_waterfall_pgm(const WaterfallState& state, const std::filesystem::path& path) {
    const auto bytes = encode_waterfall_pgm(state);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open image for writing: " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("failed writing image: " + path.string());
}

}  // namespace antijam
