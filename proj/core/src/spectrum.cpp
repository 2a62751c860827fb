#include "antijam/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "antijam/errors.hpp"

namespace antijam {

void BandConfig::validate() const {
    if (!(hi_mhz > lo_mhz)) throw ConfigError("band.hi_mhz", "must exceed band.lo_mhz");
    if (!(bin_width_mhz > 0.0)) throw ConfigError("band.bin_width_mhz", "must be positive");
    if (!(slot_ms > 0.0)) throw ConfigError("band.slot_ms", "must be positive");
    if (rows == 0) throw ConfigError("band.rows", "must be positive");
    if (epoch_slots == 0) throw ConfigError("band.epoch_slots", "must be positive");
    const double exact = span_mhz() / bin_width_mhz;
    if (bins == 0 || std::abs(exact - static_cast<double>(bins)) > 1e-9 * std::max(1.0, exact)) {
        throw ConfigError("band.bins", "must equal (hi - lo) / bin_width = " + std::to_string(exact) +
                                           ", got " + std::to_string(bins));
    }
}

double WaveformSpec::power_mw() const { return dbm_to_mw(power_dbm); }

void WaveformSpec::validate() const {
    if (!(bandwidth_mhz > 0.0) || !std::isfinite(bandwidth_mhz))
        throw ConfigError("bandwidth_mhz", "must be positive");
    if (!(rolloff > 0.0 && rolloff < 1.0)) throw ConfigError("rolloff", "must lie in (0, 1)");
    if (!std::isfinite(power_dbm)) throw ConfigError("power_dbm", "must be finite");
}

double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
double mw_to_dbm(double mw) { return 10.0 * std::log10(mw); }

double raised_cosine_psd(double offset_mhz, const WaveformSpec& spec) {
    spec.validate();
    const double rs = spec.symbol_rate();
    const double level = spec.power_mw() / rs;
    const double flat_edge = (1.0 - spec.rolloff) * rs / 2.0;
    const double u = std::abs(offset_mhz);
    if (u >= spec.bandwidth_mhz / 2.0) return 0.0;
    if (u <= flat_edge) return level;
    return level * 0.5 *
           (1.0 + std::cos(std::numbers::pi / (spec.rolloff * rs) * (u - flat_edge)));
}

namespace {

// Power between the carrier and `offset` (signed, odd in offset).
double cumulative_power(double offset, const WaveformSpec& spec, double rs, double level) {
    const double u = std::abs(offset);
    const double flat_edge = (1.0 - spec.rolloff) * rs / 2.0;
    const double half_band = spec.bandwidth_mhz / 2.0;
    const double roll_width = spec.rolloff * rs;
    double value;
    if (u <= flat_edge) {
        value = level * u;
    } else if (u < half_band) {
        const double v = u - flat_edge;
        value = level * (flat_edge + 0.5 * v +
                         roll_width / (2.0 * std::numbers::pi) *
                             std::sin(std::numbers::pi * v / roll_width));
    } else {
        value = level * rs / 2.0;
    }
    return offset < 0.0 ? -value : value;
}

}  // namespace

double band_power(const Emission& emission, double f_lo, double f_hi) {
    const WaveformSpec& spec = emission.waveform;
    spec.validate();
    if (!(f_lo < f_hi)) throw UsageError("band_power: f_lo must be below f_hi");
    const double half_band = spec.bandwidth_mhz / 2.0;
    const double lo = f_lo - emission.center_mhz;
    const double hi = f_hi - emission.center_mhz;
    if (hi <= -half_band || lo >= half_band) return 0.0;
    const double rs = spec.symbol_rate();
    const double level = spec.power_mw() / rs;
    return cumulative_power(hi, spec, rs, level) - cumulative_power(lo, spec, rs, level);
}

SpectrumRow render_row(std::span<const Emission> emissions, const BandConfig& band,
                       double noise_density_mw_per_mhz, std::int64_t timestamp) {
    SpectrumRow row;
    row.timestamp = timestamp;
    row.values.assign(band.bins, noise_density_mw_per_mhz * band.bin_width_mhz);
    for (const Emission& e : emissions) {
        const double half = e.waveform.bandwidth_mhz / 2.0;
        const double lo = e.center_mhz - half;
        const double hi = e.center_mhz + half;
        if (hi <= band.lo_mhz || lo >= band.hi_mhz) continue;
        // Only bins intersecting the occupied support get a contribution.
        const double first = std::floor((lo - band.lo_mhz) / band.bin_width_mhz);
        const double last = std::ceil((hi - band.lo_mhz) / band.bin_width_mhz);
        const auto n0 = static_cast<std::size_t>(std::max(0.0, first));
        const auto n1 = static_cast<std::size_t>(std::min(static_cast<double>(band.bins), last));
        for (std::size_t n = n0; n < n1; ++n) {
            const double b_lo = band.bin_lo(n);
            row.values[n] += band_power(e, b_lo, b_lo + band.bin_width_mhz);
        }
    }
    for (double& v : row.values) v = mw_to_dbm(v);
    return row;
}

WaterfallState::WaterfallState(std::size_t rows, std::size_t bins)
    : rows_(rows), bins_(bins), storage_(rows * bins, 0.0) {}

std::span<const double> WaterfallState::row(std::size_t k) const {
    if (k >= rows_) throw StructuralError("WaterfallState::row: index out of range");
    const std::size_t slot = (head_ + k) % rows_;
    return {storage_.data() + slot * bins_, bins_};
}

void WaterfallState::push_row(std::span<const double> row) {
    if (row.size() != bins_) {
        throw StructuralError("push_row: row has " + std::to_string(row.size()) +
                              " bins, state expects " + std::to_string(bins_));
    }
    if (rows_ == 0) return;
    head_ = (head_ + rows_ - 1) % rows_;
    std::copy(row.begin(), row.end(), storage_.begin() + static_cast<std::ptrdiff_t>(head_ * bins_));
}

std::vector<double> WaterfallState::to_matrix() const {
    std::vector<double> out;
    out.reserve(rows_ * bins_);
    for (std::size_t k = 0; k < rows_; ++k) {
        auto r = row(k);
        out.insert(out.end(), r.begin(), r.end());
    }
    return out;
}

bool WaterfallState::operator==(const WaterfallState& other) const {
    return rows_ == other.rows_ && bins_ == other.bins_ && to_matrix() == other.to_matrix();
}

WaterfallState push_row(WaterfallState state, const SpectrumRow& row) {
    state.push_row(row);
    return state;
}

}  // namespace antijam
