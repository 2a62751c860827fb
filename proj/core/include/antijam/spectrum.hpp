#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace antijam {

/// Sensing grid: the band is split into `bins` equal bins, one row per slot.
struct BandConfig {
    double lo_mhz = 0.0;
    double hi_mhz = 20.0;
    double bin_width_mhz = 0.1;
    double slot_ms = 1.0;
    std::size_t rows = 200;        // history depth M
    std::size_t bins = 200;        // frequency bins N
    std::size_t epoch_slots = 10;  // slots per decision epoch

    double span_mhz() const { return hi_mhz - lo_mhz; }
    double bin_lo(std::size_t n) const { return lo_mhz + bin_width_mhz * static_cast<double>(n); }
    double history_ms() const { return static_cast<double>(rows) * slot_ms; }
    double epoch_ms() const { return static_cast<double>(epoch_slots) * slot_ms; }

    /// Throws ConfigError when the grid is inconsistent (bins must tile the band exactly).
    void validate() const;
    bool operator==(const BandConfig&) const = default;
};

/// Raised-cosine waveform. `bandwidth_mhz` is the full occupied support including roll-off.
struct WaveformSpec {
    double bandwidth_mhz = 4.0;
    double rolloff = 0.3;
    double power_dbm = 0.0;

    double symbol_rate() const { return bandwidth_mhz / (1.0 + rolloff); }
    double power_mw() const;
    void validate() const;
    bool operator==(const WaveformSpec&) const = default;
};

/// One active transmitter during one slot.
struct Emission {
    double center_mhz = 0.0;
    WaveformSpec waveform;
};

double dbm_to_mw(double dbm);
double mw_to_dbm(double mw);

/// Power spectral density in mW/MHz at `offset_mhz` from the carrier.
double raised_cosine_psd(double offset_mhz, const WaveformSpec& spec);

/// Power of `emission` falling inside [f_lo, f_hi], in mW. Closed form.
double band_power(const Emission& emission, double f_lo, double f_hi);

/// One sensing snapshot in dBm per bin.
struct SpectrumRow {
    std::vector<double> values;
    std::int64_t timestamp = 0;
};

/// Renders the band as seen by an ideal sensor: per-bin noise plus every emission's in-bin power.
/// Power outside [lo, hi] of the band is discarded.
SpectrumRow render_row(std::span<const Emission> emissions, const BandConfig& band,
                       double noise_density_mw_per_mhz, std::int64_t timestamp = 0);

/// Sliding window of the most recent `rows` spectrum rows, newest at index 0.
class WaterfallState {
public:
    WaterfallState() = default;
    /// All-zero window.
    WaterfallState(std::size_t rows, std::size_t bins);

    std::size_t rows() const { return rows_; }
    std::size_t bins() const { return bins_; }

    /// Row k is the snapshot taken k+1 slots before the present.
    std::span<const double> row(std::size_t k) const;
    double at(std::size_t k, std::size_t n) const { return row(k)[n]; }

    /// Inserts `row` at position 0 and drops the oldest. Throws StructuralError on length mismatch.
    void push_row(std::span<const double> row);
    void push_row(const SpectrumRow& row) { push_row(std::span<const double>(row.values)); }

    /// Row-major copy, newest row first.
    std::vector<double> to_matrix() const;

    bool operator==(const WaterfallState& other) const;

private:
    std::size_t rows_ = 0;
    std::size_t bins_ = 0;
    std::size_t head_ = 0;  // storage row holding logical row 0
    std::vector<double> storage_;
};

/// Functional form of WaterfallState::push_row.
WaterfallState push_row(WaterfallState state, const SpectrumRow& row);

}  // namespace antijam
