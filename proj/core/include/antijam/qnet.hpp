#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "antijam/spectrum.hpp"

namespace antijam {

/// Layer geometry of the two-conv / two-dense Q-network. Convolutions are unpadded;
/// when a stride does not tile the input exactly, trailing rows/columns are ignored.
struct QNetArch {
    std::size_t input_rows = 50;
    std::size_t input_cols = 50;
    std::size_t conv1_channels = 16;
    std::size_t conv1_kernel = 8;
    std::size_t conv1_stride = 4;
    std::size_t conv2_channels = 32;
    std::size_t conv2_kernel = 4;
    std::size_t conv2_stride = 2;
    std::size_t fc1_units = 256;
    std::size_t actions = 9;

    std::size_t conv1_rows() const { return (input_rows - conv1_kernel) / conv1_stride + 1; }
    std::size_t conv1_cols() const { return (input_cols - conv1_kernel) / conv1_stride + 1; }
    std::size_t conv2_rows() const { return (conv1_rows() - conv2_kernel) / conv2_stride + 1; }
    std::size_t conv2_cols() const { return (conv1_cols() - conv2_kernel) / conv2_stride + 1; }
    std::size_t flatten_size() const { return conv2_channels * conv2_rows() * conv2_cols(); }

    /// Default layer sizes for a `rows` x `cols` input.
    static QNetArch for_input(std::size_t rows, std::size_t cols, std::size_t actions = 9);
    /// Small network on a 10x10 input, used for finite-difference checks.
    static QNetArch reduced();

    void validate() const;
    bool operator==(const QNetArch&) const = default;
};

struct Tensor {
    std::vector<std::size_t> shape;
    std::vector<double> values;

    static Tensor zeros(std::vector<std::size_t> shape);
    std::size_t size() const { return values.size(); }
    bool operator==(const Tensor&) const = default;
};

inline constexpr std::size_t kParamTensorCount = 8;

/// All weights and biases. Convolution weights are [out][in][k][k], dense weights [out][in].
struct QNetworkParams {
    QNetArch arch;
    Tensor conv1_w, conv1_b, conv2_w, conv2_b, fc1_w, fc1_b, fc2_w, fc2_b;

    static QNetworkParams zeros(const QNetArch& arch);

    std::array<Tensor*, kParamTensorCount> tensors();
    std::array<const Tensor*, kParamTensorCount> tensors() const;
    static std::array<const char*, kParamTensorCount> tensor_names();

    std::size_t parameter_count() const;
    bool all_finite() const;
    bool operator==(const QNetworkParams&) const = default;
};

using QNetworkGradients = QNetworkParams;

/// Single-channel network input with entries in [0, 1].
struct StateTensor {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;

    double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
    bool operator==(const StateTensor&) const = default;
};

inline constexpr double kInputFloorDbm = -100.0;
inline constexpr double kInputCeilDbm = 35.0;

/// Average-pools `decimation` x `decimation` blocks of dBm values, then maps
/// [kInputFloorDbm, kInputCeilDbm] linearly onto [0, 1] with clamping.
StateTensor preprocess(const WaterfallState& state, std::size_t decimation);

/// Zero-mean uniform weights with half-width sqrt(2 / fan_in); zero biases.
QNetworkParams init_params(const QNetArch& arch, std::uint64_t seed);

/// Q-values for every action. Throws StructuralError when `x` does not match the input size.
std::vector<double> forward(const QNetworkParams& params, const StateTensor& x);

struct TrainingSample {
    const StateTensor* state = nullptr;
    std::size_t action = 0;
    double target = 0.0;
};

/// Mean squared TD error over the batch. Throws UsageError for an empty batch.
double loss(const QNetworkParams& params, std::span<const TrainingSample> batch);

/// Deliberate backward-pass corruption used to show the gradient check has teeth.
enum class LayerFault { none, conv1, conv2, fc1, fc2 };

struct LossAndGradients {
    double loss = 0.0;
    QNetworkGradients gradients;
};

/// Exact gradient of `loss` with respect to every parameter (reverse mode).
LossAndGradients backward(const QNetworkParams& params, std::span<const TrainingSample> batch,
                          LayerFault fault = LayerFault::none);

/// params -= learning_rate * gradients.
void sgd_step(QNetworkParams& params, const QNetworkGradients& gradients, double learning_rate);

/// Max relative error between analytic and central-difference gradients
/// (step 1e-5) on the reduced architecture with a random batch derived from `seed`.
double gradient_check(std::uint64_t seed, LayerFault fault = LayerFault::none);

}  // namespace antijam
