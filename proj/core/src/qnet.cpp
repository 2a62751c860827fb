#include "antijam/qnet.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "antijam/errors.hpp"
#include "antijam/random.hpp"

namespace antijam {

QNetArch QNetArch::for_input(std::size_t rows, std::size_t cols, std::size_t actions) {
    QNetArch arch;
    arch.input_rows = rows;
    arch.input_cols = cols;
    arch.actions = actions;
    return arch;
}

QNetArch QNetArch::reduced() {
    QNetArch arch;
    arch.input_rows = 10;
    arch.input_cols = 10;
    arch.conv1_channels = 4;
    arch.conv1_kernel = 4;
    arch.conv1_stride = 2;
    arch.conv2_channels = 4;
    arch.conv2_kernel = 2;
    arch.conv2_stride = 1;
    arch.fc1_units = 16;
    arch.actions = 9;
    return arch;
}

void QNetArch::validate() const {
    auto positive = [](std::size_t v, const char* key) {
        if (v == 0) throw ConfigError(key, "must be positive");
    };
    positive(conv1_channels, "network.conv1_channels");
    positive(conv1_kernel, "network.conv1_kernel");
    positive(conv1_stride, "network.conv1_stride");
    positive(conv2_channels, "network.conv2_channels");
    positive(conv2_kernel, "network.conv2_kernel");
    positive(conv2_stride, "network.conv2_stride");
    positive(fc1_units, "network.fc1_units");
    positive(actions, "user.channels");
    if (input_rows < conv1_kernel || input_cols < conv1_kernel)
        throw ConfigError("network.conv1_kernel", "larger than the network input");
    if (conv1_rows() < conv2_kernel || conv1_cols() < conv2_kernel)
        throw ConfigError("network.conv2_kernel", "larger than the first feature map");
}

Tensor Tensor::zeros(std::vector<std::size_t> shape) {
    const std::size_t n =
        std::accumulate(shape.begin(), shape.end(), std::size_t{1}, std::multiplies<>());
    return Tensor{std::move(shape), std::vector<double>(n, 0.0)};
}

QNetworkParams QNetworkParams::zeros(const QNetArch& arch) {
    arch.validate();
    QNetworkParams p;
    p.arch = arch;
    p.conv1_w = Tensor::zeros({arch.conv1_channels, 1, arch.conv1_kernel, arch.conv1_kernel});
    p.conv1_b = Tensor::zeros({arch.conv1_channels});
    p.conv2_w = Tensor::zeros(
        {arch.conv2_channels, arch.conv1_channels, arch.conv2_kernel, arch.conv2_kernel});
    p.conv2_b = Tensor::zeros({arch.conv2_channels});
    p.fc1_w = Tensor::zeros({arch.fc1_units, arch.flatten_size()});
    p.fc1_b = Tensor::zeros({arch.fc1_units});
    p.fc2_w = Tensor::zeros({arch.actions, arch.fc1_units});
    p.fc2_b = Tensor::zeros({arch.actions});
    return p;
}

std::array<Tensor*, kParamTensorCount> QNetworkParams::tensors() {
    return {&conv1_w, &conv1_b, &conv2_w, &conv2_b, &fc1_w, &fc1_b, &fc2_w, &fc2_b};
}

std::array<const Tensor*, kParamTensorCount> QNetworkParams::tensors() const {
    return {&conv1_w, &conv1_b, &conv2_w, &conv2_b, &fc1_w, &fc1_b, &fc2_w, &fc2_b};
}

std::array<const char*, kParamTensorCount> QNetworkParams::tensor_names() {
    return {"conv1.weight", "conv1.bias", "conv2.weight", "conv2.bias",
            "fc1.weight",   "fc1.bias",   "fc2.weight",   "fc2.bias"};
}

std::size_t QNetworkParams::parameter_count() const {
    std::size_t n = 0;
    for (const Tensor* t : tensors()) n += t->size();
    return n;
}

bool QNetworkParams::all_finite() const {
    for (const Tensor* t : tensors())
        for (double v : t->values)
            if (!std::isfinite(v)) return false;
    return true;
}

StateTensor preprocess(const WaterfallState& state, std::size_t decimation) {
    if (decimation == 0 || state.rows() % decimation != 0 || state.bins() % decimation != 0) {
        throw ConfigError("network.decimation",
                          "must divide both the waterfall rows and bins (got " +
                              std::to_string(decimation) + ")");
    }
    StateTensor out;
    out.rows = state.rows() / decimation;
    out.cols = state.bins() / decimation;
    out.values.assign(out.rows * out.cols, 0.0);
    for (std::size_t k = 0; k < state.rows(); ++k) {
        const auto row = state.row(k);
        double* dst = out.values.data() + (k / decimation) * out.cols;
        for (std::size_t n = 0; n < state.bins(); ++n) dst[n / decimation] += row[n];
    }
    const double scale = 1.0 / static_cast<double>(decimation * decimation);
    const double span = kInputCeilDbm - kInputFloorDbm;
    for (double& v : out.values) v = std::clamp((v * scale - kInputFloorDbm) / span, 0.0, 1.0);
    return out;
}

QNetworkParams init_params(const QNetArch& arch, std::uint64_t seed) {
    QNetworkParams p = QNetworkParams::zeros(arch);
    Rng rng(seed);
    auto fill = [&rng](Tensor& w, std::size_t fan_in) {
        const double half_width = std::sqrt(2.0 / static_cast<double>(fan_in));
        std::uniform_real_distribution<double> dist(-half_width, half_width);
        for (double& v : w.values) v = dist(rng);
    };
    fill(p.conv1_w, arch.conv1_kernel * arch.conv1_kernel);
    fill(p.conv2_w, arch.conv1_channels * arch.conv2_kernel * arch.conv2_kernel);
    fill(p.fc1_w, arch.flatten_size());
    fill(p.fc2_w, arch.fc1_units);
    return p;
}

namespace {

double dot(const double* a, const double* b, std::size_t n) {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        s0 += a[i] * b[i];
        s1 += a[i + 1] * b[i + 1];
        s2 += a[i + 2] * b[i + 2];
        s3 += a[i + 3] * b[i + 3];
    }
    for (; i < n; ++i) s0 += a[i] * b[i];
    return (s0 + s1) + (s2 + s3);
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

// Unrolls input patches into a [channels*k*k][out_rows*out_cols] matrix.
void im2col(const double* in, std::size_t channels, std::size_t rows, std::size_t cols,
            std::size_t k, std::size_t stride, std::size_t out_rows, std::size_t out_cols,
            std::vector<double>& patches) {
    const std::size_t positions = out_rows * out_cols;
    patches.resize(channels * k * k * positions);
    double* dst = patches.data();
    for (std::size_t c = 0; c < channels; ++c)
        for (std::size_t ky = 0; ky < k; ++ky)
            for (std::size_t kx = 0; kx < k; ++kx)
                for (std::size_t oy = 0; oy < out_rows; ++oy) {
                    const double* src = in + (c * rows + oy * stride + ky) * cols + kx;
                    for (std::size_t ox = 0; ox < out_cols; ++ox) *dst++ = src[ox * stride];
                }
}

void col2im_add(const std::vector<double>& patches, std::size_t channels, std::size_t rows,
                std::size_t cols, std::size_t k, std::size_t stride, std::size_t out_rows,
                std::size_t out_cols, double* out) {
    const double* src = patches.data();
    for (std::size_t c = 0; c < channels; ++c)
        for (std::size_t ky = 0; ky < k; ++ky)
            for (std::size_t kx = 0; kx < k; ++kx)
                for (std::size_t oy = 0; oy < out_rows; ++oy) {
                    double* dst = out + (c * rows + oy * stride + ky) * cols + kx;
                    for (std::size_t ox = 0; ox < out_cols; ++ox) dst[ox * stride] += *src++;
                }
}

// out[c][p] = bias[c] + sum_j w[c][j] * patches[j][p]
void conv_forward(const Tensor& w, const Tensor& b, const std::vector<double>& patches,
                  std::size_t positions, std::vector<double>& out) {
    const std::size_t out_channels = b.size();
    const std::size_t fan_in = w.size() / out_channels;
    out.assign(out_channels * positions, 0.0);
    for (std::size_t c = 0; c < out_channels; ++c) {
        double* o = out.data() + c * positions;
        std::fill(o, o + positions, b.values[c]);
        const double* wc = w.values.data() + c * fan_in;
        for (std::size_t j = 0; j < fan_in; ++j) axpy(wc[j], patches.data() + j * positions, o, positions);
    }
}

void relu_inplace(std::vector<double>& v) {
    for (double& x : v) x = x > 0.0 ? x : 0.0;
}

struct Activations {
    std::vector<double> patches1, act1, patches2, act2, hidden, q;
};

void run_forward(const QNetworkParams& p, const StateTensor& x, Activations& a) {
    const QNetArch& arch = p.arch;
    if (x.rows != arch.input_rows || x.cols != arch.input_cols ||
        x.values.size() != x.rows * x.cols) {
        throw StructuralError("forward: input is " + std::to_string(x.rows) + "x" +
                              std::to_string(x.cols) + ", network expects " +
                              std::to_string(arch.input_rows) + "x" + std::to_string(arch.input_cols));
    }
    const std::size_t h1 = arch.conv1_rows(), w1 = arch.conv1_cols();
    const std::size_t h2 = arch.conv2_rows(), w2 = arch.conv2_cols();

    im2col(x.values.data(), 1, x.rows, x.cols, arch.conv1_kernel, arch.conv1_stride, h1, w1, a.patches1);
    conv_forward(p.conv1_w, p.conv1_b, a.patches1, h1 * w1, a.act1);
    relu_inplace(a.act1);

    im2col(a.act1.data(), arch.conv1_channels, h1, w1, arch.conv2_kernel, arch.conv2_stride, h2, w2,
           a.patches2);
    conv_forward(p.conv2_w, p.conv2_b, a.patches2, h2 * w2, a.act2);
    relu_inplace(a.act2);

    const std::size_t flat = arch.flatten_size();
    a.hidden.resize(arch.fc1_units);
    for (std::size_t i = 0; i < arch.fc1_units; ++i) {
        const double z = p.fc1_b.values[i] + dot(p.fc1_w.values.data() + i * flat, a.act2.data(), flat);
        a.hidden[i] = z > 0.0 ? z : 0.0;
    }
    a.q.resize(arch.actions);
    for (std::size_t k = 0; k < arch.actions; ++k) {
        a.q[k] = p.fc2_b.values[k] +
                 dot(p.fc2_w.values.data() + k * arch.fc1_units, a.hidden.data(), arch.fc1_units);
    }
}

void check_batch(const QNetworkParams& params, std::span<const TrainingSample> batch) {
    if (batch.empty()) throw UsageError("loss/backward: batch must not be empty");
    for (const auto& s : batch) {
        if (s.state == nullptr) throw UsageError("loss/backward: sample without a state");
        if (s.action >= params.arch.actions) throw StructuralError("loss/backward: action out of range");
    }
}

void check_same_shape(const QNetworkParams& a, const QNetworkParams& b) {
    const auto ta = a.tensors();
    const auto tb = b.tensors();
    for (std::size_t i = 0; i < kParamTensorCount; ++i) {
        if (ta[i]->shape != tb[i]->shape || ta[i]->size() != tb[i]->size()) {
            throw StructuralError(std::string("shape mismatch in ") + QNetworkParams::tensor_names()[i]);
        }
    }
}

}  // namespace

std::vector<double> forward(const QNetworkParams& params, const StateTensor& x) {
    Activations a;
    run_forward(params, x, a);
    return a.q;
}

double loss(const QNetworkParams& params, std::span<const TrainingSample> batch) {
    check_batch(params, batch);
    Activations a;
    double total = 0.0;
    for (const auto& s : batch) {
        run_forward(params, *s.state, a);
        const double r = s.target - a.q[s.action];
        total += r * r;
    }
    return total / static_cast<double>(batch.size());
}

LossAndGradients backward(const QNetworkParams& params, std::span<const TrainingSample> batch,
                          LayerFault fault) {
    check_batch(params, batch);
    const QNetArch& arch = params.arch;
    const std::size_t h1 = arch.conv1_rows(), w1 = arch.conv1_cols(), p1 = h1 * w1;
    const std::size_t h2 = arch.conv2_rows(), w2 = arch.conv2_cols(), p2 = h2 * w2;
    const std::size_t flat = arch.flatten_size();
    const std::size_t units = arch.fc1_units;
    const std::size_t fan1 = arch.conv1_kernel * arch.conv1_kernel;
    const std::size_t fan2 = arch.conv1_channels * arch.conv2_kernel * arch.conv2_kernel;
    const double inv_batch = 1.0 / static_cast<double>(batch.size());

    LossAndGradients out{0.0, QNetworkParams::zeros(arch)};
    QNetworkGradients& g = out.gradients;
    Activations a;
    std::vector<double> d_hidden(units), d_act2(flat), d_patches2, d_act1(arch.conv1_channels * p1);

    for (const auto& s : batch) {
        run_forward(params, *s.state, a);
        const double residual = s.target - a.q[s.action];
        out.loss += residual * residual * inv_batch;
        // dL/dQ(s, a) for the selected action only; other outputs carry no loss.
        const double d_q = -2.0 * residual * inv_batch;
        if (d_q == 0.0) continue;

        // fc2
        axpy(d_q, a.hidden.data(), g.fc2_w.values.data() + s.action * units, units);
        g.fc2_b.values[s.action] += d_q;
        const double* w_row = params.fc2_w.values.data() + s.action * units;
        for (std::size_t i = 0; i < units; ++i) d_hidden[i] = a.hidden[i] > 0.0 ? d_q * w_row[i] : 0.0;

        // fc1
        std::fill(d_act2.begin(), d_act2.end(), 0.0);
        for (std::size_t i = 0; i < units; ++i) {
            const double d = d_hidden[i];
            if (d == 0.0) continue;
            axpy(d, a.act2.data(), g.fc1_w.values.data() + i * flat, flat);
            g.fc1_b.values[i] += d;
            axpy(d, params.fc1_w.values.data() + i * flat, d_act2.data(), flat);
        }
        for (std::size_t j = 0; j < flat; ++j)
            if (a.act2[j] <= 0.0) d_act2[j] = 0.0;

        // conv2
        d_patches2.assign(fan2 * p2, 0.0);
        for (std::size_t c = 0; c < arch.conv2_channels; ++c) {
            const double* d_out = d_act2.data() + c * p2;
            double* gw = g.conv2_w.values.data() + c * fan2;
            const double* w = params.conv2_w.values.data() + c * fan2;
            for (std::size_t j = 0; j < fan2; ++j) {
                gw[j] += dot(d_out, a.patches2.data() + j * p2, p2);
                axpy(w[j], d_out, d_patches2.data() + j * p2, p2);
            }
            g.conv2_b.values[c] += std::accumulate(d_out, d_out + p2, 0.0);
        }
        std::fill(d_act1.begin(), d_act1.end(), 0.0);
        col2im_add(d_patches2, arch.conv1_channels, h1, w1, arch.conv2_kernel, arch.conv2_stride, h2, w2,
                   d_act1.data());
        for (std::size_t j = 0; j < d_act1.size(); ++j)
            if (a.act1[j] <= 0.0) d_act1[j] = 0.0;

        // conv1; the input itself needs no gradient.
        for (std::size_t c = 0; c < arch.conv1_channels; ++c) {
            const double* d_out = d_act1.data() + c * p1;
            double* gw = g.conv1_w.values.data() + c * fan1;
            for (std::size_t j = 0; j < fan1; ++j) gw[j] += dot(d_out, a.patches1.data() + j * p1, p1);
            g.conv1_b.values[c] += std::accumulate(d_out, d_out + p1, 0.0);
        }
    }

    Tensor* corrupted = nullptr;
    switch (fault) {
        case LayerFault::none: break;
        case LayerFault::conv1: corrupted = &g.conv1_b; break;
        case LayerFault::conv2: corrupted = &g.conv2_b; break;
        case LayerFault::fc1: corrupted = &g.fc1_b; break;
        case LayerFault::fc2: corrupted = &g.fc2_b; break;
    }
    if (corrupted != nullptr)
        for (double& v : corrupted->values) v *= 2.0;
    return out;
}

void sgd_step(QNetworkParams& params, const QNetworkGradients& gradients, double learning_rate) {
    check_same_shape(params, gradients);
    auto dst = params.tensors();
    const auto src = gradients.tensors();
    for (std::size_t i = 0; i < kParamTensorCount; ++i) axpy(-learning_rate, src[i]->values.data(),
                                                             dst[i]->values.data(), dst[i]->size());
}

double gradient_check(std::uint64_t seed, LayerFault fault) {
    const QNetArch arch = QNetArch::reduced();
    QNetworkParams params = init_params(arch, seed);
    Rng rng(derive_seed(seed, 1));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> bias(-0.1, 0.1);
    for (Tensor* t : {&params.conv1_b, &params.conv2_b, &params.fc1_b, &params.fc2_b})
        for (double& v : t->values) v = bias(rng);

    constexpr std::size_t kBatch = 4;
    std::vector<StateTensor> inputs(kBatch);
    std::vector<TrainingSample> batch(kBatch);
    std::uniform_int_distribution<std::size_t> action(0, arch.actions - 1);
    std::uniform_real_distribution<double> target(-2.0, 2.0);
    for (std::size_t i = 0; i < kBatch; ++i) {
        inputs[i] = StateTensor{arch.input_rows, arch.input_cols,
                                std::vector<double>(arch.input_rows * arch.input_cols)};
        for (double& v : inputs[i].values) v = unit(rng);
        batch[i] = TrainingSample{&inputs[i], action(rng), target(rng)};
    }

    const QNetworkGradients analytic = backward(params, batch, fault).gradients;
    constexpr double kStep = 1e-5;
    double worst = 0.0;
    auto tensors = params.tensors();
    const auto grads = analytic.tensors();
    for (std::size_t t = 0; t < kParamTensorCount; ++t) {
        for (std::size_t i = 0; i < tensors[t]->size(); ++i) {
            double& w = tensors[t]->values[i];
            const double saved = w;
            w = saved + kStep;
            const double up = loss(params, batch);
            w = saved - kStep;
            const double down = loss(params, batch);
            w = saved;
            const double numeric = (up - down) / (2.0 * kStep);
            const double exact = grads[t]->values[i];
            const double denom = std::max({std::abs(exact), std::abs(numeric), 1e-8});
            worst = std::max(worst, std::abs(exact - numeric) / denom);
        }
    }
    return worst;
}

}  // namespace antijam
