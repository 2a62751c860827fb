#include "antijam/darla.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include "antijam/errors.hpp"

namespace antijam {

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
    if (capacity == 0) throw ConfigError("train.buffer_capacity", "must be positive");
    items_.reserve(std::min<std::size_t>(capacity, 1 << 16));
}

void ReplayBuffer::push(Transition t) {
    if (items_.size() < capacity_) {
        items_.push_back(std::move(t));
        return;
    }
    items_[next_] = std::move(t);
    next_ = (next_ + 1) % capacity_;
}

const Transition& ReplayBuffer::at(std::size_t i) const {
    if (i >= items_.size()) throw StructuralError("ReplayBuffer::at: index out of range");
    // Once full, `next_` points at the oldest entry.
    return items_[(next_ + i) % items_.size()];
}

std::optional<std::vector<Transition>> ReplayBuffer::sample(std::size_t batch_size,
                                                            std::size_t min_replay, Rng& rng) const {
    if (!ready(min_replay) || items_.empty()) return std::nullopt;
    std::uniform_int_distribution<std::size_t> pick(0, items_.size() - 1);
    std::vector<Transition> batch;
    batch.reserve(batch_size);
    for (std::size_t i = 0; i < batch_size; ++i) batch.push_back(items_[pick(rng)]);
    return batch;
}

void EpsilonSchedule::update() { epsilon = std::max(floor, epsilon - delta); }

EpsilonSchedule epsilon_update(EpsilonSchedule schedule) {
    schedule.update();
    return schedule;
}

std::size_t argmax_action(std::span<const double> q_values) {
    if (q_values.empty()) throw UsageError("argmax_action: no Q-values");
    return static_cast<std::size_t>(std::max_element(q_values.begin(), q_values.end()) - q_values.begin());
}

std::size_t select_action(std::span<const double> q_values, double epsilon, Rng& rng) {
    if (q_values.empty()) throw UsageError("select_action: no Q-values");
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    if (coin(rng) < epsilon) {
        std::uniform_int_distribution<std::size_t> pick(0, q_values.size() - 1);
        return pick(rng);
    }
    return argmax_action(q_values);
}

std::vector<double> td_target(std::span<const Transition> batch, const QNetworkParams& params,
                              double gamma) {
    std::vector<double> y;
    y.reserve(batch.size());
    for (const auto& t : batch) {
        if (gamma == 0.0) {
            y.push_back(t.reward);
            continue;
        }
        const auto q_next = forward(params, *t.next_state);
        y.push_back(t.reward + gamma * *std::max_element(q_next.begin(), q_next.end()));
    }
    return y;
}

void TrainHyper::validate() const {
    if (!(gamma >= 0.0 && gamma < 1.0)) throw ConfigError("train.gamma", "must lie in [0, 1)");
    if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate))
        throw ConfigError("train.learning_rate", "must be a non-negative number");
    if (batch_size == 0) throw ConfigError("train.batch_size", "must be positive");
    if (buffer_capacity == 0) throw ConfigError("train.buffer_capacity", "must be positive");
    if (min_replay > buffer_capacity)
        throw ConfigError("train.min_replay", "must not exceed train.buffer_capacity");
    if (!(epsilon_floor >= 0.0 && epsilon_floor <= 1.0))
        throw ConfigError("train.epsilon_floor", "must lie in [0, 1]");
    if (!(epsilon_start >= epsilon_floor && epsilon_start <= 1.0))
        throw ConfigError("train.epsilon_start", "must lie in [epsilon_floor, 1]");
    if (!(epsilon_delta >= 0.0)) throw ConfigError("train.epsilon_delta", "must be non-negative");
    if (decimation == 0) throw ConfigError("network.decimation", "must be positive");
    if (throughput_window == 0) throw ConfigError("train.throughput_window", "must be positive");
}

QNetArch network_arch(const EnvConfig& env, const TrainHyper& hyper) {
    if (hyper.decimation == 0 || env.band.rows % hyper.decimation != 0 ||
        env.band.bins % hyper.decimation != 0) {
        throw ConfigError("network.decimation", "must divide band.rows and band.bins");
    }
    QNetArch arch = hyper.layers;
    arch.input_rows = env.band.rows / hyper.decimation;
    arch.input_cols = env.band.bins / hyper.decimation;
    arch.actions = env.channels.count;
    arch.validate();
    return arch;
}

double TrainingReport::trailing_throughput(std::size_t window) const {
    if (records.empty()) return 0.0;
    const std::size_t n = std::min(window, records.size());
    double sum = 0.0;
    for (auto it = records.end() - static_cast<std::ptrdiff_t>(n); it != records.end(); ++it) sum += it->throughput;
    return sum / static_cast<double>(n);
}

std::vector<double> TrainingReport::trailing_histogram(std::size_t window, std::size_t actions) const {
    std::vector<std::size_t> counts(actions, 0);
    const std::size_t n = std::min(window, records.size());
    for (auto it = records.end() - static_cast<std::ptrdiff_t>(n); it != records.end(); ++it)
        if (it->action < actions) ++counts[it->action];
    return normalize_histogram(counts);
}

TrainingReport train(const EnvConfig& env_cfg, const TrainHyper& hyper, std::size_t epochs,
                     std::uint64_t seed, const EpochObserver& observer) {
    hyper.validate();
    env_cfg.validate();
    const QNetArch arch = network_arch(env_cfg, hyper);

    TrainingReport report;
    report.params = init_params(arch, seed);
    report.records.reserve(epochs);

    SpectrumEnv env(env_cfg);
    Rng agent_rng(derive_seed(seed, 2));
    auto state = std::make_shared<const StateTensor>(preprocess(env.reset(derive_seed(seed, 1)), hyper.decimation));
    if (observer) observer(0, env.state());

    ReplayBuffer buffer(hyper.buffer_capacity);
    EpsilonSchedule epsilon{hyper.epsilon_start, hyper.epsilon_delta, hyper.epsilon_floor};
    std::deque<double> recent;
    double recent_sum = 0.0;
    std::vector<std::size_t> counts(arch.actions, 0);
    std::vector<TrainingSample> samples;

    for (std::size_t t = 1; t <= epochs; ++t) {
        const auto q = forward(report.params, *state);
        const std::size_t action = select_action(q, epsilon.epsilon, agent_rng);
        const StepOutcome outcome = env.step(Action{action});
        auto next = std::make_shared<const StateTensor>(preprocess(outcome.next_state, hyper.decimation));
        buffer.push(Transition{state, action, outcome.reward, next});

        double batch_loss = 0.0;
        if (auto batch = buffer.sample(hyper.batch_size, hyper.min_replay, agent_rng)) {
            // Targets use the weights from before this update.
            const auto targets = td_target(*batch, report.params, hyper.gamma);
            samples.clear();
            for (std::size_t i = 0; i < batch->size(); ++i)
                samples.push_back(TrainingSample{(*batch)[i].state.get(), (*batch)[i].action, targets[i]});
            auto result = backward(report.params, samples);
            sgd_step(report.params, result.gradients, hyper.learning_rate);
            batch_loss = result.loss;
        }

        const double throughput = outcome.success_fraction();
        recent.push_back(throughput);
        recent_sum += throughput;
        if (recent.size() > hyper.throughput_window) {
            recent_sum -= recent.front();
            recent.pop_front();
        }
        report.records.push_back(EpochRecord{t, epsilon.epsilon, outcome.reward, throughput,
                                             recent_sum / static_cast<double>(recent.size()),
                                             batch_loss, action});
        ++counts[action];
        epsilon.update();
        if (observer) observer(t, env.state());
        state = std::move(next);
    }
    report.action_histogram = normalize_histogram(counts);
    return report;
}

std::string Policy::name() const {
    switch (kind) {
        case Kind::greedy: return "greedy";
        case Kind::random: return "random";
        case Kind::fixed: return "fixed(" + std::to_string(action) + ")";
    }
    return "unknown";
}

EvalMetrics evaluate(const QNetworkParams* params, const EnvConfig& env_cfg, std::size_t decimation,
                     std::size_t epochs, const Policy& policy, std::uint64_t seed) {
    if (policy.kind == Policy::Kind::greedy && params == nullptr)
        throw UsageError("evaluate: greedy policy needs a checkpoint");
    if (policy.kind == Policy::Kind::fixed && policy.action >= env_cfg.channels.count)
        throw UsageError("evaluate: fixed action out of range");

    SpectrumEnv env(env_cfg);
    Rng rng(derive_seed(seed, 3));
    env.reset(seed);
    std::vector<std::size_t> counts(env.num_actions(), 0);
    EvalMetrics metrics;
    metrics.epochs = epochs;
    for (std::size_t t = 0; t < epochs; ++t) {
        std::size_t action = policy.action;
        if (policy.kind == Policy::Kind::greedy) {
            action = argmax_action(forward(*params, preprocess(env.state(), decimation)));
        } else if (policy.kind == Policy::Kind::random) {
            std::uniform_int_distribution<std::size_t> pick(0, env.num_actions() - 1);
            action = pick(rng);
        }
        const StepOutcome out = env.step(Action{action});
        metrics.throughput += out.success_fraction();
        metrics.mean_reward += out.reward;
        ++counts[action];
    }
    if (epochs > 0) {
        metrics.throughput /= static_cast<double>(epochs);
        metrics.mean_reward /= static_cast<double>(epochs);
    }
    metrics.action_histogram = normalize_histogram(counts);
    return metrics;
}

std::vector<double> normalize_histogram(std::span<const std::size_t> counts) {
    const double total = static_cast<double>(std::accumulate(counts.begin(), counts.end(), std::size_t{0}));
    std::vector<double> out(counts.size(), 0.0);
    if (total == 0.0) return out;
    for (std::size_t i = 0; i < counts.size(); ++i) out[i] = static_cast<double>(counts[i]) / total;
    return out;
}

double entropy(std::span<const double> probabilities) {
    double h = 0.0;
    for (double p : probabilities)
        if (p > 0.0) h -= p * std::log(p);
    return h;
}

}  // namespace antijam
