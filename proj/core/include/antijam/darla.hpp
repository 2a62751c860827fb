#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "antijam/env.hpp"
#include "antijam/qnet.hpp"
#include "antijam/random.hpp"

namespace antijam {

/// One experience (S_t, a_t, r_t, S_t+1). Consecutive transitions share state tensors.
struct Transition {
    std::shared_ptr<const StateTensor> state;
    std::size_t action = 0;
    double reward = 0.0;
    std::shared_ptr<const StateTensor> next_state;
};

/// Fixed-capacity FIFO of transitions; the oldest entry is overwritten once full.
class ReplayBuffer {
public:
    explicit ReplayBuffer(std::size_t capacity);

    void push(Transition t);
    std::size_t size() const { return items_.size(); }
    std::size_t capacity() const { return capacity_; }
    /// Index 0 is the oldest stored transition.
    const Transition& at(std::size_t i) const;

    /// Training starts only once strictly more than `min_replay` transitions are stored.
    bool ready(std::size_t min_replay) const { return size() > min_replay; }

    /// `batch_size` uniform draws with replacement, or nullopt when not ready.
    std::optional<std::vector<Transition>> sample(std::size_t batch_size, std::size_t min_replay,
                                                  Rng& rng) const;

private:
    std::size_t capacity_;
    std::size_t next_ = 0;  // slot overwritten by the next push once full
    std::vector<Transition> items_;
};

struct EpsilonSchedule {
    double epsilon = 1.0;
    double delta = 0.00045;
    double floor = 0.1;

    /// epsilon = max(floor, epsilon - delta)
    void update();
};

EpsilonSchedule epsilon_update(EpsilonSchedule schedule);

/// Index of the largest Q-value; the lowest index wins ties.
std::size_t argmax_action(std::span<const double> q_values);

/// With probability epsilon a uniform action, otherwise argmax. Always consumes one uniform draw
/// so the random stream does not depend on epsilon.
std::size_t select_action(std::span<const double> q_values, double epsilon, Rng& rng);

/// y = r + gamma * max_a' Q(S', a') for each transition, using `params` as given.
std::vector<double> td_target(std::span<const Transition> batch, const QNetworkParams& params,
                              double gamma);

struct TrainHyper {
    double gamma = 0.9;
    double learning_rate = 1e-3;
    std::size_t batch_size = 32;
    std::size_t buffer_capacity = 10000;
    std::size_t min_replay = 500;
    double epsilon_start = 1.0;
    double epsilon_delta = 0.00045;
    double epsilon_floor = 0.1;
    std::size_t decimation = 4;
    std::size_t throughput_window = 500;
    /// Layer sizes; input size and action count are taken from the environment.
    QNetArch layers;

    void validate() const;
    bool operator==(const TrainHyper&) const = default;
};

/// Network geometry for an environment: input is the decimated waterfall, one output per channel.
QNetArch network_arch(const EnvConfig& env, const TrainHyper& hyper);

struct EpochRecord {
    std::size_t epoch = 0;    // 1-based
    double epsilon = 0.0;     // exploration rate used to pick `action`
    double reward = 0.0;
    double throughput = 0.0;  // slot success fraction of this epoch
    double throughput_ma = 0.0;
    double loss = 0.0;        // minibatch loss before the update; 0 while replay is warming up
    std::size_t action = 0;

    bool operator==(const EpochRecord&) const = default;
};

struct TrainingReport {
    std::vector<EpochRecord> records;
    QNetworkParams params;
    std::vector<double> action_histogram;  // over all epochs, sums to 1 when non-empty

    /// Mean epoch throughput over the last `window` epochs (all epochs if fewer).
    double trailing_throughput(std::size_t window) const;
    std::vector<double> trailing_histogram(std::size_t window, std::size_t actions) const;
};

/// Invoked with the epoch number (0 = initial sensing) and the waterfall after that epoch.
using EpochObserver = std::function<void(std::size_t epoch, const WaterfallState&)>;

/// Runs the deep anti-jamming learning loop for `epochs` decision epochs. Deterministic per seed;
/// network weights are initialized with init_params(arch, seed).
TrainingReport train(const EnvConfig& env, const TrainHyper& hyper, std::size_t epochs,
                     std::uint64_t seed, const EpochObserver& observer = {});

struct Policy {
    enum class Kind { greedy, random, fixed };
    Kind kind = Kind::greedy;
    std::size_t action = 0;

    static Policy greedy() { return {Kind::greedy, 0}; }
    static Policy random() { return {Kind::random, 0}; }
    static Policy fixed(std::size_t a) { return {Kind::fixed, a}; }
    std::string name() const;
};

struct EvalMetrics {
    std::size_t epochs = 0;
    double throughput = 0.0;   // mean slot success fraction
    double mean_reward = 0.0;
    std::vector<double> action_histogram;
};

/// Plays `policy` without learning on a fresh environment reset with `seed`.
/// Greedy requires `params`; throws UsageError when it is null.
EvalMetrics evaluate(const QNetworkParams* params, const EnvConfig& env, std::size_t decimation,
                     std::size_t epochs, const Policy& policy, std::uint64_t seed);

/// Normalized counts; empty input gives all zeros.
std::vector<double> normalize_histogram(std::span<const std::size_t> counts);
/// Shannon entropy in nats.
double entropy(std::span<const double> probabilities);

}  // namespace antijam
