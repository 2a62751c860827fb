#include "antijam/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "antijam/errors.hpp"

namespace antijam {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string unquote(std::string_view key, std::string_view v) {
    if (v.size() >= 2 && (v.front() == '"' || v.front() == '\'')) {
        if (v.back() != v.front()) throw ConfigError(std::string(key), "unterminated string");
        return std::string(v.substr(1, v.size() - 2));
    }
    return std::string(v);
}

double parse_double(std::string_view key, std::string_view v) {
    v = trim(v);
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size() || v.empty())
        throw ConfigError(std::string(key), "expected a number, got '" + std::string(v) + "'");
    return out;
}

std::uint64_t parse_u64(std::string_view key, std::string_view v) {
    v = trim(v);
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size() || v.empty())
        throw ConfigError(std::string(key), "expected a non-negative integer, got '" + std::string(v) + "'");
    return out;
}

std::vector<double> parse_list(std::string_view key, std::string_view v) {
    v = trim(v);
    if (!v.empty() && v.front() == '[') {
        if (v.back() != ']') throw ConfigError(std::string(key), "unterminated list");
        v = trim(v.substr(1, v.size() - 2));
    }
    std::vector<double> out;
    while (!v.empty()) {
        const auto comma = v.find(',');
        out.push_back(parse_double(key, v.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        v = trim(v.substr(comma + 1));
        if (v.empty()) throw ConfigError(std::string(key), "trailing comma in list");
    }
    return out;
}

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

std::string format_list(const std::vector<double>& values) {
    std::string out = "[";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ", ";
        out += format_double(values[i]);
    }
    return out + "]";
}

std::string quote(const std::string& s) { return "\"" + s + "\""; }

struct Field {
    const char* key;
    std::function<void(ExperimentConfig&, std::string_view key, std::string_view value)> set;
    std::function<std::string(const ExperimentConfig&)> get;
};

template <typename Access>
Field real(const char* key, Access access) {
    return {key,
            [access](ExperimentConfig& c, std::string_view k, std::string_view v) { access(c) = parse_double(k, v); },
            [access](const ExperimentConfig& c) { return format_double(access(c)); }};
}

template <typename Access>
Field count(const char* key, Access access) {
    return {key,
            [access](ExperimentConfig& c, std::string_view k, std::string_view v) {
                access(c) = static_cast<std::remove_cvref_t<decltype(access(c))>>(parse_u64(k, v));
            },
            [access](const ExperimentConfig& c) { return std::to_string(access(c)); }};
}

template <typename Access>
Field list(const char* key, Access access) {
    return {key,
            [access](ExperimentConfig& c, std::string_view k, std::string_view v) { access(c) = parse_list(k, v); },
            [access](const ExperimentConfig& c) { return format_list(access(c)); }};
}

const std::vector<Field>& fields() {
    static const std::vector<Field> table = [] {
        using C = ExperimentConfig;
        std::vector<Field> f;
        f.push_back(count("seed", [](auto& c) -> auto& { return c.seed; }));
        f.push_back(count("epochs", [](auto& c) -> auto& { return c.epochs; }));
        f.push_back(count("eval_epochs", [](auto& c) -> auto& { return c.eval_epochs; }));
        f.push_back({"output_dir",
                     [](C& c, std::string_view k, std::string_view v) { c.output_dir = unquote(k, v); },
                     [](const C& c) { return quote(c.output_dir); }});

        f.push_back(real("band.lo_mhz", [](auto& c) -> auto& { return c.band.lo_mhz; }));
        f.push_back(real("band.hi_mhz", [](auto& c) -> auto& { return c.band.hi_mhz; }));
        f.push_back(real("band.bin_width_mhz", [](auto& c) -> auto& { return c.band.bin_width_mhz; }));
        f.push_back(real("band.slot_ms", [](auto& c) -> auto& { return c.band.slot_ms; }));
        f.push_back(count("band.rows", [](auto& c) -> auto& { return c.band.rows; }));
        f.push_back(count("band.bins", [](auto& c) -> auto& { return c.band.bins; }));
        f.push_back(count("band.epoch_slots", [](auto& c) -> auto& { return c.band.epoch_slots; }));

        f.push_back(real("user.power_dbm", [](auto& c) -> auto& { return c.user.power_dbm; }));
        f.push_back(real("user.bandwidth_mhz", [](auto& c) -> auto& { return c.user.bandwidth_mhz; }));
        f.push_back(real("user.rolloff", [](auto& c) -> auto& { return c.user.rolloff; }));
        f.push_back(real("user.first_center_mhz", [](auto& c) -> auto& { return c.channels.first_center_mhz; }));
        f.push_back(real("user.channel_step_mhz", [](auto& c) -> auto& { return c.channels.step_mhz; }));
        f.push_back(count("user.channels", [](auto& c) -> auto& { return c.channels.count; }));

        f.push_back(real("reward.rate", [](auto& c) -> auto& { return c.reward.rate; }));
        f.push_back(real("reward.switch_cost", [](auto& c) -> auto& { return c.reward.switch_cost; }));
        f.push_back(real("reward.sinr_threshold_db", [](auto& c) -> auto& { return c.reward.sinr_threshold_db; }));
        f.push_back(real("reward.noise_power_dbm", [](auto& c) -> auto& { return c.reward.noise_power_dbm; }));

        f.push_back({"jammer.kind",
                     [](C& c, std::string_view k, std::string_view v) {
                         const std::string name = unquote(k, v);
                         if (name == "none") {
                             c.jammer_enabled = false;
                         } else {
                             c.jammer_enabled = true;
                             c.jammer.kind = parse_jammer_kind(name);
                         }
                     },
                     [](const C& c) { return quote(c.jammer_enabled ? to_string(c.jammer.kind) : "none"); }});
        f.push_back(real("jammer.power_dbm", [](auto& c) -> auto& { return c.jammer.waveform.power_dbm; }));
        f.push_back(real("jammer.bandwidth_mhz", [](auto& c) -> auto& { return c.jammer.waveform.bandwidth_mhz; }));
        f.push_back(real("jammer.rolloff", [](auto& c) -> auto& { return c.jammer.waveform.rolloff; }));
        f.push_back(real("jammer.sweep_speed_mhz_per_ms", [](auto& c) -> auto& { return c.jammer.sweep_speed_mhz_per_ms; }));
        f.push_back(real("jammer.sweep_start_mhz", [](auto& c) -> auto& { return c.jammer.sweep_start_mhz; }));
        f.push_back(list("jammer.comb_centers_mhz", [](auto& c) -> auto& { return c.jammer.comb_centers_mhz; }));
        f.push_back(real("jammer.random_dwell_ms", [](auto& c) -> auto& { return c.jammer.random_dwell_ms; }));
        f.push_back(list("jammer.random_grid_mhz", [](auto& c) -> auto& { return c.jammer.random_grid_mhz; }));
        f.push_back(count("jammer.window_epochs", [](auto& c) -> auto& { return c.jammer.window_epochs; }));

        f.push_back(count("network.decimation", [](auto& c) -> auto& { return c.train.decimation; }));
        f.push_back(count("network.conv1_channels", [](auto& c) -> auto& { return c.train.layers.conv1_channels; }));
        f.push_back(count("network.conv1_kernel", [](auto& c) -> auto& { return c.train.layers.conv1_kernel; }));
        f.push_back(count("network.conv1_stride", [](auto& c) -> auto& { return c.train.layers.conv1_stride; }));
        f.push_back(count("network.conv2_channels", [](auto& c) -> auto& { return c.train.layers.conv2_channels; }));
        f.push_back(count("network.conv2_kernel", [](auto& c) -> auto& { return c.train.layers.conv2_kernel; }));
        f.push_back(count("network.conv2_stride", [](auto& c) -> auto& { return c.train.layers.conv2_stride; }));
        f.push_back(count("network.fc1_units", [](auto& c) -> auto& { return c.train.layers.fc1_units; }));

        f.push_back(real("train.gamma", [](auto& c) -> auto& { return c.train.gamma; }));
        f.push_back(real("train.learning_rate", [](auto& c) -> auto& { return c.train.learning_rate; }));
        f.push_back(count("train.batch_size", [](auto& c) -> auto& { return c.train.batch_size; }));
        f.push_back(count("train.buffer_capacity", [](auto& c) -> auto& { return c.train.buffer_capacity; }));
        f.push_back(count("train.min_replay", [](auto& c) -> auto& { return c.train.min_replay; }));
        f.push_back(real("train.epsilon_start", [](auto& c) -> auto& { return c.train.epsilon_start; }));
        f.push_back(real("train.epsilon_delta", [](auto& c) -> auto& { return c.train.epsilon_delta; }));
        f.push_back(real("train.epsilon_floor", [](auto& c) -> auto& { return c.train.epsilon_floor; }));
        f.push_back(count("train.throughput_window", [](auto& c) -> auto& { return c.train.throughput_window; }));
        return f;
    }();
    return table;
}

const Field& find_field(std::string_view key) {
    const auto& table = fields();
    const auto it = std::find_if(table.begin(), table.end(), [&](const Field& f) { return key == f.key; });
    if (it == table.end()) throw ConfigError(std::string(key), "unknown configuration key");
    return *it;
}

// Drops a trailing '#' comment that is not inside quotes.
std::string_view strip_comment(std::string_view line) {
    char quote_char = 0;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quote_char) {
            if (ch == quote_char) quote_char = 0;
        } else if (ch == '"' || ch == '\'') {
            quote_char = ch;
        } else if (ch == '#') {
            return line.substr(0, i);
        }
    }
    return line;
}

}  // namespace

EnvConfig ExperimentConfig::env() const {
    EnvConfig e;
    e.band = band;
    e.channels = channels;
    e.user = user;
    e.reward = reward;
    e.jammers.clear();
    if (jammer_enabled) e.jammers.push_back(jammer);
    return e;
}

void ExperimentConfig::validate() const {
    const EnvConfig e = env();
    e.validate();
    train.validate();
    network_arch(e, train);
}

std::vector<std::string> config_keys() {
    std::vector<std::string> keys;
    for (const auto& f : fields()) keys.emplace_back(f.key);
    return keys;
}

void set_config_value(ExperimentConfig& cfg, std::string_view key, std::string_view value) {
    find_field(key).set(cfg, key, trim(value));
}

ExperimentConfig parse_config(std::string_view text) {
    ExperimentConfig cfg;
    std::set<std::string, std::less<>> seen;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        line = trim(strip_comment(line));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("line " + std::to_string(line_no), "expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("line " + std::to_string(line_no), "missing key");
        if (!seen.insert(key).second) throw ConfigError(key, "key given more than once");
        if (value.empty()) throw ConfigError(key, "missing value");
        set_config_value(cfg, key, value);
    }
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file: " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    ExperimentConfig cfg = parse_config(buffer.str());
    cfg.validate();
    return cfg;
}

std::string serialize_config(const ExperimentConfig& cfg) {
    std::string out;
    for (const auto& f : fields()) {
        out += f.key;
        out += " = ";
        out += f.get(cfg);
        out += '\n';
    }
    return out;
}

}  // namespace antijam
