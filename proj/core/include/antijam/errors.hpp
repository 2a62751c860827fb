#pragma once

#include <stdexcept>
#include <string>

namespace antijam {

/// Invalid configuration value. `key()` names the offending setting when known.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& message) : std::runtime_error(message) {}
    ConfigError(std::string key, const std::string& message)
        : std::runtime_error(key + ": " + message), key_(std::move(key)) {}

    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

/// Shape or length mismatch between cooperating values.
class StructuralError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Operation invoked in the wrong lifecycle state (e.g. step before reset).
class StateError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Caller misuse such as an empty batch or a missing checkpoint.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// File system failure; the message carries the path.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace antijam
