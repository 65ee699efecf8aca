#pragma once

#include <stdexcept>
#include <string>

namespace swarmform {

/// Invalid scenario or parameter values. CLI exit code 1.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A state became non-finite during integration. CLI exit code 2.
class DivergenceError : public std::runtime_error {
public:
    DivergenceError(const std::string& what, int agent, long step = -1)
        : std::runtime_error(what), agent_(agent), step_(step) {}

    int agent() const { return agent_; }
    long step() const { return step_; }

private:
    int agent_;
    long step_;
};

/// File could not be read or written. CLI exit code 3.
class IoError : public std::runtime_error {
public:
    IoError(const std::string& what, std::string path)
        : std::runtime_error(what + ": " + path), path_(std::move(path)) {}

    const std::string& path() const { return path_; }

private:
    std::string path_;
};

}  // namespace swarmform
