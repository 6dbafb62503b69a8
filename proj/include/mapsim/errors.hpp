#pragma once

#include <stdexcept>
#include <string>

namespace mapsim {

// Invalid configuration or parameter domain; the CLI maps this to exit code 1.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Failure while executing an otherwise valid scenario; CLI exit code 2.
struct SimError : std::runtime_error {
    explicit SimError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace mapsim
