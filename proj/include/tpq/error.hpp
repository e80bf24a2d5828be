#pragma once

#include <stdexcept>
#include <string>

namespace tpq {

// Invalid configuration or parameters (bad rates, capacities, pairings, ...).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// A solve finished outside its residual tolerance.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

// File and stream failures.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace tpq
