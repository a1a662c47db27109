#pragma once

#include <stdexcept>
#include <string>

namespace epidyn {

// Bad user input: malformed config, parameter range violations, unusable options.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A numerical procedure failed: singular matrix, divergent iteration, step underflow.
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace epidyn
