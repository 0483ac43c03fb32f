#pragma once
#include <stdexcept>
#include <string>

namespace cavrep {

// User-facing configuration/parameter problem. The CLI maps it to exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Violated internal consistency condition (normalization failure, degenerate
// intermediate quantity). The CLI maps it to exit code 3.
class InternalError : public std::runtime_error {
public:
    explicit InternalError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace cavrep
