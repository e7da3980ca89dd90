#pragma once

#include <stdexcept>
#include <string>

namespace hjc {

// Thrown for malformed or out-of-range physical/model parameters.
class param_error : public std::invalid_argument {
public:
    explicit param_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// Thrown when a config file cannot be parsed or contains unknown keys.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown when the iterative eigensolver fails to reach the requested
// residual within its iteration budget.  Carries the best residual seen.
class solver_error : public std::runtime_error {
public:
    solver_error(const std::string& msg, double best_residual)
        : std::runtime_error(msg), best_residual_(best_residual) {}
    double best_residual() const noexcept { return best_residual_; }

private:
    double best_residual_;
};

// Thrown on file read/write failures.
class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace hjc
