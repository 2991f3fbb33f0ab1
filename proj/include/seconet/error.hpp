#pragma once

#include <stdexcept>
#include <string>

namespace seconet {

// Bad or inconsistent configuration. The CLI maps this to exit code 1.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Not enough eligible adults to place the initial monogamous links.
class SeedingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A caller broke an operation's precondition (stale scores, vaccinating a
// non-susceptible person, ...).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace seconet
