#pragma once

#include <stdexcept>
#include <string>

namespace risrate {

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// z hit (or is too close to) a pole of the gamma function.
struct PoleError : DomainError {
    using DomainError::DomainError;
};

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// No vertical contour separates the two pole families of the integrand.
struct ContourError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConvergenceError : std::runtime_error {
    ConvergenceError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_rel_error(achieved) {}
    double achieved_rel_error;
};

// The moment E[(1+gamma)^-A] landed outside (0, 1]; indicates an
// evaluator failure upstream, not a recoverable condition.
struct MomentOutOfRange : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AsymptoteUndefined : DomainError {
    using DomainError::DomainError;
};

}  // namespace risrate
