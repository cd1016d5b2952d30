#pragma once

#include <stdexcept>
#include <string>

namespace ucw {

/// Bad argument or malformed point/parameter.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A modulus parameter lies outside what the modulus supports, or it
/// produced a value outside (0,1].
class ModulusError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An iterate left the declared domain by more than the tolerance band.
class DomainViolation : public std::runtime_error {
public:
    DomainViolation(const std::string& what, std::size_t step)
        : std::runtime_error(what + " (step " + std::to_string(step) + ")"), step_(step) {}

    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

/// Optimizer or bound evaluation failed (non-convergence, overflow).
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A theorem hypothesis does not hold for the supplied inputs.
class HypothesisError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Experiment configuration is inconsistent or incomplete.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace ucw
