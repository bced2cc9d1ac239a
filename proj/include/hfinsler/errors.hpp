#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hfinsler {

/// Malformed or contract-violating input (wrong dimension, zero vector,
/// vector outside m, inadmissible norm data, ...).
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A closure or verification check failed on data that was otherwise well
/// formed (e.g. a computed abelian ideal that does not verify).
class InconsistentResult : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when a formula is evaluated outside its domain of validity. The
/// input is fine; the formula simply does not apply to it.
class Inapplicable : public std::runtime_error {
public:
    Inapplicable(std::string condition, double residual, double threshold)
        : std::runtime_error(condition + " not met: residual " + format(residual) +
                             ", threshold " + format(threshold)),
          condition_(std::move(condition)), residual_(residual),
          threshold_(threshold) {}
    Inapplicable(std::string condition, const std::string& message)
        : std::runtime_error(message), condition_(std::move(condition)),
          residual_(0.0), threshold_(0.0) {}

    const std::string& condition() const noexcept { return condition_; }
    double residual() const noexcept { return residual_; }
    double threshold() const noexcept { return threshold_; }

private:
    static std::string format(double x);

    std::string condition_;
    double residual_;
    double threshold_;
};

/// Every violation found while validating a space definition.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<std::string> violations);

    const std::vector<std::string>& violations() const noexcept {
        return violations_;
    }

private:
    std::vector<std::string> violations_;
};

} // namespace hfinsler
