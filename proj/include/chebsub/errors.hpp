#pragma once

#include <stdexcept>
#include <string>

namespace chebsub {

/// Argument outside the mathematical domain of an operation (|x| > 1, d = 0, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Invalid algorithm parameter (oversampling factor, counts, grid sizes).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A matrix that must have full column rank does not.
/// Carries the offending smallest singular value (or eigenvalue, see message).
class SingularityError : public std::runtime_error {
public:
    SingularityError(const std::string& what, double smallest)
        : std::runtime_error(what), smallest_(smallest) {}

    [[nodiscard]] double smallest() const noexcept { return smallest_; }

private:
    double smallest_;
};

/// The subsampling lower-frame-bound inequality failed its verification.
class GuaranteeError : public std::runtime_error {
public:
    GuaranteeError(const std::string& what, double margin)
        : std::runtime_error(what), margin_(margin) {}

    [[nodiscard]] double margin() const noexcept { return margin_; }

private:
    double margin_;
};

}  // namespace chebsub
