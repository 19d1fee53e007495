#pragma once

#include <stdexcept>
#include <string>

namespace maplink {

/// Thrown when an input violates a documented precondition (bad file,
/// malformed record, empty label list, ...). The CLI maps this to exit code 2.
class InputError : public std::invalid_argument {
public:
    explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// Thrown when a metric matrix produces an impossible quadratic form.
class InvalidMetricError : public std::runtime_error {
public:
    explicit InvalidMetricError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when metric learning cannot satisfy the dissimilar-pair constraint.
class InfeasibleConstraintError : public std::runtime_error {
public:
    explicit InfeasibleConstraintError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace maplink
