#pragma once

#include <stdexcept>
#include <string>

namespace sharpgrad {

/// Thrown when an argument lies outside the domain an operation is defined on.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown when an adaptive integrator or iterative solver fails to meet its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool condition, const std::string& message)
{
    if (!condition) throw DomainError(message);
}

} // namespace detail
} // namespace sharpgrad
