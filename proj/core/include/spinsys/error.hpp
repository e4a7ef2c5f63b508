#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace spinsys {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input or a violated precondition.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// Text that could not be parsed (field, ideal, form or element strings).
class ParseError : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

// Requested operation exists but is outside the supported scope.
class UnsupportedOperation : public Error {
public:
    using Error::Error;
};

// An exhaustive scan would exceed the caller's budget.
class BudgetExceeded : public Error {
public:
    BudgetExceeded(const std::string& what, double required, std::uint64_t budget)
        : Error(what + ": requires " + format_count(required) + " candidates, budget is " +
                std::to_string(budget)),
          required_(required),
          budget_(budget) {}

    double required() const noexcept { return required_; }
    std::uint64_t budget() const noexcept { return budget_; }

private:
    static std::string format_count(double v) {
        if (v < 1e18) return std::to_string(static_cast<std::uint64_t>(v));
        return std::to_string(v);
    }

    double required_;
    std::uint64_t budget_;
};

// A mathematical hypothesis required by a bound does not hold for the input
// (bad prime in the level, non-admissible form, ...).
class HypothesisViolation : public Error {
public:
    using Error::Error;
};

// Floating point consistency check failed beyond tolerance.
class NumericError : public Error {
public:
    using Error::Error;
};

}  // namespace spinsys
