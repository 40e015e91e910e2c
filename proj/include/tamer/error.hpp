#pragma once

#include <stdexcept>
#include <string>

namespace tamer {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract input (bad JSON, non-prime modulus, zero s_i, ...).
class InputError : public Error {
public:
    using Error::Error;
};

/// An enumeration or storage budget tripped.
class BudgetExceeded : public Error {
public:
    BudgetExceeded(std::string budget, const std::string& what)
        : Error(what), budget_(std::move(budget)) {}
    const std::string& budget() const noexcept { return budget_; }

private:
    std::string budget_;
};

/// An internal consistency check failed. Never a valid input state.
class AssertionFailure : public Error {
public:
    using Error::Error;
};

}  // namespace tamer
