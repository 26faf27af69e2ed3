#pragma once

#include <stdexcept>
#include <string>

namespace jd {

// Malformed or inconsistent input (bad JSON, wrong dimension, det != 1, ...).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An enumeration would exceed the configured word budget.
class BudgetError : public std::runtime_error {
public:
    BudgetError(const std::string& what, std::size_t bound)
        : std::runtime_error(what + " (budget " + std::to_string(bound) + " products)"), bound_(bound) {}
    std::size_t bound() const { return bound_; }

private:
    std::size_t bound_;
};

// A documented precondition of an operation does not hold.
class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace jd
