#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace nbcrit {

/// Argument outside the mathematical domain of a function (x outside (0,1], s <= 1, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Caller broke a documented precondition (index < 2, m not a common multiple, ...).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Requested work exceeds a configured limit.
class ResourceError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// A Cholesky pivot came out nonpositive.
class NumericalBreakdown : public std::runtime_error {
public:
    NumericalBreakdown(std::int64_t row, double pivot)
        : std::runtime_error("nonpositive Cholesky pivot at row " + std::to_string(row) +
                             " (pivot^2 = " + std::to_string(pivot) + ")"),
          row_(row),
          pivot_(pivot) {}

    std::int64_t row() const noexcept { return row_; }
    double pivot() const noexcept { return pivot_; }

private:
    std::int64_t row_;
    double pivot_;
};

/// Row cache or checkpoint failed verification.
class IntegrityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace nbcrit
