#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stogen {

// Base class for domain errors. The CLI maps these to exit code 1 and
// serializes kind() plus the message into the error report.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& msg)
        : std::runtime_error(msg), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

class NegativeEntry : public Error {
public:
    NegativeEntry(std::size_t row, std::size_t col, const std::string& value)
        : Error("negative_entry",
                "negative entry " + value + " at row " + std::to_string(row + 1) +
                    ", column " + std::to_string(col + 1)),
          row(row), col(col) {}
    std::size_t row, col;
};

class ColumnSumMismatch : public Error {
public:
    ColumnSumMismatch(std::size_t col, std::string sum)
        : Error("column_sum_mismatch",
                "column " + std::to_string(col + 1) + " sums to " + sum + ", expected 1"),
          col(col), sum(std::move(sum)) {}
    std::size_t col;
    std::string sum;
};

class DimMismatch : public Error {
public:
    explicit DimMismatch(const std::string& msg) : Error("dim_mismatch", msg) {}
};

class DimTooLarge : public Error {
public:
    DimTooLarge(std::size_t dim, std::size_t max)
        : Error("dim_too_large", "dimension " + std::to_string(dim) +
                                     " exceeds supported maximum " + std::to_string(max)),
          dim(dim), max(max) {}
    std::size_t dim, max;
};

class CapExceeded : public Error {
public:
    explicit CapExceeded(std::size_t cap)
        : Error("cap_exceeded", "closure exceeded element cap " + std::to_string(cap)),
          cap(cap) {}
    std::size_t cap;
};

class PreconditionViolated : public Error {
public:
    explicit PreconditionViolated(const std::string& msg)
        : Error("precondition_violated", msg) {}
};

class NotABaseCase : public Error {
public:
    explicit NotABaseCase(const std::string& msg) : Error("not_a_base_case", msg) {}
};

class ParameterOrderViolated : public Error {
public:
    explicit ParameterOrderViolated(const std::string& msg)
        : Error("parameter_order_violated", msg) {}
};

class InternalInvariantViolation : public Error {
public:
    explicit InternalInvariantViolation(const std::string& msg)
        : Error("internal_invariant_violation", msg) {}
};

// The input admits no factorization over the fixed generating set: the
// three-dimensional convex generator family is order-constrained, and the
// indivisible matrices whose parameter reading is cyclically misordered lie
// outside every permutation sandwich of it.
class OutsideGeneratingSet : public Error {
public:
    explicit OutsideGeneratingSet(const std::string& msg)
        : Error("outside_generating_set", msg) {}
};

// Malformed input (bad JSON, bad rational literal, unreadable file).
// The CLI maps this to exit code 2.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace stogen
