#pragma once

#include <stdexcept>
#include <string>

namespace mrecon {

/// Base for every error raised by the library. The CLI maps these to exit code 1.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// CSV header or layout does not match the expected provider export.
class FormatError : public Error {
public:
    using Error::Error;
};

/// A single CSV data row could not be parsed.
class RowError : public Error {
public:
    RowError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Not enough observations for the requested computation.
class InsufficientDataError : public Error {
public:
    using Error::Error;
};

/// A PriceSeries invariant is violated.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Coding scheme with zero spread (e.g. constant returns).
class DegenerateSchemeError : public Error {
public:
    using Error::Error;
};

/// Trend evaluates to zero, so rescaling would divide by zero.
class SingularTrendError : public Error {
public:
    SingularTrendError(std::size_t index)
        : Error("trend is zero at index " + std::to_string(index)), index_(index) {}

    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

/// Least-squares problem has fewer points than unknowns.
class UnderdeterminedFitError : public Error {
public:
    using Error::Error;
};

/// log of a non-positive moment requested by the scaling fit.
class UndefinedLogError : public Error {
public:
    using Error::Error;
};

/// Transition model holds no observations at any context length.
class NoDistributionError : public Error {
public:
    using Error::Error;
};

}  // namespace mrecon
