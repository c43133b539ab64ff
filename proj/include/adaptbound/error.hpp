#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace adaptbound {

// Base for every error raised by the library. Messages name the offending
// ids, indices or lines so callers can surface them unchanged.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input violates a type invariant or an ordering rule.
class ValidationError : public Error {
public:
    using Error::Error;
};

// User-supplied alpha values imply a non-nested error cascade.
class InconsistencyError : public Error {
public:
    InconsistencyError(const std::string& what, std::size_t first_rank)
        : Error(what), first_rank_(first_rank) {}

    // 1-based rank of the first state whose cascade entry increases.
    std::size_t first_rank() const noexcept { return first_rank_; }

private:
    std::size_t first_rank_;
};

// Prediction / correctness records do not cover the state space exactly.
class IngestError : public Error {
public:
    using Error::Error;
};

// Every model is perfect on the matrix, so no alpha entry is defined.
class UndefinedAlphaError : public Error {
public:
    using Error::Error;
};

// File could not be parsed; line is 1-based, 0 when not line-specific.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line) : Error(what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Synthetic generator could not reach the requested alpha_min.
class UnreachableTargetError : public Error {
public:
    UnreachableTargetError(const std::string& what, std::optional<double> closest)
        : Error(what), closest_(closest) {}

    // Closest alpha_min seen during the search; empty if never defined.
    std::optional<double> closest() const noexcept { return closest_; }

private:
    std::optional<double> closest_;
};

} // namespace adaptbound
