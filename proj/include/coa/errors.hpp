#pragma once

#include <stdexcept>
#include <string>

namespace coa {

/// Invalid configuration, search space, or instance parameters.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// An operation was called outside its mathematical domain.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// The objective failed (threw or returned NaN) during a run.
struct EvaluationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input file; the message carries the path and location.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace coa
