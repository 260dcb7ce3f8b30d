#pragma once

#include <stdexcept>
#include <string>

namespace pvshort {

/// Base for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain (q = 0, |x| >= 1 where a small
/// angle is required, ...).
struct DomainError : Error {
    using Error::Error;
};

/// Input exceeds a configured support ceiling or work bound.
struct RangeError : Error {
    using Error::Error;
};

/// Discrete-log table build would exceed the configured memory cap.
struct MemoryBudgetError : Error {
    using Error::Error;
};

/// The summation range is too short for the split-point construction
/// (q^{1/3+eps} < 5 q^gamma + 6). Widen eps or lower gamma.
struct RangeTooShortError : Error {
    using Error::Error;
};

/// N exceeds the q^{1-gamma} ceiling required by the decomposition.
struct HypothesisError : Error {
    using Error::Error;
};

/// Operation requires a primitive character.
struct ImprimitiveError : Error {
    using Error::Error;
};

/// Empty input where at least one record is required.
struct EmptyInputError : Error {
    using Error::Error;
};

/// Bad CLI arguments or config file contents.
struct UsageError : Error {
    using Error::Error;
};

/// An inline exactness check failed while running a survey. Indicates an
/// implementation bug, not a mathematical event.
struct OracleError : Error {
    using Error::Error;
};

/// Internal consistency violation (e.g. chi(-1) evaluating to anything
/// other than +1 or -1).
struct InternalError : Error {
    using Error::Error;
};

}  // namespace pvshort
