#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qcs {

/// Base class for all qcs errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Source-text error with 1-based line/column position.
struct ParseError : Error {
    ParseError(std::size_t line, std::size_t column, const std::string& what)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line(line),
          column(column) {}

    std::size_t line;
    std::size_t column;
};

/// Raised when a valid program cannot be mapped onto the device (bad channel,
/// queue overflow, tick overflow).
struct ScheduleError : Error {
    using Error::Error;
};

/// Engine state-machine and capture violations.
struct EngineError : Error {
    using Error::Error;
};

/// Oscillation-fit failures (flat data, degenerate scans).
struct FitError : Error {
    using Error::Error;
};

}  // namespace qcs
