#pragma once

#include <stdexcept>
#include <string>

namespace quivergit {

// Base class for all errors raised by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed textual or structural input (bad request file, dangling arrow
// endpoint, duplicate names).  Carries a 1-based line/column when the error
// originates from a request file; both are 0 for purely structural errors.
struct ParseError : Error {
    int line = 0;
    int column = 0;
    ParseError(const std::string& what, int line_ = 0, int column_ = 0)
        : Error(what), line(line_), column(column_) {}
};

// Input is well-formed but outside the supported scope (non-thin dimension
// vector, arrangement above the scan bound).
struct UnsupportedError : Error {
    explicit UnsupportedError(const std::string& what) : Error(what) {}
};

// Violation of an internal invariant; indicates a bug, not a user error.
struct InternalError : Error {
    explicit InternalError(const std::string& what) : Error(what) {}
};

}  // namespace quivergit
