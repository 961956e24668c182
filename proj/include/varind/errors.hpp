#pragma once

#include <stdexcept>
#include <string>

namespace varind {

/// Base class for all library errors.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed algebra file or term text. Positions are 1-based.
struct parse_error : error {
    parse_error(const std::string& what, int line_, int col_)
        : error(what + " (line " + std::to_string(line_) + ", column " +
                std::to_string(col_) + ")"),
          line(line_),
          col(col_) {}
    int line;
    int col;
};

/// An operation was called with inputs that violate its contract.
struct precondition_error : error {
    using error::error;
};

/// A theorem hypothesis required by an operation does not hold for the inputs.
struct hypothesis_error : error {
    using error::error;
};

/// The requested computation does not fit the supported coding space.
struct capacity_error : error {
    using error::error;
};

/// A closure or enumeration hit its configured size limit.
struct limit_error : error {
    using error::error;
};

}  // namespace varind
