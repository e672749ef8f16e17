#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace persistry {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on an argument does not hold (wrong dimension, too few points, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Malformed CSV input. Row and column are 1-based; 0 means "not applicable".
class ParseError : public Error {
public:
    ParseError(std::string message, std::size_t row, std::string column)
        : Error(format(message, row, column)), row_(row), column_(std::move(column)) {}

    std::size_t row() const noexcept { return row_; }
    const std::string& column() const noexcept { return column_; }

private:
    static std::string format(const std::string& message, std::size_t row, const std::string& column) {
        std::string out = message;
        if (row != 0) out += " (row " + std::to_string(row);
        if (!column.empty()) out += (row != 0 ? ", column " : " (column ") + column;
        if (row != 0 || !column.empty()) out += ")";
        return out;
    }

    std::size_t row_;
    std::string column_;
};

/// Parsed data violates a domain invariant (duplicate standing, unknown player, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A name (team, player) could not be resolved.
class NotFound : public Error {
public:
    using Error::Error;
};

}  // namespace persistry
