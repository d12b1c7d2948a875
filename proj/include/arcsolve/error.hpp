#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace arcsolve {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed task document; the message names the JSON path.
class ParseError : public Error {
public:
    ParseError(std::string path, const std::string& what)
        : Error(path + ": " + what), path_(std::move(path)) {}
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

// Cell value outside the palette, or grid dimensions outside 1..30.
class ValidationError : public Error {
public:
    ValidationError(const std::string& what, int row = -1, int col = -1)
        : Error(what), row_(row), col_(col) {}
    int row() const noexcept { return row_; }
    int col() const noexcept { return col_; }

private:
    int row_;
    int col_;
};

// Markdown grid text with ragged rows.
class ShapeError : public Error {
public:
    using Error::Error;
};

// Markdown grid text with a non-digit cell.
class ValueError : public Error {
public:
    ValueError(const std::string& what, int row, int col)
        : Error(what), row_(row), col_(col) {}
    int row() const noexcept { return row_; }
    int col() const noexcept { return col_; }

private:
    int row_;
    int col_;
};

// A pattern whose parameters do not fit its kind, or a violated precondition.
class ContractError : public Error {
public:
    using Error::Error;
};

// Base for failures while executing a pattern on a particular grid.
class ApplyError : public Error {
public:
    using Error::Error;
};

// Result would exceed the 30x30 grid limit.
class BoundsError : public ApplyError {
public:
    using ApplyError::ApplyError;
};

// The grid does not meet the pattern's structural precondition
// (e.g. scale_down on a grid that is not a block replication).
class InapplicableError : public ApplyError {
public:
    using ApplyError::ApplyError;
};

// Remote proposer / sampling backend failure; carries the transport cause.
class BackendError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace arcsolve
