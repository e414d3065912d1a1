#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace proxima {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed expression text. `offset` is the 0-based character position.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t offset)
        : Error(message + " at offset " + std::to_string(offset)), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// Variable reference that is not part of the declared binding set.
class BindError : public Error {
public:
    using Error::Error;
};

/// Division by zero, 0^negative, unbound variable or a non-finite result.
class EvalError : public Error {
public:
    using Error::Error;
};

/// Structural violation of a point set, mapping or problem instance.
class InstanceError : public Error {
public:
    using Error::Error;
};

/// Piecewise mapping with no active branch for the requested point.
class MappingError : public EvalError {
public:
    using EvalError::EvalError;
};

/// Problem-definition file violates the schema. `line` is 1-based, 0 if unknown.
class SchemaError : public Error {
public:
    SchemaError(const std::string& message, int line)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
          line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

/// Missing or unreadable input file.
class FileError : public Error {
public:
    using Error::Error;
};

/// Lookup of an unknown corpus entry, check name or similar.
class UnknownNameError : public Error {
public:
    using Error::Error;
};

}  // namespace proxima
