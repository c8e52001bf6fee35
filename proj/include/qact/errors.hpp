#pragma once

#include <stdexcept>
#include <string>

namespace qact {

/// Base class for all toolkit failures.
class Error : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

/// Malformed input document: bad JSON, wrong types, unknown keys.
class ParseError : public Error {
 public:
    using Error::Error;
};

/// Lexical, syntactic or semantic error in an OpenQASM source.
/// Positions are 1-based; line 0 means the error has no source location
/// (e.g. it was raised while flattening a programmatically built AST).
class QasmError : public Error {
 public:
    QasmError(const std::string& message, int line = 0, int column = 0)
        : Error(format(message, line, column)), line_(line), column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

 private:
    static std::string format(const std::string& message, int line, int column) {
        if (line <= 0) {
            return message;
        }
        return std::to_string(line) + ":" + std::to_string(column) + ": " + message;
    }

    int line_;
    int column_;
};

/// Well-formed inputs, unsatisfiable request (empty circuit attach,
/// incomplete card for rendering, no profiles to rank, ...).
class DomainError : public Error {
 public:
    using Error::Error;
};

}  // namespace qact
