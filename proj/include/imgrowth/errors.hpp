#pragma once

#include <stdexcept>
#include <string>

namespace img {

// Malformed text input. Line and column are 1-based; 0 means unknown.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, int line = 0, int column = 0);
    int line() const { return line_; }
    int column() const { return column_; }
    // Message without the location suffix.
    const std::string& message() const { return message_; }

private:
    std::string message_;
    int line_;
    int column_;
};

// Well-formed input that violates a structural invariant.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A configured resource limit (states, tiles, memory) would be exceeded.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An argument outside its documented domain (letter out of range, unknown name).
class OutOfRange : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A file that could not be opened (missing) or read.
class FileError : public std::runtime_error {
public:
    FileError(const std::string& msg, bool missing) : std::runtime_error(msg), missing_(missing) {}
    bool missing() const { return missing_; }

private:
    bool missing_;
};

}  // namespace img
