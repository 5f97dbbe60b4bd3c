#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace docsolve {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Syntax error while parsing an expression. Carries the byte offset of the
/// offending token and a description of what was expected there.
class ParseError : public Error {
public:
    ParseError(std::size_t offset, const std::string& expected)
        : Error("syntax error at offset " + std::to_string(offset) + ": expected " + expected),
          offset_(offset),
          expected_(expected) {}

    std::size_t offset() const { return offset_; }
    const std::string& expected() const { return expected_; }

private:
    std::size_t offset_;
    std::string expected_;
};

/// Mathematical domain violation: ln of a non-positive number, division by
/// zero, a Gamma pole, an unbound variable, an operator order outside its
/// admissible range, and the like.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(what) {}
};

/// An iterative process failed to converge (Newton step, series summation,
/// sweep iteration). The message identifies where.
class ConvergenceError : public Error {
public:
    explicit ConvergenceError(const std::string& what) : Error(what) {}
};

} // namespace docsolve
