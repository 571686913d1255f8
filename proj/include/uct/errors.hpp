#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace uct {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidWord : public Error {
public:
    using Error::Error;
};

class LengthMismatch : public Error {
public:
    using Error::Error;
};

class EndpointNotRepresentable : public Error {
public:
    using Error::Error;
};

class NotOnGrid : public Error {
public:
    using Error::Error;
};

class InvalidNumber : public Error {
public:
    using Error::Error;
};

class EmptyTree : public Error {
public:
    using Error::Error;
};

class TreeFormatError : public Error {
public:
    using Error::Error;
};

class SyntaxError : public Error {
public:
    SyntaxError(std::size_t position, const std::string& expected, const std::string& found)
        : Error("syntax error at position " + std::to_string(position) + ": expected " + expected +
                ", found " + found),
          position_(position),
          expected_(expected) {}

    std::size_t position() const noexcept { return position_; }
    const std::string& expected() const noexcept { return expected_; }

private:
    std::size_t position_;
    std::string expected_;
};

class UnknownFunction : public Error {
public:
    UnknownFunction(std::size_t position, const std::string& name)
        : Error("unknown function '" + name + "' at position " + std::to_string(position)),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

class DivisionByPossibleZero : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class RefinementBudgetExceeded : public Error {
public:
    using Error::Error;
};

class DepthExhausted : public Error {
public:
    using Error::Error;
};

}  // namespace uct
