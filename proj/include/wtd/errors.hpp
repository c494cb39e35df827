#ifndef WTD_ERRORS_HPP
#define WTD_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wtd {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed instance/model/assignment text; carries the 1-based line number.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Structurally invalid instance (self-loop, duplicate edge, bad endpoint,
/// isolated vertex, negative weight).
class ValidationError : public Error {
public:
    using Error::Error;
};

class GenerationFailed : public Error {
public:
    using Error::Error;
};

class TooLarge : public Error {
public:
    using Error::Error;
};

class InvalidOptions : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class MissingVariable : public Error {
public:
    using Error::Error;
};

class IndexOutOfRange : public Error {
public:
    using Error::Error;
};

/// The floating-point simplex gave up; callers should retry in exact mode.
class NumericalFailure : public Error {
public:
    using Error::Error;
};

class DivisionByZero : public Error {
public:
    using Error::Error;
};

}  // namespace wtd

#endif
