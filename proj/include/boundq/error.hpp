#pragma once

#include <stdexcept>
#include <string>

namespace boundq {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Scalars from two different fields were combined.
class FieldMismatch : public Error {
public:
    FieldMismatch() : Error("field mismatch") {}
    explicit FieldMismatch(const std::string& what) : Error("field mismatch: " + what) {}
};

/// A precondition on the arguments of an operation does not hold.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// An internal consistency check failed. Signals a bug, not bad input.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

namespace detail {
inline void ensure(bool cond, const char* msg)
{
    if (!cond) throw InvariantViolation(msg);
}
inline void ensure(bool cond, const std::string& msg)
{
    if (!cond) throw InvariantViolation(msg);
}
}  // namespace detail

}  // namespace boundq
