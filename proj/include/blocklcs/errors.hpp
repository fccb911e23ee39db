#pragma once

#include <stdexcept>
#include <string>

namespace blocklcs {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parameter lies outside the model's domain (l < 2, n = 0, bad step, ...).
class InvalidParameter : public Error {
public:
    using Error::Error;
};

/// Input size exceeds a configured guard (oracle size, enumeration size).
class GuardExceeded : public Error {
public:
    using Error::Error;
};

/// An alignment is inconsistent with the strings it claims to align.
class InvalidAlignment : public Error {
public:
    using Error::Error;
};

class InvalidModification : public Error {
public:
    using Error::Error;
};

/// No eligible (l-1)-block or (l+1)-block exists, so the conditional
/// expectation of the modification is undefined.
class UndefinedConditional : public Error {
public:
    using Error::Error;
};

/// A ratio in a bound or objective has a zero denominator.
class UndefinedValue : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class DegenerateInput : public Error {
public:
    using Error::Error;
};

/// A documented precondition of an inequality check does not hold.
class PreconditionViolation : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace blocklcs
