#pragma once

#include <stdexcept>
#include <string>

namespace cyclogap {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad user-supplied arguments (wrong kind of number, malformed text, ...).
class InputError : public Error {
public:
    using Error::Error;
};

class NotOddPrimes : public InputError {
public:
    using InputError::InputError;
};

class LimitExceeded : public InputError {
public:
    using InputError::InputError;
};

class ParseError : public InputError {
public:
    using InputError::InputError;
};

class ZeroPolynomial : public InputError {
public:
    ZeroPolynomial() : InputError("operation is undefined for the zero polynomial") {}
};

class CancellationDetected : public InputError {
public:
    using InputError::InputError;
};

class MixedSigns : public InputError {
public:
    using InputError::InputError;
};

class RenderLimitExceeded : public InputError {
public:
    using InputError::InputError;
};

class NonExactDivision : public Error {
public:
    using Error::Error;
};

/// A coefficient left the range of the coefficient type.
class OverflowDetected : public Error {
public:
    using Error::Error;
};

/// An internal consistency check failed. Seeing one means there is a bug.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

class BudgetExceeded : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace cyclogap
