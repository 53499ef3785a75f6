#pragma once

#include <stdexcept>
#include <string>

namespace permoment {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed text input (pattern strings, polynomial expressions, formulas).
class ParseError : public Error {
public:
    using Error::Error;
};

/// A brute-force or enumeration request exceeded the configured size cap.
class CapExceededError : public Error {
public:
    using Error::Error;
};

/// The linear system handed to the fitter has no unique solution.
class SingularSystemError : public Error {
public:
    using Error::Error;
};

/// A fitted combination failed to reproduce a held-out data point exactly.
class VerificationError : public Error {
public:
    using Error::Error;
};

/// Precondition violation on a library call.
class DomainError : public Error {
public:
    using Error::Error;
};

} // namespace permoment
