#pragma once

#include <stdexcept>
#include <string>

namespace ringdelay {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller broke a documented precondition (dimension mismatch, out-of-range lookup, ...).
class ContractViolation : public Error {
public:
    using Error::Error;
};

/// Invalid parameters or configuration, detected before any computation.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A numerical procedure failed to produce a certified result.
class NumericalFailure : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace ringdelay
