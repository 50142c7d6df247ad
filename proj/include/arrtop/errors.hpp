#pragma once

#include <stdexcept>
#include <string>

namespace arrtop {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: bad JSON, wrong field types, unparsable rationals.
class SchemaError : public Error {
public:
    using Error::Error;
};

/// The input is well formed but outside the class an operation accepts
/// (non-cellular stratification, non-separating model, bound exceeded, ...).
class ModelError : public Error {
public:
    using Error::Error;
};

/// A structural identity that must hold failed at runtime.  Either the model
/// violates an assumption the construction relies on or there is a bug.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

}  // namespace arrtop
