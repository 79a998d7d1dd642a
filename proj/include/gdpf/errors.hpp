#pragma once

#include <stdexcept>
#include <string>

namespace gdpf {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A value violates its documented range (hyperparameters, scenario specs, inputs).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A link prior was asked for data the measurement does not carry
/// (e.g. bounding-box mode on a measurement without extent).
class ModeError : public Error {
public:
    using Error::Error;
};

/// Non-finite values entered or left a numeric routine.
class NumericError : public Error {
public:
    using Error::Error;
};

/// The innovation covariance could not be factorized.
class SingularInnovationError : public NumericError {
public:
    using NumericError::NumericError;
};

/// Every candidate of a score row is zero.
class DegenerateRowError : public Error {
public:
    using Error::Error;
};

/// File access or parse failure; message carries path and line.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace gdpf
