#pragma once

#include <stdexcept>
#include <string>

namespace icslab {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on the inputs was violated (bad parameters, empty data).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A matrix that must be inverted or factored is singular.
class SingularMatrix : public Error {
public:
    using Error::Error;
};

/// The data cannot support the estimator (zero spread, every start degenerate).
class DegenerateData : public Error {
public:
    using Error::Error;
};

/// An iterative estimator hit its iteration cap.
class NonConvergence : public Error {
public:
    using Error::Error;
};

/// An output file or directory could not be written.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace icslab
