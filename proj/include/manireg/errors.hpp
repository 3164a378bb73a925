#pragma once

#include <stdexcept>
#include <string>

namespace manireg {

/// Base class for all errors thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid user-supplied data, files or parameters (CLI exit code 1).
struct UserError : Error {
    using Error::Error;
};

/// Point/tangent dimensions do not match the manifold.
struct DimensionError : UserError {
    using UserError::UserError;
};

/// Sphere logarithm requested for an (almost) antipodal pair; the shortest
/// geodesic is not unique, so the input is refused.
struct AntipodalError : UserError {
    using UserError::UserError;
};

/// A dataset or DWI stack failed to decode (bad header, truncated payload,
/// or a cell violating its manifold invariants).
struct DecodeError : UserError {
    using UserError::UserError;
};

} // namespace manireg
