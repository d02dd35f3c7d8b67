#pragma once

#include <stdexcept>
#include <string>

namespace csflow {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// an element of the polygonal curve collapsed below the length threshold
struct DegenerateElement : Error {
    using Error::Error;
};

// block or scalar tridiagonal factorization broke down
struct SingularSystem : Error {
    using Error::Error;
};

// Newton iteration exceeded its iteration budget
struct NewtonDiverged : Error {
    using Error::Error;
};

// NaN or Inf encountered where finite data is required
struct NonFinite : Error {
    using Error::Error;
};

struct ConfigInvalid : Error {
    using Error::Error;
};

// initial curve endpoints do not lie on the domain boundary
struct ConstraintViolatedAtStart : Error {
    using Error::Error;
};

// field errors requested for an exact solution without a field component
struct MissingExactField : Error {
    using Error::Error;
};

// eoc of an exactly zero error is undefined
struct ZeroError : Error {
    using Error::Error;
};

} // namespace csflow
