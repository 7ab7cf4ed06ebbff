#pragma once

#include <stdexcept>
#include <string>

namespace flowlab {

// Base class for all failures raised by the library. Every subclass names the
// contract it enforces so callers can catch narrowly.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Operation applied to a field of the wrong spatial dimension.
struct DimensionError : Error { using Error::Error; };

// Scalar argument outside the admissible range (t <= 0, M <= 0, ...).
struct DomainError : Error { using Error::Error; };

// Evaluation requested exactly at a non-removable singularity.
struct SingularityError : Error { using Error::Error; };

// Requested region does not fit inside the computational domain.
struct GeometryError : Error { using Error::Error; };

// Mismatched grids, times, or component counts between operands.
struct ShapeError : Error { using Error::Error; };

// Invalid solver parameter (CFL violation, nonpositive step, bad tolerance).
struct ParameterError : Error { using Error::Error; };

// Field carries the wrong parity across the symmetry axis.
struct ParityError : Error { using Error::Error; };

// Input data fails a structural precondition (too few snapshots, NaNs, ...).
struct DataError : Error { using Error::Error; };

// Requested accuracy could not be certified.
struct AccuracyError : Error { using Error::Error; };

// Iterative solver failed to reach its tolerance.
struct SolverError : Error { using Error::Error; };

// Malformed or inconsistent run configuration.
struct ConfigError : Error { using Error::Error; };

}  // namespace flowlab
