#pragma once

#include <stdexcept>
#include <string>

namespace steklov {

/// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Geometry
class InvalidSpec : public Error { using Error::Error; };
class DegenerateProfile : public Error { using Error::Error; };
class OutOfDomain : public Error { using Error::Error; };
class NonSimpleBoundary : public Error { using Error::Error; };

// Meshing
class MeshFailure : public Error { using Error::Error; };

// Linear algebra
class NoConvergence : public Error { using Error::Error; };
class NotPositiveDefinite : public Error { using Error::Error; };

// FEM
class DegenerateTriangle : public Error { using Error::Error; };

// 1D limit problems
class InvalidGrid : public Error { using Error::Error; };
class NoBracket : public Error { using Error::Error; };
class PoleAt : public Error { using Error::Error; };

// Asymptotics
class OutsideTube : public Error { using Error::Error; };
class ZeroFunction : public Error { using Error::Error; };
class NonPositiveValue : public Error { using Error::Error; };

// Generic precondition violation (bad argument to an operation).
class InvalidArgument : public Error { using Error::Error; };

// Configuration / IO (CLI layer)
class ConfigError : public Error { using Error::Error; };
class IoError : public Error { using Error::Error; };

} // namespace steklov
