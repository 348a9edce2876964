#pragma once

#include <stdexcept>
#include <string>

namespace gkpos {

// Root of every error raised by the engine.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

// A polygon handed to a convex-only routine is not convex.
class NonConvexPolygon : public Error {
public:
    using Error::Error;
};

// Construction needs two distinct points (or similar) and did not get them.
class DegenerateGeometry : public Error {
public:
    using Error::Error;
};

// Shooter collinear with the posts: the shot triangle has zero area.
class DegenerateShotTriangle : public Error {
public:
    using Error::Error;
};

// Shooter or goalkeeper on the wrong side of the goal plane.
class DegenerateProjection : public Error {
public:
    using Error::Error;
};

// Game state is not one the position model applies to.
class IneligibleState : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class ModelFormatError : public Error {
public:
    using Error::Error;
};

class TrainingError : public Error {
public:
    using Error::Error;
};

class MatchFormatError : public Error {
public:
    using Error::Error;
};

class NotFound : public Error {
public:
    using Error::Error;
};

}  // namespace gkpos
