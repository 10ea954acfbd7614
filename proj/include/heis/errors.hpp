#pragma once

#include <stdexcept>

namespace heis {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegeneratePair : Error { using Error::Error; };
struct EmptyIntersection : Error { using Error::Error; };
struct ZeroVector : Error { using Error::Error; };
struct NotInterior : Error { using Error::Error; };
struct FormViolation : Error { using Error::Error; };
struct LiftInconsistency : Error { using Error::Error; };
struct CoincidentVertices : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct CharacteristicPoint : Error { using Error::Error; };
struct EmptySurface : Error { using Error::Error; };

}  // namespace heis
