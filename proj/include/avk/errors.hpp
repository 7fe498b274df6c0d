#pragma once

#include <stdexcept>
#include <string>

namespace avk {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidPoint : Error { using Error::Error; };
struct InvalidMatrix : Error { using Error::Error; };
struct DegenerateTriangle : Error { using Error::Error; };
struct InvalidSides : Error { using Error::Error; };
struct DegenerateGeodesic : Error { using Error::Error; };
struct NotGoodPair : Error { using Error::Error; };
struct StepTooShort : Error { using Error::Error; };
struct AngleOutOfRange : Error { using Error::Error; };
struct NotConvexInput : Error { using Error::Error; };
struct DegenerateTriple : Error { using Error::Error; };
struct UnknownNode : Error { using Error::Error; };
struct PreconditionFailed : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

} // namespace avk
