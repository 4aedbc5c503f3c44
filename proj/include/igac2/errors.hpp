#pragma once

#include <stdexcept>
#include <string>

namespace igac2 {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidParameterError : Error {
    using Error::Error;
};

struct OutOfDomainError : Error {
    using Error::Error;
};

struct RepresentationError : Error {
    using Error::Error;
};

struct TopologyError : Error {
    using Error::Error;
};

struct GeometryError : Error {
    using Error::Error;
};

struct SolverError : Error {
    using Error::Error;
};

struct RankAmbiguityError : Error {
    using Error::Error;
};

}  // namespace igac2
