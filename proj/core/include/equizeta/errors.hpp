#ifndef EQUIZETA_ERRORS_HPP
#define EQUIZETA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace equizeta {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input document (bad JSON, bad rational literal, wrong shapes).
struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error("parse error: " + msg) {}
};

// Structurally valid input that the engine cannot process.
struct InvalidInput : Error {
    explicit InvalidInput(const std::string& msg) : Error("invalid input: " + msg) {}
};

struct DimensionMismatch : InvalidInput {
    explicit DimensionMismatch(const std::string& msg)
        : InvalidInput("dimension mismatch: " + msg) {}
};

struct InfiniteKernel : InvalidInput {
    explicit InfiniteKernel(const std::string& msg)
        : InvalidInput("infinite kernel: " + msg) {}
};

struct NotQuasihomogeneous : InvalidInput {
    explicit NotQuasihomogeneous(const std::string& msg)
        : InvalidInput("not quasihomogeneous: " + msg) {}
};

struct WeightsNotUnique : InvalidInput {
    explicit WeightsNotUnique(const std::string& msg)
        : InvalidInput("weights not unique: " + msg) {}
};

struct NonPositiveWeight : InvalidInput {
    explicit NonPositiveWeight(const std::string& msg)
        : InvalidInput("non-positive weight: " + msg) {}
};

// A coordinate restriction is neither zero nor supported by any chi route.
struct UnsupportedRestriction : InvalidInput {
    explicit UnsupportedRestriction(const std::string& msg)
        : InvalidInput("unsupported restriction: " + msg) {}
};

struct ResourceLimit : Error {
    explicit ResourceLimit(const std::string& msg) : Error("resource limit: " + msg) {}
};

struct MonodromyNotInGroup : InvalidInput {
    explicit MonodromyNotInGroup(const std::string& msg)
        : InvalidInput("monodromy element not in group: " + msg) {}
};

struct NonIntegralCoefficient : Error {
    explicit NonIntegralCoefficient(const std::string& msg)
        : Error("non-integral coefficient: " + msg) {}
};

struct MalformedConstantTerm : Error {
    explicit MalformedConstantTerm(const std::string& msg)
        : Error("malformed constant term: " + msg) {}
};

struct NonNegativeCharacter : Error {
    explicit NonNegativeCharacter(const std::string& msg)
        : Error("character of non-negative degree: " + msg) {}
};

struct NotASubgroup : Error {
    explicit NotASubgroup(const std::string& msg) : Error("not a subgroup: " + msg) {}
};

struct AmbientMismatch : Error {
    explicit AmbientMismatch(const std::string& msg) : Error("ambient mismatch: " + msg) {}
};

struct NonCyclicAmbient : InvalidInput {
    explicit NonCyclicAmbient(const std::string& msg)
        : InvalidInput("non-cyclic ambient group: " + msg) {}
};

// Internal consistency failure: a checked identity that must hold by
// construction failed.  Always indicates a bug, never bad user input.
struct InternalError : Error {
    explicit InternalError(const std::string& msg) : Error("internal error: " + msg) {}
};

} // namespace equizeta

#endif
