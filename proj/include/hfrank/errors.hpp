#pragma once

#include <stdexcept>
#include <string>

namespace hfrank {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ParseError : Error {
    using Error::Error;
};
struct InvariantViolation : Error {
    using Error::Error;
};
struct DimensionMismatch : Error {
    using Error::Error;
};
struct EmptyComplex : Error {
    using Error::Error;
};
struct FlipUnavailable : Error {
    using Error::Error;
};
struct WindowTooSmall : Error {
    using Error::Error;
};
struct ConventionFailure : Error {
    using Error::Error;
};
struct ValidationFailure : Error {
    using Error::Error;
};
struct NotSimple : Error {
    using Error::Error;
};
struct NoSolution : Error {
    using Error::Error;
};
struct NormalizationFailure : Error {
    using Error::Error;
};
struct StructureContradiction : Error {
    using Error::Error;
};

// Carries both sides of a failed rank identity; a finding, not a silent repair.
struct IdentityMismatch : Error {
    long lhs, rhs;
    IdentityMismatch(const std::string& what, long l, long r)
        : Error(what + ": " + std::to_string(l) + " != " + std::to_string(r)), lhs(l), rhs(r) {}
};

}  // namespace hfrank
