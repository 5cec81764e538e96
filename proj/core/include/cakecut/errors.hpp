#ifndef CAKECUT_ERRORS_HPP
#define CAKECUT_ERRORS_HPP

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace cakecut {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Argument outside its documented domain (positions outside [0,1], x > y, ...).
struct DomainError : Error {
    using Error::Error;
};

/// No slope k > 0 can normalize the density to unit mass (peak density <= 1).
struct NonNormalizable : Error {
    using Error::Error;
};

/// Cut target exceeds the mass available to the right of the query point.
struct Unreachable : Error {
    using Error::Error;
};

/// Two-query structure recovery admitted more than one parameter set.
struct RecoveryAmbiguous : Error {
    RecoveryAmbiguous(const std::string& msg, std::vector<std::array<double, 3>> cands)
        : Error(msg), candidates(std::move(cands)) {}
    std::vector<std::array<double, 3>> candidates;  // (l, p, r) per candidate
};

/// Supports do not cover [0,1] and waste-tolerant mode is off.
struct CoverageError : Error {
    using Error::Error;
};

/// Mechanism or audit precondition (common slope, coverage, ...) violated.
struct PrereqViolated : Error {
    using Error::Error;
};

/// Two agents share a peak where distinct peaks are required.
struct EqualPeaks : PrereqViolated {
    using PrereqViolated::PrereqViolated;
};

/// A positive-length segment has no interested agent (non-covering instance).
struct EmptySegment : Error {
    using Error::Error;
};

/// Agent counts of an instance and an allocation differ.
struct ShapeMismatch : Error {
    using Error::Error;
};

/// Random instance generation exhausted its rejection budget.
struct GenerationFailed : Error {
    using Error::Error;
};

/// The LP or exchange machinery could not certify a result.
struct SolverFailure : Error {
    using Error::Error;
};

}  // namespace cakecut

#endif
