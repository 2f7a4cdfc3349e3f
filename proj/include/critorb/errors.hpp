#pragma once

#include <stdexcept>
#include <string>

namespace critorb {

// Base for all library errors. CLI maps these to exit code 3; config/usage
// problems (bad fixture, bad window) use ConfigError -> exit code 2.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ConfigError : Error {
    using Error::Error;
};

struct DegreeCapExceeded : Error {
    using Error::Error;
};
struct RootFindFailure : Error {
    using Error::Error;
};
struct ConvergenceFailure : Error {
    using Error::Error;
};
struct ZeroPolynomial : Error {
    // Persistent relation: the preperiodic equation vanished identically.
    // Signals passivity of the marked point, not a numerical failure.
    using Error::Error;
};
struct Inconclusive : Error {
    using Error::Error;
};
struct NotActive : Error {
    using Error::Error;
};
struct OutsideDomain : Error {
    using Error::Error;
};
struct NotInDomain : Error {
    using Error::Error;
};
struct WindowMismatch : Error {
    using Error::Error;
};
struct WindowContainsOrigin : Error {
    using Error::Error;
};
struct OriginUndefined : Error {
    using Error::Error;
};
struct DiagonalPole : Error {
    using Error::Error;
};
struct ProbeInsideSet : Error {
    using Error::Error;
};
struct DegenerateLift : Error {
    using Error::Error;
};
struct TruncationInsufficient : Error {
    using Error::Error;
};
struct NoIntegerRootDegree : Error {
    using Error::Error;
};

}  // namespace critorb
