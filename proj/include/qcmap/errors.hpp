#pragma once

#include <stdexcept>
#include <string>

namespace qcmap {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// eval_adiabatic at a point where the gap closes below tolerance
struct DegenerateGap : Error {
    using Error::Error;
};

// cart_to_spherical with (numerically) vanishing mapping-variable norm
struct ZeroNorm : Error {
    using Error::Error;
};

struct UnsupportedMethod : Error {
    using Error::Error;
};

struct QuadratureNotConverged : Error {
    using Error::Error;
};

// attempt_hop called while active surface and spin sign already agree
struct InconsistentState : Error {
    using Error::Error;
};

struct AllDiverged : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

} // namespace qcmap
