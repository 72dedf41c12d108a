#pragma once

#include <stdexcept>
#include <string>

namespace dcft {

// Base of every exception thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed or out-of-contract input (bad discriminant, invalid table, ...).
struct InvalidInput : Error {
    using Error::Error;
};

// A combinatorial construction would exceed its configured size cap.
struct SizeGuardExceeded : Error {
    using Error::Error;
};

// Homology / homotopy requested outside the truncation-reliable range.
struct DegreeOutOfRange : Error {
    using Error::Error;
};

// A structural invariant failed (d∘d != 0, simplicial identity, ...).
struct ValidationError : Error {
    using Error::Error;
};

// Internal to the int64 fast paths; callers retry with arbitrary precision.
struct Overflow : Error {
    Overflow() : Error("int64 overflow") {}
};

}  // namespace dcft
