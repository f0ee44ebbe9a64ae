#pragma once

#include <stdexcept>
#include <string>

namespace agrifleet {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input file (bad syntax, wrong type, missing key).
struct ParseError : Error {
    using Error::Error;
};

/// Structurally valid input that violates a domain invariant.
struct ValidationError : Error {
    using Error::Error;
};

/// No design can satisfy the stated requirements.
struct InfeasibleError : Error {
    using Error::Error;
};

/// CNF encoding could not be produced (bad counts, blow-up guard).
struct EncodingError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace agrifleet
