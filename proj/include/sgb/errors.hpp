#pragma once

#include <stdexcept>
#include <string>

namespace sgb {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed configuration (bad ranges, unknown keys, invalid values).
struct ConfigError : Error {
    using Error::Error;
};

/// File-level failures: unwritable paths, bad magic, unsupported versions.
struct IoError : Error {
    using Error::Error;
};

/// An operation was called outside its stated preconditions.
struct PreconditionError : Error {
    using Error::Error;
};

/// A scenario does not apply to the requested window length.
struct ApplicabilityError : Error {
    using Error::Error;
};

struct NotFoundError : Error {
    using Error::Error;
};

} // namespace sgb
