#pragma once

#include <stdexcept>
#include <string>

namespace finstate {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A function argument violates its documented precondition.
struct InvalidArgumentError : Error {
    using Error::Error;
};

/// Data fails the invariants of a state (not PSD, wrong trace, ...).
struct InvalidStateError : Error {
    using Error::Error;
};

/// Two objects live on incompatible systems (apply/compose mismatch).
struct DomainMismatchError : Error {
    using Error::Error;
};

/// A checker was handed an instance outside the scope of the property
/// it verifies; distinct from a property failure.
struct PreconditionError : Error {
    using Error::Error;
};

/// Filesystem or parse failure.
struct IoError : Error {
    using Error::Error;
};

} // namespace finstate
