#pragma once

#include <stdexcept>
#include <string>

namespace sobim {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract input: bad files, invalid ranges,
/// inconsistent configuration.
struct DataError : Error {
  using Error::Error;
};

/// A requested quantity is mathematically undefined for the given input
/// (e.g. normalized sensitivity indices when var(Y) = 0), or an iterative
/// method failed to converge.
struct DegeneracyError : Error {
  using Error::Error;
};

}  // namespace sobim
