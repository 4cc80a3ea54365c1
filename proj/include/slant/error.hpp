#pragma once

#include <stdexcept>
#include <string>

namespace slant {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A caller passed an invalid argument (bad range, non-positive prior, ...).
struct ArgumentError : Error {
  using Error::Error;
};

/// Input data is unusable: parse failures, missing vocabulary entries,
/// degenerate inputs discovered at run time.
struct DataError : Error {
  using Error::Error;
};

/// A file or directory could not be opened or read.
struct IoError : Error {
  using Error::Error;
};

}  // namespace slant
