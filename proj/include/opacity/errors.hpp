#pragma once

#include <stdexcept>
#include <string>

namespace opacity {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid parameters or violated preconditions. CLI exit code 1.
struct ParamError : Error {
  using Error::Error;
};

// Unknown node, actor, or behavior id. CLI exit code 1.
struct LookupError : Error {
  using Error::Error;
};

// Insufficient or degenerate data for a statistical operation. CLI exit code 1.
struct DataError : Error {
  using Error::Error;
};

// Malformed input file. CLI exit code 2.
struct ParseError : Error {
  using Error::Error;
};

// Filesystem failure. CLI exit code 2.
struct IoError : Error {
  using Error::Error;
};

}  // namespace opacity
