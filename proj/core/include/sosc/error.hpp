#pragma once

#include <stdexcept>
#include <string>

namespace sosc {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad sizes, indices, or preconditions a caller can check.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Text that does not follow one of the file formats.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace sosc
