#pragma once

#include <stdexcept>
#include <string>

namespace flaghom {

// Base for everything the library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad Cartan data, out-of-range indices, bad permutations.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Well-formed request the engine declines to answer (group too large,
// undetermined signs, formula outside its stated range, ...).
class Unsupported : public Error {
 public:
  using Error::Error;
};

// Two routes that must agree did not. Always a bug, never user error.
class CheckFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace flaghom
