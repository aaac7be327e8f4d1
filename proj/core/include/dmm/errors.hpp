#pragma once

#include <stdexcept>
#include <string>

namespace dmm {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Index language / spec files.
struct ParseError : Error {
  using Error::Error;
};
struct InvalidAlphabet : ParseError {
  using ParseError::ParseError;
};
struct ValidationError : Error {
  using Error::Error;
};

// Type registry.
struct UnknownType : Error {
  using Error::Error;
};
struct DuplicateType : Error {
  using Error::Error;
};

// Matrix algebra.
struct NotAMask : Error {
  using Error::Error;
};
struct InfiniteSupport : Error {
  using Error::Error;
};
struct NotLifted : Error {
  using Error::Error;
};
struct UnsupportedInCountableMode : Error {
  using Error::Error;
};

// Engine.
struct PhaseError : Error {
  using Error::Error;
};
struct OverflowHalt : Error {
  using Error::Error;
};
struct ConstraintViolated : Error {
  using Error::Error;
};
struct CapacityExceeded : Error {
  using Error::Error;
};
struct BadColumns : Error {
  using Error::Error;
};

}  // namespace dmm
