#pragma once

#include <stdexcept>
#include <string>

namespace qsymm {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: dimension mismatch, invalid involution, bad config field.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A Lagrangian plane is not transversal to the fiber (singular x-block), or
/// a critical-value form is degenerate.
class TransversalityError : public Error {
 public:
  using Error::Error;
};

/// A plane expected to be definite with respect to a real subspace is not.
class PositivityError : public Error {
 public:
  using Error::Error;
};

/// A normal-form construction step produced data violating its defining
/// property beyond tolerance.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// File could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace qsymm
