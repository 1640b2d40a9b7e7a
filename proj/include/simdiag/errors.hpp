#pragma once

#include <stdexcept>
#include <string>

namespace simdiag {

// Shape mismatches, bad indices, malformed inputs.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Inconsistent or out-of-range solver/generator options.
class OptionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// File and serialization failures.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Base for numerical failures that abort a computation.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Accumulated transform became numerically singular; carries the sweep index.
class IllConditionedError : public NumericError {
 public:
  IllConditionedError(const std::string& what, int sweep)
      : NumericError(what), sweep_(sweep) {}
  int sweep() const { return sweep_; }

 private:
  int sweep_;
};

// Planted spectra failed the identifiability guard after bounded retries.
class UnidentifiableError : public NumericError {
 public:
  using NumericError::NumericError;
};

// Component pairing in the block-embedding recovery found no consistent match.
class PairingError : public NumericError {
 public:
  using NumericError::NumericError;
};

// The embedded solve exposed fewer usable components than the requested rank.
class RankError : public NumericError {
 public:
  using NumericError::NumericError;
};

// Factor alignment could not build an injective column matching.
class AlignmentError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace simdiag
