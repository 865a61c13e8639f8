#pragma once

#include <stdexcept>
#include <string>

namespace nambu {

/// Floating-point failure during a numeric run (overflow, NaN, degenerate path).
class NumericFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The Moser path's volume coefficient got too close to zero.
class MoserDegenerate : public NumericFailure {
 public:
  using NumericFailure::NumericFailure;
};

/// A 3-form outside the supported block-separable class.
class UnsupportedForm : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A block coefficient vanishes at the base point.
class DegenerateForm : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace nambu
