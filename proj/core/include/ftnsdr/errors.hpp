#pragma once

#include <stdexcept>
#include <string>

namespace ftn {

/// Out-of-range argument or inconsistent dimensions.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The channel model cannot be built or used (e.g. G not PSD).
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The ISI spectrum G(e^{jw}) is not positive, so no causal factor exists.
class SpectrumError : public ModelError {
 public:
  SpectrumError(const std::string& what, double min_value)
      : ModelError(what), min_value_(min_value) {}
  double min_value() const noexcept { return min_value_; }

 private:
  double min_value_;
};

/// Spectral factorization did not reach its residual tolerance.
class FactorizationError : public ModelError {
 public:
  FactorizationError(const std::string& what, double root_modulus, double residual)
      : ModelError(what), root_modulus_(root_modulus), residual_(residual) {}
  /// Modulus of the selected root closest to the unit circle.
  double root_modulus() const noexcept { return root_modulus_; }
  double residual() const noexcept { return residual_; }

 private:
  double root_modulus_;
  double residual_;
};

/// Matrix too ill-conditioned for the requested operation.
class ConditioningError : public ModelError {
 public:
  ConditioningError(const std::string& what, double condition)
      : ModelError(what), condition_(condition) {}
  double condition() const noexcept { return condition_; }

 private:
  double condition_;
};

/// Exhaustive search space exceeds the configured guard.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace ftn
