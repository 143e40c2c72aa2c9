#include "ftnsdr/spectral_efficiency.hpp"

#include <cmath>

#include "ftnsdr/config.hpp"
#include "ftnsdr/errors.hpp"

namespace ftn {

double spectral_efficiency(int M, double tau, double beta) {
  if (M < 2 || !is_power_of_two(M)) throw ParameterError("spectral_efficiency: M must be a power of two >= 2");
  if (!(tau > 0.0 && tau <= 1.0)) throw ParameterError("spectral_efficiency: tau must lie in (0, 1]");
  if (!(beta >= 0.0 && beta <= 1.0)) throw ParameterError("spectral_efficiency: beta must lie in [0, 1]");
  return std::log2(static_cast<double>(M)) / (tau * (1.0 + beta));
}

double se_gain_percent(double tau) {
  if (!(tau > 0.0 && tau <= 1.0)) throw ParameterError("se_gain_percent: tau must lie in (0, 1]");
  return (1.0 / tau - 1.0) * 100.0;
}

}  // namespace ftn
