#include "ftnsdr/config.hpp"

#include <cmath>

#include "ftnsdr/errors.hpp"

namespace ftn {

std::string to_string(Modulation m) { return m == Modulation::Psk ? "psk" : "qam16"; }

Modulation modulation_from_string(const std::string& s) {
  if (s == "psk") return Modulation::Psk;
  if (s == "qam16" || s == "16qam" || s == "qam") return Modulation::Qam16;
  throw ParameterError("unknown modulation '" + s + "'");
}

bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

void FtnConfig::validate() const {
  if (!(tau > 0.0 && tau <= 1.0)) throw ParameterError("tau must lie in (0, 1]");
  if (!(beta >= 0.0 && beta <= 1.0)) throw ParameterError("beta must lie in [0, 1]");
  if (!(T > 0.0)) throw ParameterError("T must be positive");
  if (!(Es > 0.0)) throw ParameterError("Es must be positive");
  if (!(sigma2 >= 0.0) || !std::isfinite(sigma2)) throw ParameterError("sigma2 must be finite and >= 0");
  if (N < 1) throw ParameterError("N must be >= 1");
  if (K && *K < 0) throw ParameterError("K must be >= 0");
  if (L < 1) throw ParameterError("L must be >= 1");
  if (!(factor_tol > 0.0)) throw ParameterError("factor_tol must be positive");
  if (modulation == Modulation::Psk) {
    if (M < 2 || !is_power_of_two(M)) throw ParameterError("PSK order M must be a power of two >= 2");
  } else if (M != 16) {
    throw ParameterError("the QAM path fixes M = 16");
  }
}

int FtnConfig::bits_per_symbol() const {
  int b = 0;
  while ((1 << b) < M) ++b;
  return b;
}

double FtnConfig::alphabet_energy() const { return modulation == Modulation::Qam16 ? 10.0 : 1.0; }

double FtnConfig::amplitude() const { return std::sqrt(tau * Es / alphabet_energy()); }

double FtnConfig::snr_db() const {
  if (sigma2 == 0.0) return INFINITY;
  return 10.0 * std::log10(tau * Es / sigma2);
}

double FtnConfig::sigma2_for_snr(double snr) const {
  if (std::isinf(snr) && snr > 0) return 0.0;
  return tau * Es / std::pow(10.0, snr / 10.0);
}

}  // namespace ftn
