#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace ftn {

enum class Modulation { Psk, Qam16 };

std::string to_string(Modulation m);
Modulation modulation_from_string(const std::string& s);

/// Parameters of one FTN link. Field names double as config-file keys.
struct FtnConfig {
  Modulation modulation = Modulation::Psk;
  int M = 8;              ///< constellation order; 16 for the QAM path
  double tau = 0.85;      ///< time-packing factor, (0, 1]
  double beta = 0.3;      ///< rRC roll-off, [0, 1]
  double T = 1.0;         ///< symbol duration
  double Es = 1.0;        ///< average symbol energy
  double sigma2 = 0.1;    ///< noise variance per complex sample
  int N = 20;             ///< block length
  std::optional<int> K;   ///< one-sided ISI truncation; chosen from the tail energy when empty
  int L = 1000;           ///< Gaussian-randomization draws
  std::uint64_t seed = 1;
  double factor_tol = 1e-6;  ///< spectral-factorization residual tolerance
  bool linked_noise = false; ///< whitened-path noise derived from the colored draw

  /// Throws ParameterError on any violated invariant.
  void validate() const;

  int bits_per_symbol() const;

  /// Average energy of the unscaled alphabet (1 for PSK, 10 for the {+-1,+-3}^2 grid).
  double alphabet_energy() const;

  /// Amplitude applied to alphabet points at the matched-filter output.
  double amplitude() const;

  /// SNR in dB: received symbol energy tau*Es over sigma2.
  double snr_db() const;
  /// Noise variance that realises `snr_db` under the same convention.
  double sigma2_for_snr(double snr_db) const;
};

bool is_power_of_two(int v);

}  // namespace ftn
