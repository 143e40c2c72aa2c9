#pragma once

#include "ftnsdr/config.hpp"
#include "ftnsdr/constellation.hpp"
#include "ftnsdr/isi_model.hpp"
#include "ftnsdr/rng.hpp"

namespace ftn {

struct ReceivedBlock {
  CVector y_c;  ///< matched-filter samples, colored noise
  CVector y_w;  ///< whitened samples
  double snr_db = 0.0;
  bool has_colored = false;
  bool has_whitened = false;
};

enum class ReceivePaths { Colored, Whitened, Both };

/// Colored path: y_c = A G a + q_c with q_c ~ CN(0, sigma2 G).
/// Whitened path: y_w = A V a + q_w with q_w ~ CN(0, sigma2 I).
/// A = cfg.amplitude(). Paths draw independent noise unless cfg.linked_noise,
/// in which case q_w = R^{-1} q_c with G = R R^T (causal inverse filter).
ReceivedBlock simulate_block(const SymbolVector& a, const IsiModel& model, const FtnConfig& cfg,
                             Rng& rng, ReceivePaths paths = ReceivePaths::Both);

/// Colored noise draw: real and imaginary parts each ~ N(0, sigma2/2 G).
CVector colored_noise(const IsiModel& model, double sigma2, Rng& rng);

/// Effective whitened channel A V as a complex matrix.
CMatrix whitened_channel(const IsiModel& model, const FtnConfig& cfg);

/// Uniform random symbol indices in [0, M).
std::vector<int> random_indices(Rng& rng, int n, int M);

}  // namespace ftn
