#pragma once

#include <vector>

#include "ftnsdr/config.hpp"
#include "ftnsdr/pulse.hpp"
#include "ftnsdr/types.hpp"

namespace ftn {

/// Discrete-time FTN channel for one (beta, tau, N).
///
/// Immutable after construction. G is the N x N Gram matrix of the sampled
/// pulse autocorrelation; V is the N x N causal convolution matrix of the
/// spectral factor v of g[-K..K].
struct IsiModel {
  double tau = 1.0;
  double beta = 0.0;
  double T = 1.0;
  int N = 0;
  int K = 0;

  std::vector<double> g;  ///< one-sided taps g[0..K]
  RMatrix G;
  RMatrix G_sqrt;         ///< symmetric square root of G
  RMatrix G_chol;         ///< lower Cholesky factor of G (empty if G is singular)
  double G_min_eigenvalue = 0.0;

  RVector v;              ///< causal taps v[0..K]
  RMatrix V;
  double factorization_residual = 0.0;
  double max_root_modulus = 0.0;

  /// g[k] for any integer k, zero outside [-K, K].
  double tap(int k) const;
};

/// Smallest K with sum_{|k|>K} g[k]^2 < 1e-8 sum_k g[k]^2, capped at 40*ceil(1/tau).
int default_truncation(const RrcPulse& pulse, double tau);

IsiModel build_isi_model(const RrcPulse& pulse, const FtnConfig& cfg);

/// Symmetric Toeplitz matrix with first column `col`.
RMatrix symmetric_toeplitz(const std::vector<double>& col, int n);
/// Lower-triangular Toeplitz matrix with first column `taps` (zero-padded).
RMatrix causal_toeplitz(const RVector& taps, int n);

}  // namespace ftn
