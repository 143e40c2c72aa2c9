#pragma once

#include <span>

#include "ftnsdr/types.hpp"

namespace ftn {

struct SpectralFactor {
  RVector taps;                 ///< causal, minimum-phase, taps[0] > 0
  double residual = 0.0;        ///< max_k |(v * rev(v))[k] - g[k]|
  double max_root_modulus = 0;  ///< largest zero modulus of V(z)
  int nudged_roots = 0;         ///< roots pulled off the unit circle
  int newton_iterations = 0;
};

/// Minimum-phase factor v of a symmetric tap sequence, G(z) = V(z) V(1/z).
///
/// `g` holds the one-sided taps g[0..K]. The Laurent polynomial is split by
/// its roots (K inside the unit circle are kept, near-circle roots nudged
/// inward by 1e-6), then refined by Newton iterations on v * rev(v) = g.
/// Throws SpectrumError if the spectrum dips below -tol*g[0], and
/// FactorizationError if the residual stays above `tol`.
SpectralFactor spectral_factorize(std::span<const double> g, double tol = 1e-6);

/// (v * rev(v))[k] for k = 0..size(v)-1.
RVector autocorrelate_taps(const RVector& v);

/// Zeros of V(z) = sum_k v[k] z^{-k}.
CVector polynomial_zeros(const RVector& v);

/// G(e^{jw}) = g[0] + 2 sum_k g[k] cos(k w).
double tap_spectrum(std::span<const double> g, double omega);

}  // namespace ftn
