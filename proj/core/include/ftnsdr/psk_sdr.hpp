#pragma once

#include "ftnsdr/config.hpp"
#include "ftnsdr/detection.hpp"
#include "ftnsdr/isi_model.hpp"
#include "ftnsdr/lifted_cost.hpp"
#include "ftnsdr/rng.hpp"
#include "ftnsdr/sdp_problem.hpp"

namespace ftn {

struct PskRelaxation {
  sdp::SdpProblem problem;
  LiftedCost cost;
};

/// Lifted unit-modulus relaxation of min ||y - H a||^2, a in PSK^N.
///
/// The Hermitian variable B = [[A, a], [a^H, 1]] (order N+1) with B_kk = 1
/// is embedded as a real SDP of order 2(N+1) with X_kk = 1 for every k.
PskRelaxation build_psk_sdr(const CMatrix& H, const CVector& y);
PskRelaxation build_psk_sdr(const IsiModel& model, const CVector& y_w, const FtnConfig& cfg);

/// Gaussian randomization around the SDP solution (a*, A*).
///
/// Draws xi_l ~ CN(a*, A* - a* a*^H), quantizes each entry to its PSK
/// sector and keeps the candidate with the smallest objective (first wins
/// on ties). Throws ParameterError when L < 1.
DetectionResult randomize_psk(const CVector& a_star, const CMatrix& A_star, const LiftedCost& cost,
                              int L, int M, Rng& rng, RandomizationDraws* trace = nullptr);

/// Solve + randomize pipeline on a whitened block.
DetectionResult detect_psk(const CVector& y_w, const IsiModel& model, const FtnConfig& cfg, Rng& rng,
                           const DetectOptions& opts = {});

/// Same pipeline against an explicit channel.
DetectionResult detect_psk(const CVector& y, const CMatrix& H, int M, int L, Rng& rng,
                           const DetectOptions& opts = {});

}  // namespace ftn
