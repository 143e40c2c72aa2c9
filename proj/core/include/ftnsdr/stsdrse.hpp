#pragma once

#include "ftnsdr/channel.hpp"
#include "ftnsdr/config.hpp"
#include "ftnsdr/detection.hpp"
#include "ftnsdr/isi_model.hpp"
#include "ftnsdr/lifted_cost.hpp"
#include "ftnsdr/rng.hpp"
#include "ftnsdr/sdp_problem.hpp"

namespace ftn {

enum class ReceivePath { Whitened, Colored };

/// Theta_w = [[H^T H, -H^T y], [-y^T H, y^T y]] on the real-stacked model,
/// H = blkdiag(A V, A V).
LiftedCost build_theta_w(const IsiModel& model, const CVector& y_w, const FtnConfig& cfg);
LiftedCost build_theta_w(const CMatrix& H, const CVector& y);

/// Theta_c = [[A^2 Gs, -A y], [-A y^T, 0]] with Gs = blkdiag(G, G) and the
/// real-stacked y_c. psi^T Theta_c psi + y^T Gs^{-1} y is the colored ML metric.
LiftedCost build_theta_c(const IsiModel& model, const CVector& y_c, const FtnConfig& cfg);

/// Relaxed 16-QAM problem over Psi of order 2N+1:
///   1 <= Psi_kk <= 9,
///   Psi_kk + 4 Psi_{k,2N} + 3 >= 0,  Psi_kk - 4 Psi_{k,2N} + 3 >= 0,
///   Psi_{2N,2N} = 1,  Psi PSD.
sdp::SdpProblem build_stsdrse(const LiftedCost& cost, int N);

/// Nearest point of {-3, -1, 1, 3}; ties at -2, 0, 2 go up.
double quantize_16qam(double x);

/// Gaussian randomization for the 16-QAM lift: zeta_l ~ N(0, Psi_op),
/// normalised by its last entry, quantized entrywise, last entry set to 1.
DetectionResult randomize_qam(const RMatrix& psi_opt, const LiftedCost& cost, int L, Rng& rng,
                              RandomizationDraws* trace = nullptr);

DetectionResult detect_16qam(const ReceivedBlock& block, const IsiModel& model, const FtnConfig& cfg,
                             ReceivePath path, Rng& rng, const DetectOptions& opts = {});

/// Objective psi^T theta psi for a complex 16-QAM vector (psi = [Re a; Im a; 1]).
double lifted_objective(const LiftedCost& cost, const CVector& a);

}  // namespace ftn
