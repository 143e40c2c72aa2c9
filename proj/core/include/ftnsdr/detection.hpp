#pragma once

#include <vector>

#include "ftnsdr/constellation.hpp"
#include "ftnsdr/sdp_solver.hpp"

namespace ftn {

struct DetectionResult {
  SymbolVector a_hat;
  double relaxed_objective = 0.0;  ///< tr(theta X*) at the SDP optimum
  double rounded_objective = 0.0;  ///< objective of a_hat, same frame as relaxed
  int l_op = -1;                   ///< zero-based index of the winning draw
  int num_candidates = 0;
  sdp::SolveStatus solver_status = sdp::SolveStatus::NumericalFailure;
  int solver_iterations = 0;
  double psd_clip = 0.0;           ///< magnitude of eigenvalues floored before sampling
  double solve_seconds = 0.0;
  double total_seconds = 0.0;
};

/// Optional trace of a randomization run.
struct RandomizationDraws {
  std::vector<CVector> draws;       ///< xi_l (PSK) or zeta_l (QAM, real in .real())
  std::vector<CVector> candidates;  ///< quantized candidates as complex symbols
  std::vector<double> objectives;
};

struct DetectOptions {
  sdp::SolverOptions solver;
  RandomizationDraws* trace = nullptr;
};

}  // namespace ftn
