#pragma once

#include <string>
#include <vector>

#include "ftnsdr/sdp_problem.hpp"

namespace ftn::sdp {

enum class SolveStatus { Optimal, MaxIterations, Infeasible, NumericalFailure };

std::string to_string(SolveStatus s);

struct SolverOptions {
  double tol = 1e-7;
  int max_iter = 200;
};

struct SdpSolution {
  RMatrix X;
  RVector slacks;      ///< tr(A_j X) - b_j for each inequality
  RVector y;           ///< equality multipliers first, then inequality multipliers
  RMatrix Z;
  double objective = 0.0;       ///< tr(C X)
  double dual_objective = 0.0;  ///< b^T y
  double duality_gap = 0.0;     ///< |objective - dual_objective|
  double primal_residual = 0.0; ///< max_i |tr(A_i X) - s_i - b_i| / (1 + |b_i|)
  double dual_residual = 0.0;   ///< ||C - Z - A^T y||_F / (1 + ||C||_F)
  SolveStatus status = SolveStatus::NumericalFailure;
  int iterations = 0;
};

/// Dense infeasible-start primal-dual path-following method with
/// Nesterov-Todd scaling and Mehrotra predictor-corrector steps.
/// Inequalities carry one nonnegative slack each. Deterministic.
SdpSolution solve(const SdpProblem& problem, const SolverOptions& opts = {});

struct ResidualReport {
  std::vector<double> equality_residuals;    ///< tr(A_i X) - b_i
  std::vector<double> inequality_residuals;  ///< tr(A_j X) - b_j (>= 0 when satisfied)
  double max_equality_violation = 0.0;       ///< max |r_i| / (1 + |b_i|)
  double max_inequality_violation = 0.0;     ///< max (-r_j)_+ / (1 + |b_j|)
  double min_eigenvalue = 0.0;
  double objective = 0.0;
  double duality_gap = 0.0;                  ///< only when a solution was given
  bool psd_ok = false;
  bool equalities_ok = false;
  bool inequalities_ok = false;
  bool gap_ok = true;

  bool ok() const { return psd_ok && equalities_ok && inequalities_ok && gap_ok; }
};

/// Recomputes feasibility from X alone, independent of solver internals.
/// Thresholds: eigenvalues >= -1e-7 (1 + ||X||), equalities within
/// 1e-6 (1 + |b|), inequalities above b - 1e-6 (1 + |b|).
ResidualReport check_solution(const SdpProblem& problem, const RMatrix& X);
/// As above, plus the duality-gap bound gap <= 1e-6 (1 + |objective|).
ResidualReport check_solution(const SdpProblem& problem, const SdpSolution& solution);

}  // namespace ftn::sdp
