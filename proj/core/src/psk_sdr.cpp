#include "ftnsdr/psk_sdr.hpp"

#include <chrono>
#include <cmath>
#include <numbers>

#include "ftnsdr/channel.hpp"
#include "ftnsdr/errors.hpp"
#include "ftnsdr/mlse.hpp"

namespace ftn {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

PskRelaxation build_psk_sdr(const CMatrix& H, const CVector& y) {
  const auto N = H.cols();
  if (N == 0 || H.rows() != y.size()) throw ParameterError("build_psk_sdr: channel and observation shapes disagree");
  PskRelaxation r;
  LiftedCost& c = r.cost;
  c.theta_complex = CMatrix(N + 1, N + 1);
  c.theta_complex.topLeftCorner(N, N) = H.adjoint() * H;
  const CVector hy = H.adjoint() * y;
  c.theta_complex.topRightCorner(N, 1) = -hy;
  c.theta_complex.bottomLeftCorner(1, N) = -hy.adjoint();
  c.theta_complex(N, N) = y.squaredNorm();
  c.theta_complex = 0.5 * (c.theta_complex + c.theta_complex.adjoint()).eval();
  c.theta = 0.5 * real_embedding(c.theta_complex);
  c.n = static_cast<int>(N);
  c.origin = CostOrigin::PskWhitened;
  c.offset = y.squaredNorm();
  c.channel = H;
  c.observation = y;

  sdp::SdpProblem& p = r.problem;
  p.n = static_cast<int>(2 * (N + 1));
  p.C = c.theta;
  for (int k = 0; k < p.n; ++k) {
    sdp::LinearConstraint e{sdp::SymmetricSparse(p.n), 1.0};
    e.A.add(k, k, 1.0);
    p.equalities.push_back(std::move(e));
  }
  return r;
}

PskRelaxation build_psk_sdr(const IsiModel& model, const CVector& y_w, const FtnConfig& cfg) {
  if (y_w.size() != model.N) throw ParameterError("build_psk_sdr: y_w length differs from N");
  return build_psk_sdr(whitened_channel(model, cfg), y_w);
}

DetectionResult randomize_psk(const CVector& a_star, const CMatrix& A_star, const LiftedCost& cost, int L, int M,
                              Rng& rng, RandomizationDraws* trace) {
  if (L < 1) throw ParameterError("randomize_psk: L must be at least 1");
  const auto N = a_star.size();
  if (A_star.rows() != N || A_star.cols() != N) throw ParameterError("randomize_psk: A* shape differs from a*");
  const Constellation alphabet = Constellation::psk(M);

  CMatrix cov = A_star - a_star * a_star.adjoint();
  cov = 0.5 * (cov + cov.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(cov);
  const RVector lam = eig.eigenvalues();
  DetectionResult out;
  out.psd_clip = std::max(0.0, -lam.minCoeff());
  const CMatrix factor = eig.eigenvectors() * lam.cwiseMax(0.0).cwiseSqrt().asDiagonal();

  const double rotation = std::numbers::pi / M;
  std::vector<int> idx(static_cast<std::size_t>(N));
  CVector cand(N);
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> best_idx;
  if (trace) {
    trace->draws.clear();
    trace->candidates.clear();
    trace->objectives.clear();
  }
  for (int l = 0; l < L; ++l) {
    const CVector xi = a_star + factor * complex_gaussian(rng, static_cast<int>(N), 1.0);
    for (Eigen::Index k = 0; k < N; ++k) {
      idx[static_cast<std::size_t>(k)] = psk_sector(std::arg(xi[k]), M, rotation);
      cand[k] = alphabet.point(idx[static_cast<std::size_t>(k)]);
    }
    const double obj = residual_norm2(cost.observation, cost.channel, cand);
    if (trace) {
      trace->draws.push_back(xi);
      trace->candidates.push_back(cand);
      trace->objectives.push_back(obj);
    }
    if (obj < best) {
      best = obj;
      best_idx = idx;
      out.l_op = l;
    }
  }
  out.a_hat = map_symbols(best_idx, alphabet);
  out.rounded_objective = best;
  out.num_candidates = L;
  return out;
}

DetectionResult detect_psk(const CVector& y, const CMatrix& H, int M, int L, Rng& rng, const DetectOptions& opts) {
  const auto t0 = Clock::now();
  const PskRelaxation relax = build_psk_sdr(H, y);
  const sdp::SdpSolution sol = sdp::solve(relax.problem, opts.solver);
  const double solve_s = seconds_since(t0);

  const auto N = H.cols();
  const CMatrix B = hermitian_from_embedding(sol.X);
  const CVector a_star = B.col(N).head(N);
  const CMatrix A_star = B.topLeftCorner(N, N);
  DetectionResult out = randomize_psk(a_star, A_star, relax.cost, L, M, rng, opts.trace);
  out.relaxed_objective = sol.objective;
  out.solver_status = sol.status;
  out.solver_iterations = sol.iterations;
  out.solve_seconds = solve_s;
  out.total_seconds = seconds_since(t0);
  return out;
}

DetectionResult detect_psk(const CVector& y_w, const IsiModel& model, const FtnConfig& cfg, Rng& rng,
                           const DetectOptions& opts) {
  if (cfg.modulation != Modulation::Psk) throw ParameterError("detect_psk: configuration is not PSK");
  if (y_w.size() != model.N) throw ParameterError("detect_psk: y_w length differs from N");
  return detect_psk(y_w, whitened_channel(model, cfg), cfg.M, cfg.L, rng, opts);
}

}  // namespace ftn
