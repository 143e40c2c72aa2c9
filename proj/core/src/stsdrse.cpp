#include "ftnsdr/stsdrse.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "ftnsdr/errors.hpp"
#include "ftnsdr/mlse.hpp"

namespace ftn {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

RMatrix bordered(const RMatrix& Q, const RVector& b, double corner) {
  const auto n = Q.rows();
  RMatrix T(n + 1, n + 1);
  T.topLeftCorner(n, n) = Q;
  T.topRightCorner(n, 1) = b;
  T.bottomLeftCorner(1, n) = b.transpose();
  T(n, n) = corner;
  return 0.5 * (T + T.transpose());
}

double candidate_objective(const LiftedCost& cost, const CVector& a) {
  return cost.whitened() ? residual_norm2(cost.observation, cost.channel, a) : lifted_objective(cost, a);
}

}  // namespace

LiftedCost build_theta_w(const CMatrix& H, const CVector& y) {
  if (H.cols() == 0 || H.rows() != y.size()) throw ParameterError("build_theta_w: channel and observation shapes disagree");
  const RMatrix Hr = real_embedding(H);
  const RVector yr = real_stack(y);
  LiftedCost c;
  c.offset = yr.squaredNorm();
  c.theta = bordered(Hr.transpose() * Hr, -Hr.transpose() * yr, c.offset);
  c.n = static_cast<int>(2 * H.cols());
  c.origin = CostOrigin::QamWhitened;
  c.channel = H;
  c.observation = y;
  return c;
}

LiftedCost build_theta_w(const IsiModel& model, const CVector& y_w, const FtnConfig& cfg) {
  if (y_w.size() != model.N) throw ParameterError("build_theta_w: y_w length differs from N");
  return build_theta_w(whitened_channel(model, cfg), y_w);
}

LiftedCost build_theta_c(const IsiModel& model, const CVector& y_c, const FtnConfig& cfg) {
  if (y_c.size() != model.N) throw ParameterError("build_theta_c: y_c length differs from N");
  const double A = cfg.amplitude();
  LiftedCost c;
  c.theta = bordered(A * A * block_diag2(model.G), -A * real_stack(y_c), 0.0);
  c.n = 2 * model.N;
  c.origin = CostOrigin::QamColored;
  c.offset = 0.0;
  c.observation = y_c;
  return c;
}

sdp::SdpProblem build_stsdrse(const LiftedCost& cost, int N) {
  const int n = 2 * N + 1;
  if (N < 1 || cost.theta.rows() != n || cost.theta.cols() != n)
    throw ParameterError("build_stsdrse: cost order must be 2N+1");
  const int last = 2 * N;
  sdp::SdpProblem p;
  p.n = n;
  p.C = cost.theta;
  auto ineq = [&](int k, double diag, double border, double b) {
    sdp::LinearConstraint c{sdp::SymmetricSparse(n), b};
    c.A.add(k, k, diag);
    if (border != 0.0) c.A.add(k, last, border);
    p.inequalities.push_back(std::move(c));
  };
  for (int k = 0; k < last; ++k) {
    ineq(k, 1.0, 0.0, 1.0);    // Psi_kk >= 1
    ineq(k, -1.0, 0.0, -9.0);  // Psi_kk <= 9
    ineq(k, 1.0, 2.0, -3.0);   // Psi_kk + 4 Psi_k,last >= -3
    ineq(k, 1.0, -2.0, -3.0);  // Psi_kk - 4 Psi_k,last >= -3
  }
  sdp::LinearConstraint e{sdp::SymmetricSparse(n), 1.0};
  e.A.add(last, last, 1.0);
  p.equalities.push_back(std::move(e));
  return p;
}

double quantize_16qam(double x) {
  if (x < -2.0) return -3.0;
  if (x < 0.0) return -1.0;
  if (x < 2.0) return 1.0;
  return 3.0;
}

double lifted_objective(const LiftedCost& cost, const CVector& a) {
  RVector psi(cost.theta.rows());
  psi << real_stack(a), 1.0;
  return psi.dot(cost.theta * psi);
}

DetectionResult randomize_qam(const RMatrix& psi_opt, const LiftedCost& cost, int L, Rng& rng,
                              RandomizationDraws* trace) {
  if (L < 1) throw ParameterError("randomize_qam: L must be at least 1");
  const auto n = psi_opt.rows();
  if (n != cost.theta.rows() || psi_opt.cols() != n || n % 2 == 0)
    throw ParameterError("randomize_qam: Psi shape differs from the cost");
  const auto N = (n - 1) / 2;
  const Constellation alphabet = Constellation::qam16();

  Eigen::SelfAdjointEigenSolver<RMatrix> eig(0.5 * (psi_opt + psi_opt.transpose()));
  const RVector lam = eig.eigenvalues();
  DetectionResult out;
  out.psd_clip = std::max(0.0, -lam.minCoeff());
  const RMatrix factor = eig.eigenvectors() * lam.cwiseMax(0.0).cwiseSqrt().asDiagonal();

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
    const RVector zeta = factor * real_gaussian(rng, static_cast<int>(n));
    const double lead = zeta[n - 1];
    const RVector x = lead != 0.0 ? RVector(zeta / lead) : zeta;
    for (Eigen::Index k = 0; k < N; ++k) {
      const double re = quantize_16qam(x[k]);
      const double im = quantize_16qam(x[N + k]);
      const int li = static_cast<int>((re + 3.0) / 2.0);
      const int lq = static_cast<int>((im + 3.0) / 2.0);
      idx[static_cast<std::size_t>(k)] = 4 * li + lq;
      cand[k] = cplx(re, im);
    }
    const double obj = candidate_objective(cost, cand);
    if (trace) {
      CVector z(n);
      z.real() = zeta;
      z.imag().setZero();
      trace->draws.push_back(z);
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

DetectionResult detect_16qam(const ReceivedBlock& block, const IsiModel& model, const FtnConfig& cfg,
                             ReceivePath path, Rng& rng, const DetectOptions& opts) {
  if (cfg.modulation != Modulation::Qam16) throw ParameterError("detect_16qam: configuration is not 16-QAM");
  const auto t0 = Clock::now();
  LiftedCost cost;
  if (path == ReceivePath::Whitened) {
    if (!block.has_whitened) throw ParameterError("detect_16qam: block has no whitened samples");
    cost = build_theta_w(model, block.y_w, cfg);
  } else {
    if (!block.has_colored) throw ParameterError("detect_16qam: block has no colored samples");
    cost = build_theta_c(model, block.y_c, cfg);
  }
  const sdp::SdpProblem problem = build_stsdrse(cost, model.N);
  const sdp::SdpSolution sol = sdp::solve(problem, opts.solver);
  const double solve_s = seconds_since(t0);
  DetectionResult out = randomize_qam(sol.X, cost, cfg.L, rng, opts.trace);
  out.relaxed_objective = sol.objective;
  out.solver_status = sol.status;
  out.solver_iterations = sol.iterations;
  out.solve_seconds = solve_s;
  out.total_seconds = seconds_since(t0);
  return out;
}

}  // namespace ftn
