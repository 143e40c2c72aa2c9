#include <gtest/gtest.h>

#include <cmath>

#include "ftnsdr/channel.hpp"
#include "ftnsdr/errors.hpp"
#include "ftnsdr/psk_sdr.hpp"
#include "ftnsdr/pulse.hpp"
#include "ftnsdr/sdp_solver.hpp"
#include "ftnsdr/stsdrse.hpp"
#include "oracles.hpp"

using namespace ftn;
using namespace ftn::sdp;

namespace {

LinearConstraint diag_one(int n, int k, double b = 1.0) {
  LinearConstraint c{SymmetricSparse(n), b};
  c.A.add(k, k, 1.0);
  return c;
}

SdpProblem two_by_two() {
  SdpProblem p;
  p.n = 2;
  p.C = RMatrix::Zero(2, 2);
  p.C(0, 1) = p.C(1, 0) = 1.0;
  p.equalities = {diag_one(2, 0), diag_one(2, 1)};
  return p;
}

// Whitened PSK relaxation of a random noisy block.
PskRelaxation random_psk_instance(int N, int M, double snr_db, std::uint64_t seed) {
  FtnConfig cfg;
  cfg.N = N;
  cfg.M = M;
  cfg.tau = 0.8;
  cfg.sigma2 = cfg.sigma2_for_snr(snr_db);
  const auto model = build_isi_model(rrc_pulse(cfg.beta, cfg.T), cfg);
  Rng rng = make_stream(seed, 1);
  const auto a = map_symbols(random_indices(rng, N, M), cfg);
  const auto b = simulate_block(a, model, cfg, rng, ReceivePaths::Whitened);
  return build_psk_sdr(model, b.y_w, cfg);
}

}  // namespace

TEST(SdpSolver, OneByOne) {
  SdpProblem p;
  p.n = 1;
  p.C = RMatrix::Constant(1, 1, -2.5);
  p.equalities = {diag_one(1, 0)};
  const auto s = solve(p);
  ASSERT_EQ(s.status, SolveStatus::Optimal);
  EXPECT_NEAR(s.X(0, 0), 1.0, 1e-7);
  EXPECT_NEAR(s.objective, -2.5, 1e-7);
}

TEST(SdpSolver, TwoByTwoAnalytic) {
  const auto s = solve(two_by_two());
  ASSERT_EQ(s.status, SolveStatus::Optimal);
  EXPECT_NEAR(s.objective, -2.0, 1e-6);
  EXPECT_NEAR(s.X(0, 1), -1.0, 1e-6);
  EXPECT_NEAR(s.X(0, 0), 1.0, 1e-6);
  EXPECT_TRUE(check_solution(two_by_two(), s).ok());
}

TEST(SdpSolver, InequalityAnalytic) {
  // min x11 + x22 s.t. x12 >= 1: optimum at x11 = x22 = x12 = 1
  SdpProblem p;
  p.n = 2;
  p.C = RMatrix::Identity(2, 2);
  LinearConstraint c{SymmetricSparse(2), 1.0};
  c.A.add(0, 1, 0.5);
  p.inequalities.push_back(c);
  const auto s = solve(p);
  ASSERT_EQ(s.status, SolveStatus::Optimal);
  EXPECT_NEAR(s.objective, 2.0, 1e-6);
  EXPECT_NEAR(s.X(0, 1), 1.0, 1e-5);
  EXPECT_NEAR(s.slacks[0], 0.0, 1e-5);
  EXPECT_TRUE(check_solution(p, s).ok());
}

TEST(SdpSolver, InfeasibleProblemIsNotOptimal) {
  SdpProblem p;
  p.n = 1;
  p.C = RMatrix::Constant(1, 1, 1.0);
  p.equalities = {diag_one(1, 0, -1.0)};
  const auto s = solve(p);
  EXPECT_NE(s.status, SolveStatus::Optimal);
}

TEST(SdpSolver, IterationLimit) {
  SolverOptions o;
  o.max_iter = 1;
  EXPECT_EQ(solve(two_by_two(), o).status, SolveStatus::MaxIterations);
}

TEST(SdpSolver, RejectsBadOptions) {
  SolverOptions o;
  o.tol = 0.0;
  EXPECT_THROW(solve(two_by_two(), o), ParameterError);
  o.tol = 1e-7;
  o.max_iter = 0;
  EXPECT_THROW(solve(two_by_two(), o), ParameterError);
}

TEST(SdpSolver, OptimalSolutionsPassIndependentCheck) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const auto r = random_psk_instance(6, seed % 2 ? 8 : 4, 4.0 + seed, seed);
    const auto s = solve(r.problem);
    ASSERT_EQ(s.status, SolveStatus::Optimal) << seed;
    const auto rep = check_solution(r.problem, s);
    EXPECT_TRUE(rep.ok()) << seed;
  }
}

TEST(SdpSolver, QamProblemsPassIndependentCheck) {
  FtnConfig cfg;
  cfg.modulation = Modulation::Qam16;
  cfg.M = 16;
  cfg.N = 5;
  cfg.sigma2 = cfg.sigma2_for_snr(14.0);
  const auto model = build_isi_model(rrc_pulse(cfg.beta, cfg.T), cfg);
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    Rng rng = make_stream(seed, 2);
    const auto a = map_symbols(random_indices(rng, cfg.N, 16), cfg);
    const auto b = simulate_block(a, model, cfg, rng);
    for (const auto& cost : {build_theta_w(model, b.y_w, cfg), build_theta_c(model, b.y_c, cfg)}) {
      const auto p = build_stsdrse(cost, cfg.N);
      const auto s = solve(p);
      ASSERT_EQ(s.status, SolveStatus::Optimal);
      EXPECT_TRUE(check_solution(p, s).ok());
    }
  }
}

TEST(SdpSolver, WeakDualityAgainstDiscreteLiftings) {
  const int N = 4;
  const int M = 4;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto r = random_psk_instance(N, M, 6.0, 100 + seed);
    const auto s = solve(r.problem);
    ASSERT_EQ(s.status, SolveStatus::Optimal);
    EXPECT_LE(s.dual_objective, s.objective + 1e-6 * (1.0 + std::abs(s.objective)));
    const auto bf = oracle::brute_force_mlse(r.cost.observation, r.cost.channel, Constellation::psk(M).points());
    EXPECT_LE(s.objective, bf.objective + 1e-6 * (1.0 + bf.objective));
  }
}

TEST(SdpSolver, ScalingEquivariance) {
  const auto r = random_psk_instance(5, 8, 8.0, 3);
  auto scaled = r.problem;
  const double alpha = 3.5;
  scaled.C *= alpha;
  const auto s1 = solve(r.problem);
  const auto s2 = solve(scaled);
  ASSERT_EQ(s1.status, SolveStatus::Optimal);
  ASSERT_EQ(s2.status, SolveStatus::Optimal);
  EXPECT_NEAR(s2.objective, alpha * s1.objective, 1e-6 * (1.0 + std::abs(s2.objective)));
  EXPECT_LT((s1.X - s2.X).cwiseAbs().maxCoeff(), 1e-3);
}

TEST(SdpSolver, Deterministic) {
  const auto r = random_psk_instance(8, 8, 10.0, 21);
  const auto s1 = solve(r.problem);
  const auto s2 = solve(r.problem);
  EXPECT_EQ(s1.iterations, s2.iterations);
  EXPECT_EQ(s1.objective, s2.objective);
  EXPECT_EQ(s1.X, s2.X);
}

TEST(SdpSolver, StatusNames) {
  EXPECT_EQ(to_string(SolveStatus::Optimal), "optimal");
  EXPECT_EQ(to_string(SolveStatus::NumericalFailure), "numerical-failure");
}
