#include <gtest/gtest.h>

#include <cmath>

#include "ftnsdr/errors.hpp"
#include "ftnsdr/isi_model.hpp"
#include "ftnsdr/lifted_cost.hpp"
#include "ftnsdr/pulse.hpp"
#include "ftnsdr/spectral_factor.hpp"
#include "oracles.hpp"

namespace {

ftn::IsiModel model_for(double beta, double tau, int N) {
  ftn::FtnConfig cfg;
  cfg.beta = beta;
  cfg.tau = tau;
  cfg.N = N;
  return ftn::build_isi_model(ftn::rrc_pulse(beta, 1.0), cfg);
}

}  // namespace

TEST(IsiModel, NyquistIsImpulse) {
  const auto m = model_for(0.3, 1.0, 10);
  EXPECT_NEAR(m.g[0], 1.0, 1e-6);
  for (int k = 1; k <= 20; ++k) EXPECT_LT(std::abs(m.tap(k)), 1e-6);
  EXPECT_LT((m.V - ftn::RMatrix::Identity(10, 10)).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(IsiModel, FirstTapMatchesTimeDomainQuadrature) {
  const auto m = model_for(0.3, 0.85, 8);
  const auto p = ftn::rrc_pulse(0.3, 1.0);
  const double ref = oracle::autocorrelation_time_domain([&](double t) { return p(t); }, 0.85, 200.0);
  EXPECT_NEAR(m.g[1], ref, 1e-6);
}

TEST(IsiModel, TapsMatchRaisedCosine) {
  const auto m = model_for(0.3, 0.8, 8);
  for (int k = 0; k <= m.K; ++k) EXPECT_NEAR(m.tap(k), oracle::raised_cosine(0.8 * k, 0.3, 1.0), 1e-10);
  EXPECT_DOUBLE_EQ(m.tap(-3), m.tap(3));
  EXPECT_EQ(m.tap(m.K + 1), 0.0);
}

TEST(IsiModel, GridIsPsdAndFactorizes) {
  for (double beta : {0.3, 0.5, 1.0}) {
    for (double tau : {0.8, 0.85, 0.9, 1.0}) {
      const auto m = model_for(beta, tau, 16);
      EXPECT_TRUE(m.G.isApprox(m.G.transpose(), 0.0));
      EXPECT_GE(m.G_min_eigenvalue, -1e-8);
      EXPECT_LE(m.factorization_residual, 1e-6);
      const auto back = ftn::autocorrelate_taps(m.v);
      for (int k = 0; k <= m.K; ++k) EXPECT_NEAR(back[k], m.g[static_cast<std::size_t>(k)], 1e-6);
      for (auto z : ftn::polynomial_zeros(m.v)) EXPECT_LE(std::abs(z), 1.0 - 1e-9);
    }
  }
}

TEST(IsiModel, TruncationTailIsSmall) {
  const auto m = model_for(0.3, 0.8, 8);
  EXPECT_EQ(m.K, ftn::default_truncation(ftn::rrc_pulse(0.3, 1.0), 0.8));
  EXPECT_LT(std::abs(m.g.back()), 1e-4);
  double total = 0.0;
  double tail = 0.0;
  for (int k = -400; k <= 400; ++k) {
    const double gk = oracle::raised_cosine(0.8 * k, 0.3, 1.0);
    total += gk * gk;
    if (std::abs(k) > m.K) tail += gk * gk;
  }
  EXPECT_LT(tail, 1e-8 * total);
}

TEST(IsiModel, MatricesAreToeplitz) {
  const auto m = model_for(0.3, 0.85, 6);
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      EXPECT_DOUBLE_EQ(m.G(i, j), m.tap(i - j));
      EXPECT_DOUBLE_EQ(m.V(i, j), i >= j && i - j <= m.K ? m.v[i - j] : 0.0);
    }
  }
}

TEST(IsiModel, TightPackingWithModerateRollOffHasNoFactor) {
  // the folded spectrum at tau = 0.75, beta = 0.3 dips slightly below zero
  EXPECT_THROW(model_for(0.3, 0.75, 8), ftn::SpectrumError);
}

TEST(IsiModel, RealStackedModelMatchesComplex) {
  const auto m = model_for(0.3, 0.85, 5);
  ftn::CVector a(5);
  ftn::CVector q(5);
  for (int k = 0; k < 5; ++k) {
    a[k] = ftn::cplx(0.3 * k - 0.5, 1.0 - 0.2 * k);
    q[k] = ftn::cplx(0.01 * k, -0.02 * k);
  }
  const ftn::CVector y = m.G.cast<ftn::cplx>() * a + q;
  const ftn::RVector ys = ftn::block_diag2(m.G) * ftn::real_stack(a) + ftn::real_stack(q);
  EXPECT_LT((ftn::real_stack(y) - ys).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Toeplitz, Builders) {
  const auto S = ftn::symmetric_toeplitz({3.0, 2.0, 1.0}, 4);
  EXPECT_EQ(S(0, 3), 0.0);
  EXPECT_EQ(S(3, 1), 1.0);
  EXPECT_EQ(S(2, 2), 3.0);
  ftn::RVector taps(2);
  taps << 1.0, 0.5;
  const auto V = ftn::causal_toeplitz(taps, 3);
  EXPECT_EQ(V(1, 0), 0.5);
  EXPECT_EQ(V(0, 1), 0.0);
  EXPECT_EQ(V(2, 0), 0.0);
}
