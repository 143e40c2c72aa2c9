#include "ftnsdr/isi_model.hpp"

#include <algorithm>
#include <cmath>

#include "ftnsdr/errors.hpp"
#include "ftnsdr/spectral_factor.hpp"

namespace ftn {

namespace {

constexpr double kTailFraction = 1e-8;
constexpr double kEdgeTap = 1e-4;
constexpr int kMaxTaps = 4096;

std::vector<double> sample_taps(const RrcPulse& pulse, double tau, int count) {
  std::vector<double> g(static_cast<std::size_t>(count) + 1);
  for (int k = 0; k <= count; ++k) g[static_cast<std::size_t>(k)] = pulse.autocorrelation(k * tau * pulse.T());
  return g;
}

}  // namespace

double IsiModel::tap(int k) const {
  const int a = std::abs(k);
  return a <= K ? g[static_cast<std::size_t>(a)] : 0.0;
}

int default_truncation(const RrcPulse& pulse, double tau) {
  const int cap = 40 * static_cast<int>(std::ceil(1.0 / tau));
  const std::vector<double> g = sample_taps(pulse, tau, cap);
  double total = g[0] * g[0];
  for (int k = 1; k <= cap; ++k) total += 2.0 * g[static_cast<std::size_t>(k)] * g[static_cast<std::size_t>(k)];
  double tail = 0.0;  // sum over K < |k| <= cap
  int K = cap;
  for (; K > 0; --K) {
    const double next = tail + 2.0 * g[static_cast<std::size_t>(K)] * g[static_cast<std::size_t>(K)];
    if (next >= kTailFraction * total) break;
    tail = next;
  }
  return K;
}

RMatrix symmetric_toeplitz(const std::vector<double>& col, int n) {
  RMatrix A(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const auto lag = static_cast<std::size_t>(std::abs(i - j));
      A(i, j) = lag < col.size() ? col[lag] : 0.0;
    }
  }
  return A;
}

RMatrix causal_toeplitz(const RVector& taps, int n) {
  RMatrix A = RMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      if (i - j < taps.size()) A(i, j) = taps[i - j];
    }
  }
  return A;
}

IsiModel build_isi_model(const RrcPulse& pulse, const FtnConfig& cfg) {
  cfg.validate();
  IsiModel m;
  m.tau = cfg.tau;
  m.beta = pulse.beta();
  m.T = pulse.T();
  m.N = cfg.N;

  int K = cfg.K ? *cfg.K : default_truncation(pulse, cfg.tau);
  while (K > 0 && K < kMaxTaps && std::abs(pulse.autocorrelation(K * cfg.tau * pulse.T())) >= kEdgeTap) ++K;
  m.K = K;

  // G uses exact lags up to N-1 so it stays a Gram matrix even when N > K
  const int lags = std::max(K, cfg.N - 1);
  std::vector<double> all = sample_taps(pulse, cfg.tau, lags);
  m.g.assign(all.begin(), all.begin() + K + 1);

  m.G = symmetric_toeplitz(all, cfg.N);
  Eigen::SelfAdjointEigenSolver<RMatrix> eig(m.G);
  m.G_min_eigenvalue = eig.eigenvalues().minCoeff();
  const RVector root = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  m.G_sqrt = eig.eigenvectors() * root.asDiagonal() * eig.eigenvectors().transpose();
  Eigen::LLT<RMatrix> llt(m.G);
  if (llt.info() == Eigen::Success) m.G_chol = llt.matrixL();

  const SpectralFactor f = spectral_factorize(m.g, cfg.factor_tol);
  m.v = f.taps;
  m.factorization_residual = f.residual;
  m.max_root_modulus = f.max_root_modulus;
  m.V = causal_toeplitz(m.v, cfg.N);
  return m;
}

}  // namespace ftn
