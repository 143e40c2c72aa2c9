#include "ftnsdr/spectral_factor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include <unsupported/Eigen/Polynomials>

#include "ftnsdr/errors.hpp"

namespace ftn {

namespace {

constexpr double kCircleBand = 1e-6;
constexpr int kMaxNewton = 40;

// Roots of sum_i coeffs[i] z^i (lowest degree first).
CVector roots_of(const RVector& coeffs) {
  Eigen::Index deg = coeffs.size() - 1;
  while (deg > 0 && coeffs[deg] == 0.0) --deg;
  if (deg < 1) return CVector();
  Eigen::PolynomialSolver<double, Eigen::Dynamic> solver;
  solver.compute(coeffs.head(deg + 1));
  return solver.roots();
}

// F_m(v) = (v * rev(v))[m] - g[m]
RVector factor_residual(const RVector& v, std::span<const double> g) {
  RVector r = autocorrelate_taps(v);
  for (Eigen::Index m = 0; m < r.size(); ++m) r[m] -= g[static_cast<std::size_t>(m)];
  return r;
}

// Newton iterations on v * rev(v) = g from a minimum-phase start.
int refine(RVector& v, std::span<const double> g) {
  const Eigen::Index n = v.size();
  RVector F = factor_residual(v, g);
  double res = F.cwiseAbs().maxCoeff();
  int it = 0;
  for (; it < kMaxNewton && res > 1e-15 * g[0]; ++it) {
    RMatrix J = RMatrix::Zero(n, n);
    for (Eigen::Index m = 0; m < n; ++m) {
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j + m < n) J(m, j) += v[j + m];
        if (j - m >= 0) J(m, j) += v[j - m];
      }
    }
    const RVector step = J.partialPivLu().solve(-F);
    if (!step.allFinite()) break;
    double t = 1.0;
    bool improved = false;
    for (int h = 0; h < 8; ++h, t *= 0.5) {
      RVector trial = v + t * step;
      RVector Ft = factor_residual(trial, g);
      const double rt = Ft.cwiseAbs().maxCoeff();
      if (rt < res) {
        v = std::move(trial);
        F = std::move(Ft);
        res = rt;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  return it;
}

double max_modulus(const CVector& z) { return z.size() == 0 ? 0.0 : z.cwiseAbs().maxCoeff(); }

}  // namespace

double tap_spectrum(std::span<const double> g, double omega) {
  double s = g.empty() ? 0.0 : g[0];
  for (std::size_t k = 1; k < g.size(); ++k) s += 2.0 * g[k] * std::cos(static_cast<double>(k) * omega);
  return s;
}

RVector autocorrelate_taps(const RVector& v) {
  const Eigen::Index n = v.size();
  RVector r = RVector::Zero(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    double s = 0.0;
    for (Eigen::Index i = 0; i + k < n; ++i) s += v[i] * v[i + k];
    r[k] = s;
  }
  return r;
}

CVector polynomial_zeros(const RVector& v) {
  // V(z) z^K = v0 z^K + ... + vK  ->  lowest-degree-first coefficients are reversed taps
  return roots_of(v.reverse());
}

SpectralFactor spectral_factorize(std::span<const double> g, double tol) {
  if (g.empty()) throw ParameterError("spectral_factorize: empty tap vector");
  if (!(g[0] > 0.0)) throw SpectrumError("spectral_factorize: g[0] must be positive", g[0]);
  const int K_full = static_cast<int>(g.size()) - 1;

  // taps below round-off carry no information and wreck the root finder
  int K = K_full;
  while (K > 0 && std::abs(g[static_cast<std::size_t>(K)]) <= 1e-15 * g[0]) --K;

  double min_spec = g[0];
  const int grid = 64 * (K + 1);
  for (int i = 0; i <= grid; ++i) {
    min_spec = std::min(min_spec, tap_spectrum(g.first(static_cast<std::size_t>(K) + 1), std::numbers::pi * i / grid));
  }
  if (min_spec < -tol * g[0]) {
    std::ostringstream msg;
    msg << "spectral_factorize: spectrum dips to " << min_spec << " (below -" << tol << " g[0])";
    throw SpectrumError(msg.str(), min_spec);
  }

  SpectralFactor out;
  out.taps = RVector::Zero(K_full + 1);
  if (K == 0) {
    out.taps[0] = std::sqrt(g[0]);
    out.residual = 0.0;
    for (int k = 1; k <= K_full; ++k) out.residual = std::max(out.residual, std::abs(g[static_cast<std::size_t>(k)]));
    return out;
  }

  RVector laurent(2 * K + 1);
  for (int i = 0; i <= 2 * K; ++i) laurent[i] = g[static_cast<std::size_t>(std::abs(i - K))];
  CVector roots = roots_of(laurent);
  std::vector<cplx> sorted(roots.data(), roots.data() + roots.size());
  std::stable_sort(sorted.begin(), sorted.end(), [](const cplx& a, const cplx& b) { return std::abs(a) < std::abs(b); });
  if (static_cast<int>(sorted.size()) < K) {
    throw FactorizationError("spectral_factorize: root finder lost roots", 0.0, INFINITY);
  }

  double closest = 0.0;
  std::vector<cplx> inside(sorted.begin(), sorted.begin() + K);
  for (auto& r : inside) {
    const double mod = std::abs(r);
    if (mod > 1.0 - kCircleBand) {
      if (mod > 1.0 + kCircleBand) {
        throw FactorizationError("spectral_factorize: no root split available", mod, INFINITY);
      }
      r = std::polar(1.0 - kCircleBand, std::arg(r));
      ++out.nudged_roots;
    }
    closest = std::max(closest, mod);
  }

  // prod_i (1 - r_i z^{-1})
  std::vector<cplx> poly{cplx(1.0)};
  for (const auto& r : inside) {
    poly.push_back(cplx(0.0));
    for (std::size_t k = poly.size() - 1; k > 0; --k) poly[k] -= r * poly[k - 1];
  }
  RVector v(K + 1);
  for (int k = 0; k <= K; ++k) v[k] = poly[static_cast<std::size_t>(k)].real();
  v *= std::sqrt(g[0] / v.squaredNorm());

  const std::span<const double> gk = g.first(static_cast<std::size_t>(K) + 1);
  RVector refined = v;
  out.newton_iterations = refine(refined, gk);
  double root_mod = max_modulus(polynomial_zeros(refined));
  if (!(root_mod <= 1.0 - 1e-9)) {
    // Newton left the minimum-phase set; keep the root-split factor
    refined = v;
    root_mod = max_modulus(polynomial_zeros(refined));
    out.newton_iterations = 0;
  }
  if (refined[0] < 0.0) refined = -refined;

  out.taps.head(K + 1) = refined;
  out.max_root_modulus = root_mod;
  out.residual = factor_residual(out.taps, g).cwiseAbs().maxCoeff();
  if (!(out.residual <= tol)) {
    std::ostringstream msg;
    msg << "spectral_factorize: residual " << out.residual << " exceeds tolerance " << tol
        << " (closest root modulus " << closest << ")";
    throw FactorizationError(msg.str(), closest, out.residual);
  }
  return out;
}

}  // namespace ftn
