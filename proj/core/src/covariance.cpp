#include "ftnsdr/covariance.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "ftnsdr/channel.hpp"
#include "ftnsdr/errors.hpp"
#include "ftnsdr/lifted_cost.hpp"
#include "ftnsdr/rng.hpp"

namespace ftn {

namespace {
constexpr double kMaxCondition = 1e8;
}

CovarianceReport verify_noise_covariance(int N, double sigma2, long long trials, const IsiModel& model,
                                         std::uint64_t seed) {
  if (N != model.N) throw ParameterError("verify_noise_covariance: N differs from the model block length");
  if (!(sigma2 > 0.0)) throw ParameterError("verify_noise_covariance: sigma2 must be positive");
  if (trials < 2) throw ParameterError("verify_noise_covariance: need at least 2 trials");

  Eigen::SelfAdjointEigenSolver<RMatrix> eig(model.G);
  const RVector lam = eig.eigenvalues();
  CovarianceReport r;
  r.condition_number = lam.minCoeff() > 0.0 ? lam.maxCoeff() / lam.minCoeff() : std::numeric_limits<double>::infinity();
  if (!(r.condition_number < kMaxCondition)) throw ConditioningError("verify_noise_covariance: G is ill-conditioned", r.condition_number);

  const Eigen::LDLT<RMatrix> solver(model.G);
  Rng rng = make_stream(seed, 0xC0FFEEULL);
  RMatrix acc = RMatrix::Zero(2 * N, 2 * N);
  for (long long t = 0; t < trials; ++t) {
    const CVector q = colored_noise(model, sigma2, rng);
    RVector eta(2 * N);
    eta << solver.solve(RVector(q.real())), solver.solve(RVector(q.imag()));
    acc.selfadjointView<Eigen::Lower>().rankUpdate(eta);
  }
  r.N = N;
  r.sigma2 = sigma2;
  r.trials = trials;
  r.empirical = acc.selfadjointView<Eigen::Lower>();
  r.empirical /= static_cast<double>(trials);
  const RMatrix Ginv = solver.solve(RMatrix::Identity(N, N));
  r.target = 0.5 * sigma2 * block_diag2(0.5 * (Ginv + Ginv.transpose()));
  r.relative_error = (r.empirical - r.target).norm() / r.target.norm();
  const double cross = r.empirical.bottomLeftCorner(N, N).norm();
  const double diag = std::hypot(r.empirical.topLeftCorner(N, N).norm(), r.empirical.bottomRightCorner(N, N).norm());
  r.cross_block_ratio = cross / diag;
  return r;
}

std::string covariance_summary(const CovarianceReport& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "covariance N=%d sigma2=%.6g trials=%lld relative_error=%.6g cross_block_ratio=%.6g condition=%.6g",
                r.N, r.sigma2, r.trials, r.relative_error, r.cross_block_ratio, r.condition_number);
  return buf;
}

void write_covariance_report(std::ostream& os, const CovarianceReport& r) {
  const Eigen::IOFormat fmt(8, 0, " ", "\n");
  os << "# empirical E{eta eta^T}\n" << r.empirical.format(fmt) << "\n";
  os << "# target sigma2/2 G^-1\n" << r.target.format(fmt) << "\n";
  os << covariance_summary(r) << "\n";
}

}  // namespace ftn
