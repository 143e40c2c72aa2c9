#include "ftnsdr/channel.hpp"

#include "ftnsdr/errors.hpp"

namespace ftn {

namespace {
constexpr double kPsdTolerance = -1e-8;
}

CVector colored_noise(const IsiModel& model, double sigma2, Rng& rng) {
  const RVector re = real_gaussian(rng, model.N, 0.5 * sigma2);
  const RVector im = real_gaussian(rng, model.N, 0.5 * sigma2);
  CVector q(model.N);
  q.real() = model.G_sqrt * re;
  q.imag() = model.G_sqrt * im;
  return q;
}

CMatrix whitened_channel(const IsiModel& model, const FtnConfig& cfg) {
  return (cfg.amplitude() * model.V).cast<cplx>();
}

std::vector<int> random_indices(Rng& rng, int n, int M) {
  std::uniform_int_distribution<int> ud(0, M - 1);
  std::vector<int> idx(static_cast<std::size_t>(n));
  for (auto& i : idx) i = ud(rng);
  return idx;
}

ReceivedBlock simulate_block(const SymbolVector& a, const IsiModel& model, const FtnConfig& cfg, Rng& rng,
                             ReceivePaths paths) {
  if (a.entries.size() != model.N) throw ParameterError("simulate_block: symbol vector length differs from N");
  if (model.G_min_eigenvalue < kPsdTolerance) throw ModelError("simulate_block: G is not positive semidefinite");
  const double amp = cfg.amplitude();
  ReceivedBlock out;
  out.snr_db = cfg.snr_db();

  const bool want_colored = paths != ReceivePaths::Whitened;
  const bool want_whitened = paths != ReceivePaths::Colored;

  CVector q_c;
  if (want_colored || cfg.linked_noise) {
    q_c = cfg.sigma2 > 0.0 ? colored_noise(model, cfg.sigma2, rng) : CVector::Zero(model.N);
  }
  if (want_colored) {
    out.y_c = amp * (model.G.cast<cplx>() * a.entries) + q_c;
    out.has_colored = true;
  }
  if (want_whitened) {
    CVector q_w;
    if (cfg.linked_noise) {
      if (model.G_chol.size() == 0) throw ModelError("simulate_block: linked noise needs a nonsingular G");
      const CMatrix R = model.G_chol.cast<cplx>();
      q_w = R.triangularView<Eigen::Lower>().solve(q_c);
    } else {
      q_w = cfg.sigma2 > 0.0 ? complex_gaussian(rng, model.N, cfg.sigma2) : CVector::Zero(model.N);
    }
    out.y_w = amp * (model.V.cast<cplx>() * a.entries) + q_w;
    out.has_whitened = true;
  }
  return out;
}

}  // namespace ftn
