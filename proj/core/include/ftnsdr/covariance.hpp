#pragma once

#include <cstdint>
#include <iosfwd>

#include "ftnsdr/isi_model.hpp"

namespace ftn {

struct CovarianceReport {
  int N = 0;
  double sigma2 = 0.0;
  long long trials = 0;
  RMatrix empirical;          ///< sample covariance of eta (order 2N)
  RMatrix target;             ///< sigma2/2 G^{-1} on the real-stacked G
  double relative_error = 0;  ///< ||empirical - target||_F / ||target||_F
  double cross_block_ratio = 0;  ///< ||Re/Im cross block||_F / ||diagonal blocks||_F
  double condition_number = 0;
};

/// Monte-Carlo check of E{eta eta^T} = sigma2/2 G^{-1}, eta = G^{-1} q_c,
/// on the real-stacked model. Throws ConditioningError if cond(G) >= 1e8.
CovarianceReport verify_noise_covariance(int N, double sigma2, long long trials, const IsiModel& model,
                                         std::uint64_t seed);

/// Matrix dumps plus one summary line.
void write_covariance_report(std::ostream& os, const CovarianceReport& report);
std::string covariance_summary(const CovarianceReport& report);

}  // namespace ftn
