#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "ftnsdr/config.hpp"

namespace ftn {

struct TimingRow {
  int N = 0;
  int M = 0;
  int repetitions = 0;
  double median_seconds = 0.0;
  double median_sdp_seconds = 0.0;
};

struct ComplexityReport {
  std::vector<TimingRow> rows;
  std::optional<double> exponent;  ///< log-log slope of median time vs N
  bool exponent_ok = false;        ///< exponent <= 4
};

/// Least-squares slope of log(y) on log(x). Empty with fewer than 3 points.
std::optional<double> loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Median SDR-PSK detection time per N over `repetitions` noisy blocks.
/// cfg supplies M, tau, beta, L, seed and sigma2.
ComplexityReport complexity_probe(const std::vector<int>& N_list, const FtnConfig& cfg, int repetitions = 7);

void write_complexity_table(std::ostream& os, const ComplexityReport& report);

}  // namespace ftn
