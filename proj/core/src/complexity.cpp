#include "ftnsdr/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "ftnsdr/channel.hpp"
#include "ftnsdr/errors.hpp"
#include "ftnsdr/psk_sdr.hpp"

namespace ftn {

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const auto n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

std::optional<double> loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw ParameterError("loglog_slope: x and y differ in length");
  if (x.size() < 3) return std::nullopt;
  const auto n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0 && y[i] > 0.0)) throw ParameterError("loglog_slope: values must be positive");
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double den = n * sxx - sx * sx;
  if (den <= 0.0) return std::nullopt;
  return (n * sxy - sx * sy) / den;
}

ComplexityReport complexity_probe(const std::vector<int>& N_list, const FtnConfig& cfg, int repetitions) {
  if (N_list.empty()) throw ParameterError("complexity_probe: empty N list");
  if (repetitions < 1) throw ParameterError("complexity_probe: repetitions must be at least 1");
  if (cfg.modulation != Modulation::Psk) throw ParameterError("complexity_probe: times the PSK detector only");
  if (!std::is_sorted(N_list.begin(), N_list.end())) throw ParameterError("complexity_probe: N list must be ascending");
  ComplexityReport report;
  const RrcPulse pulse = rrc_pulse(cfg.beta, cfg.T);
  const Constellation alphabet = Constellation::psk(cfg.M);
  for (int N : N_list) {
    FtnConfig c = cfg;
    c.N = N;
    const IsiModel model = build_isi_model(pulse, c);
    std::vector<double> total;
    std::vector<double> sdp;
    for (int r = 0; r < repetitions; ++r) {
      Rng rng = make_stream(cfg.seed, static_cast<std::uint64_t>(N), static_cast<std::uint64_t>(r));
      const SymbolVector a = map_symbols(random_indices(rng, N, cfg.M), alphabet);
      const ReceivedBlock block = simulate_block(a, model, c, rng, ReceivePaths::Whitened);
      const DetectionResult d = detect_psk(block.y_w, model, c, rng);
      total.push_back(d.total_seconds);
      sdp.push_back(d.solve_seconds);
    }
    report.rows.push_back({N, cfg.M, repetitions, median(total), median(sdp)});
  }
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& row : report.rows) {
    xs.push_back(row.N);
    ys.push_back(row.median_seconds);
  }
  report.exponent = loglog_slope(xs, ys);
  report.exponent_ok = report.exponent && *report.exponent <= 4.0;
  return report;
}

void write_complexity_table(std::ostream& os, const ComplexityReport& report) {
  os << "N,M,repetitions,median_seconds,median_sdp_seconds\n";
  char buf[160];
  for (const auto& r : report.rows) {
    std::snprintf(buf, sizeof buf, "%d,%d,%d,%.6g,%.6g\n", r.N, r.M, r.repetitions, r.median_seconds,
                  r.median_sdp_seconds);
    os << buf;
  }
  if (report.exponent) {
    std::snprintf(buf, sizeof buf, "# exponent=%.4f ok=%s\n", *report.exponent, report.exponent_ok ? "true" : "false");
    os << buf;
  } else {
    os << "# exponent=none (fewer than 3 points)\n";
  }
}

}  // namespace ftn
