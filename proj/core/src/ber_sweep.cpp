#include "ftnsdr/ber_sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <thread>

#include "ftnsdr/channel.hpp"
#include "ftnsdr/constellation.hpp"
#include "ftnsdr/errors.hpp"
#include "ftnsdr/mlse.hpp"
#include "ftnsdr/psk_sdr.hpp"
#include "ftnsdr/spectral_efficiency.hpp"
#include "ftnsdr/stsdrse.hpp"

namespace ftn {

std::string to_string(DetectorKind d) {
  switch (d) {
    case DetectorKind::SdrPsk: return "sdr-psk";
    case DetectorKind::Stsdrse16Qam: return "stsdrse";
    case DetectorKind::MlseOracle: return "mlse";
  }
  return "unknown";
}

DetectorKind detector_from_string(const std::string& s) {
  if (s == "sdr-psk") return DetectorKind::SdrPsk;
  if (s == "stsdrse") return DetectorKind::Stsdrse16Qam;
  if (s == "mlse") return DetectorKind::MlseOracle;
  throw ParameterError("unknown detector '" + s + "' (expected sdr-psk, stsdrse or mlse)");
}

void SweepSpec::validate() const {
  cfg.validate();
  if (snr_grid_db.empty()) throw ParameterError("SweepSpec: SNR grid is empty");
  if (detectors.empty()) throw ParameterError("SweepSpec: no detectors selected");
  if (max_trials < 1) throw ParameterError("SweepSpec: max_trials must be at least 1");
  if (max_bit_errors < 1) throw ParameterError("SweepSpec: max_bit_errors must be at least 1");
  if (threads < 0) throw ParameterError("SweepSpec: threads must be nonnegative");
  for (double s : snr_grid_db)
    if (!std::isfinite(s)) throw ParameterError("SweepSpec: non-finite SNR grid point");
  for (DetectorKind d : detectors) {
    if (d == DetectorKind::SdrPsk && cfg.modulation != Modulation::Psk)
      throw ParameterError("SweepSpec: sdr-psk needs a PSK configuration");
    if (d == DetectorKind::Stsdrse16Qam && cfg.modulation != Modulation::Qam16)
      throw ParameterError("SweepSpec: stsdrse needs a 16-QAM configuration");
  }
}

namespace {

using Clock = std::chrono::steady_clock;

struct TrialOutcome {
  bool erased = false;
  int bit_errors = 0;
  int symbol_errors = 0;
};

TrialOutcome run_trial(const SweepSpec& spec, const FtnConfig& cfg, const IsiModel& model, const Constellation& alphabet,
                       DetectorKind det, std::size_t det_slot, std::size_t point, long long trial) {
  TrialOutcome out;
  Rng data = make_stream(spec.cfg.seed, point, static_cast<std::uint64_t>(trial), 0);
  const std::vector<int> idx = random_indices(data, cfg.N, alphabet.order());
  const SymbolVector a = map_symbols(idx, alphabet);
  const ReceivedBlock block = simulate_block(a, model, cfg, data, ReceivePaths::Whitened);
  Rng local = make_stream(spec.cfg.seed, point, static_cast<std::uint64_t>(trial), det_slot + 1);
  DetectOptions opts;
  opts.solver = spec.solver;
  std::vector<int> detected;
  try {
    switch (det) {
      case DetectorKind::SdrPsk:
        detected = detect_psk(block.y_w, model, cfg, local, opts).a_hat.indices;
        break;
      case DetectorKind::Stsdrse16Qam:
        detected = detect_16qam(block, model, cfg, ReceivePath::Whitened, local, opts).a_hat.indices;
        break;
      case DetectorKind::MlseOracle:
        detected = mlse_exhaustive(block.y_w, whitened_channel(model, cfg), alphabet.points()).indices;
        break;
    }
  } catch (const std::exception&) {
    out.erased = true;
    return out;
  }
  for (int k = 0; k < cfg.N; ++k) {
    const auto s = static_cast<std::size_t>(k);
    if (detected[s] != idx[s]) {
      ++out.symbol_errors;
      out.bit_errors += alphabet.bit_errors(idx[s], detected[s]);
    }
  }
  return out;
}

}  // namespace

BerReport run_ber_sweep(const SweepSpec& spec) {
  spec.validate();
  BerReport report;
  report.cfg = spec.cfg;
  report.seed = spec.cfg.seed;
  report.spectral_efficiency = spectral_efficiency(spec.cfg.M, spec.cfg.tau, spec.cfg.beta);

  const IsiModel model = build_isi_model(rrc_pulse(spec.cfg.beta, spec.cfg.T), spec.cfg);
  const Constellation alphabet = Constellation::for_config(spec.cfg);
  const int threads = spec.threads > 0 ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
  const long long batch = std::max<long long>(16, 4LL * threads);

  for (std::size_t p = 0; p < spec.snr_grid_db.size(); ++p) {
    FtnConfig cfg = spec.cfg;
    cfg.sigma2 = cfg.sigma2_for_snr(spec.snr_grid_db[p]);
    for (std::size_t d = 0; d < spec.detectors.size(); ++d) {
      const DetectorKind det = spec.detectors[d];
      const auto t0 = Clock::now();
      BerPoint pt;
      pt.detector = det;
      pt.snr_db = spec.snr_grid_db[p];
      // detector slot follows the enum so streams do not depend on list order
      const auto slot = static_cast<std::size_t>(det);
      bool done = false;
      for (long long start = 0; start < spec.max_trials && !done; start += batch) {
        const long long count = std::min(batch, spec.max_trials - start);
        std::vector<TrialOutcome> results(static_cast<std::size_t>(count));
        auto worker = [&](int tid) {
          for (long long i = tid; i < count; i += threads)
            results[static_cast<std::size_t>(i)] = run_trial(spec, cfg, model, alphabet, det, slot, p, start + i);
        };
        if (threads == 1) {
          worker(0);
        } else {
          std::vector<std::thread> pool;
          for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
          for (auto& t : pool) t.join();
        }
        for (const TrialOutcome& r : results) {
          if (r.erased) {
            ++pt.erased;
            continue;
          }
          ++pt.trials;
          pt.bit_errors += r.bit_errors;
          pt.symbol_errors += r.symbol_errors;
          if (pt.bit_errors >= spec.max_bit_errors) {
            done = true;
            break;
          }
        }
      }
      const double bits = static_cast<double>(pt.trials) * cfg.N * cfg.bits_per_symbol();
      pt.ber = pt.trials > 0 ? static_cast<double>(pt.bit_errors) / bits : 0.0;
      pt.ser = pt.trials > 0 ? static_cast<double>(pt.symbol_errors) / (static_cast<double>(pt.trials) * cfg.N) : 0.0;
      pt.wall_time_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
      report.points.push_back(pt);
    }
  }
  return report;
}

void write_csv(std::ostream& os, const BerReport& report) {
  os << "detector,M,tau,beta,N,snr_db,trials,bit_errors,symbol_errors,ber,ser,se_bits_per_s_per_hz,seed,wall_time_ms\n";
  char buf[512];
  for (const BerPoint& p : report.points) {
    std::snprintf(buf, sizeof buf, "%s,%d,%.10g,%.10g,%d,%.10g,%lld,%lld,%lld,%.10g,%.10g,%.10g,%llu,%.3f\n",
                  to_string(p.detector).c_str(), report.cfg.M, report.cfg.tau, report.cfg.beta, report.cfg.N, p.snr_db,
                  p.trials, p.bit_errors, p.symbol_errors, p.ber, p.ser, report.spectral_efficiency,
                  static_cast<unsigned long long>(report.seed), p.wall_time_ms);
    os << buf;
  }
}

std::vector<double> parse_snr_grid(const std::string& spec) {
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw ParameterError("bad SNR grid '" + spec + "'");
    }
    if (used != s.size() || !std::isfinite(v)) throw ParameterError("bad SNR grid '" + spec + "'");
    return v;
  };
  std::vector<std::string> parts;
  const char sep = spec.find(':') != std::string::npos ? ':' : ',';
  std::stringstream ss(spec);
  for (std::string item; std::getline(ss, item, sep);) parts.push_back(item);
  std::vector<double> grid;
  if (sep == ',') {
    for (const auto& s : parts) grid.push_back(number(s));
  } else {
    if (parts.size() != 3) throw ParameterError("SNR grid must be a:b:step");
    const double a = number(parts[0]);
    const double b = number(parts[1]);
    const double step = number(parts[2]);
    if (step <= 0.0 || b < a) throw ParameterError("SNR grid needs step > 0 and b >= a");
    const auto n = static_cast<long long>(std::floor((b - a) / step + 1e-9));
    if (n > 100000) throw ParameterError("SNR grid has too many points");
    for (long long k = 0; k <= n; ++k) grid.push_back(a + static_cast<double>(k) * step);
  }
  if (grid.empty()) throw ParameterError("SNR grid is empty");
  return grid;
}

}  // namespace ftn
