#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ftnsdr/config.hpp"
#include "ftnsdr/sdp_solver.hpp"

namespace ftn {

enum class DetectorKind { SdrPsk, Stsdrse16Qam, MlseOracle };

std::string to_string(DetectorKind d);
DetectorKind detector_from_string(const std::string& s);

struct SweepSpec {
  FtnConfig cfg;
  std::vector<double> snr_grid_db;
  std::vector<DetectorKind> detectors;
  long long max_trials = 1000;
  long long max_bit_errors = 200;
  int threads = 0;  ///< 0: hardware concurrency
  sdp::SolverOptions solver;

  void validate() const;
};

struct BerPoint {
  DetectorKind detector = DetectorKind::SdrPsk;
  double snr_db = 0.0;
  long long trials = 0;          ///< completed (non-erased) blocks
  long long erased = 0;          ///< blocks whose detector threw
  long long bit_errors = 0;
  long long symbol_errors = 0;
  double ber = 0.0;
  double ser = 0.0;
  double wall_time_ms = 0.0;
};

struct BerReport {
  FtnConfig cfg;
  std::uint64_t seed = 0;
  double spectral_efficiency = 0.0;
  std::string snr_convention = "snr_db = 10 log10(tau Es / sigma2)";
  std::vector<BerPoint> points;
};

/// Monte-Carlo BER/SER per detector and SNR point.
///
/// Trial t at grid point p draws symbols and noise from stream (seed, p, t),
/// shared by all detectors; each detector randomizes on its own sub-stream.
/// Trials run in fixed-size batches; a point stops at the first trial (in
/// trial order) where bit errors reach max_bit_errors, or at max_trials.
BerReport run_ber_sweep(const SweepSpec& spec);

/// Header + one row per point:
/// detector,M,tau,beta,N,snr_db,trials,bit_errors,symbol_errors,ber,ser,
/// se_bits_per_s_per_hz,seed,wall_time_ms
void write_csv(std::ostream& os, const BerReport& report);

std::vector<double> parse_snr_grid(const std::string& spec);

}  // namespace ftn
