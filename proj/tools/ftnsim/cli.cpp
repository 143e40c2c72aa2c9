#include "ftnsim/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "ftnsdr/ber_sweep.hpp"
#include "ftnsdr/complexity.hpp"
#include "ftnsdr/covariance.hpp"
#include "ftnsdr/errors.hpp"
#include "ftnsdr/mlse.hpp"
#include "ftnsdr/psk_sdr.hpp"
#include "ftnsdr/spectral_efficiency.hpp"
#include "ftnsdr/stsdrse.hpp"
#include "ftnsim/config_file.hpp"

namespace ftnsim {

namespace {

class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Invocation {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string output_path;
  KeyValues flags;  // per-field flags, applied last
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, sep);)
    if (!item.empty()) parts.push_back(item);
  return parts;
}

KeyValues resolve(const Invocation& inv) {
  KeyValues kv;
  if (!inv.config_path.empty()) kv = load_config_file(inv.config_path);
  for (const auto& o : inv.overrides) apply_override(kv, o);
  for (const auto& [k, v] : inv.flags) kv[k] = v;
  return kv;
}

// Writes to --output when given, otherwise to `out`.
void emit(const Invocation& inv, std::ostream& out, const std::function<void(std::ostream&)>& body) {
  if (inv.output_path.empty()) {
    body(out);
    return;
  }
  std::ofstream f(inv.output_path);
  if (!f) throw OutputError("cannot open '" + inv.output_path + "' for writing");
  body(f);
  f.flush();
  if (!f) throw OutputError("write to '" + inv.output_path + "' failed");
}

std::string value_or(const KeyValues& kv, const std::string& key, const std::string& fallback) {
  const auto it = kv.find(key);
  return it == kv.end() ? fallback : it->second;
}

std::vector<ftn::DetectorKind> detectors_from(const KeyValues& kv, const ftn::FtnConfig& cfg) {
  const std::string fallback = cfg.modulation == ftn::Modulation::Psk ? "sdr-psk" : "stsdrse";
  std::vector<ftn::DetectorKind> out;
  for (const auto& name : split(value_or(kv, "detector", fallback), ',')) {
    try {
      out.push_back(ftn::detector_from_string(name));
    } catch (const ftn::ParameterError& e) {
      throw ConfigError(e.what());
    }
  }
  return out;
}

int cmd_simulate(const Invocation& inv, std::ostream& out) {
  const KeyValues kv = resolve(inv);
  ftn::SweepSpec spec;
  spec.cfg = make_config(kv, {"detector", "snr_grid", "max_trials", "max_bit_errors", "threads"});
  spec.detectors = detectors_from(kv, spec.cfg);
  if (kv.count("snr_grid")) {
    spec.snr_grid_db = ftn::parse_snr_grid(kv.at("snr_grid"));
  } else {
    spec.snr_grid_db = {spec.cfg.snr_db()};
  }
  if (kv.count("max_trials")) spec.max_trials = to_integer("max_trials", kv.at("max_trials"));
  if (kv.count("max_bit_errors")) spec.max_bit_errors = to_integer("max_bit_errors", kv.at("max_bit_errors"));
  if (kv.count("threads")) spec.threads = static_cast<int>(to_integer("threads", kv.at("threads")));
  const ftn::BerReport report = ftn::run_ber_sweep(spec);
  emit(inv, out, [&](std::ostream& os) { ftn::write_csv(os, report); });
  return kExitOk;
}

ftn::CVector read_samples(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open input '" + path + "'");
  std::vector<ftn::cplx> v;
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    if (const auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream ls(line);
    double re = 0.0;
    double im = 0.0;
    if (!(ls >> re)) continue;
    std::string extra;
    if (!(ls >> im) || (ls >> extra))
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected 're im'");
    v.emplace_back(re, im);
  }
  ftn::CVector y(static_cast<Eigen::Index>(v.size()));
  for (std::size_t k = 0; k < v.size(); ++k) y[static_cast<Eigen::Index>(k)] = v[k];
  return y;
}

int cmd_detect(const Invocation& inv, std::ostream& out) {
  KeyValues kv = resolve(inv);
  if (!kv.count("input")) throw ConfigError("detect needs --input");
  const ftn::CVector y = read_samples(kv.at("input"));
  if (y.size() == 0) throw ConfigError("input holds no samples");
  // the block length follows the input
  kv["N"] = std::to_string(y.size());
  const ftn::FtnConfig cfg = make_config(kv, {"input", "detector", "path"});
  const auto dets = detectors_from(kv, cfg);
  if (dets.size() != 1) throw ConfigError("detect takes exactly one detector");
  const std::string path = value_or(kv, "path", "whitened");
  if (path != "whitened" && path != "colored") throw ConfigError("path must be whitened or colored");

  const ftn::IsiModel model = ftn::build_isi_model(ftn::rrc_pulse(cfg.beta, cfg.T), cfg);
  ftn::Rng rng = ftn::make_stream(cfg.seed, 0xDE7EC7ULL);
  std::vector<int> indices;
  switch (dets.front()) {
    case ftn::DetectorKind::SdrPsk:
      if (cfg.modulation != ftn::Modulation::Psk) throw ConfigError("sdr-psk needs modulation = psk");
      if (path != "whitened") throw ConfigError("sdr-psk works on whitened samples");
      indices = ftn::detect_psk(y, model, cfg, rng).a_hat.indices;
      break;
    case ftn::DetectorKind::Stsdrse16Qam: {
      if (cfg.modulation != ftn::Modulation::Qam16) throw ConfigError("stsdrse needs modulation = qam16");
      ftn::ReceivedBlock block;
      if (path == "whitened") {
        block.y_w = y;
        block.has_whitened = true;
      } else {
        block.y_c = y;
        block.has_colored = true;
      }
      const auto which = path == "whitened" ? ftn::ReceivePath::Whitened : ftn::ReceivePath::Colored;
      indices = ftn::detect_16qam(block, model, cfg, which, rng).a_hat.indices;
      break;
    }
    case ftn::DetectorKind::MlseOracle: {
      if (path != "whitened") throw ConfigError("mlse works on whitened samples");
      const auto alphabet = ftn::Constellation::for_config(cfg);
      indices = ftn::mlse_exhaustive(y, ftn::whitened_channel(model, cfg), alphabet.points()).indices;
      break;
    }
  }
  emit(inv, out, [&](std::ostream& os) {
    for (std::size_t k = 0; k < indices.size(); ++k) os << (k ? " " : "") << indices[k];
    os << "\n";
  });
  return kExitOk;
}

int cmd_verify_covariance(const Invocation& inv, std::ostream& out) {
  const KeyValues kv = resolve(inv);
  const ftn::FtnConfig cfg = make_config(kv, {"trials"});
  const long long trials = to_integer("trials", value_or(kv, "trials", "100000"));
  const ftn::IsiModel model = ftn::build_isi_model(ftn::rrc_pulse(cfg.beta, cfg.T), cfg);
  const ftn::CovarianceReport r = ftn::verify_noise_covariance(cfg.N, cfg.sigma2, trials, model, cfg.seed);
  if (inv.output_path.empty()) {
    out << ftn::covariance_summary(r) << "\n";
  } else {
    emit(inv, out, [&](std::ostream& os) { ftn::write_covariance_report(os, r); });
    out << ftn::covariance_summary(r) << "\n";
  }
  return kExitOk;
}

int cmd_sweep_se(const Invocation& inv, std::ostream& out) {
  KeyValues kv = resolve(inv);
  std::vector<double> taus;
  for (const auto& t : split(value_or(kv, "tau", "0.85"), ',')) taus.push_back(to_double("tau", t));
  if (taus.empty()) throw ConfigError("tau list is empty");
  kv.erase("tau");
  const ftn::FtnConfig base = make_config(kv);
  for (double t : taus) {
    ftn::FtnConfig c = base;
    c.tau = t;
    try {
      c.validate();
    } catch (const std::exception& e) {
      throw ConfigError(e.what());
    }
  }
  emit(inv, out, [&](std::ostream& os) {
    os << "M,tau,beta,se_bits_per_s_per_hz,gain_percent\n";
    char buf[160];
    for (double t : taus) {
      std::snprintf(buf, sizeof buf, "%d,%.10g,%.10g,%.6f,%.4f\n", base.M, t, base.beta,
                    ftn::spectral_efficiency(base.M, t, base.beta), ftn::se_gain_percent(t));
      os << buf;
    }
  });
  return kExitOk;
}

int cmd_complexity(const Invocation& inv, std::ostream& out) {
  const KeyValues kv = resolve(inv);
  const ftn::FtnConfig cfg = make_config(kv, {"N_list", "repetitions"});
  std::vector<int> Ns;
  for (const auto& n : split(value_or(kv, "N_list", "8,16,32,64"), ','))
    Ns.push_back(static_cast<int>(to_integer("N_list", n)));
  const int reps = static_cast<int>(to_integer("repetitions", value_or(kv, "repetitions", "7")));
  const ftn::ComplexityReport r = ftn::complexity_probe(Ns, cfg, reps);
  emit(inv, out, [&](std::ostream& os) { ftn::write_complexity_table(os, r); });
  return kExitOk;
}

void add_common(CLI::App* sub, Invocation& inv) {
  sub->add_option("--config", inv.config_path, "Flat key = value config file");
  sub->add_option("--override", inv.overrides, "key=value, applied after the config file")->allow_extra_args(false);
  sub->add_option("--output", inv.output_path, "Output file (default: stdout)");
}

// Every flag below lands in the key/value map under `key`.
void add_field(CLI::App* sub, Invocation& inv, const std::string& flag, const std::string& key, const std::string& help) {
  sub->add_option_function<std::string>(flag, [&inv, key](const std::string& v) { inv.flags[key] = v; }, help);
}

void add_link_fields(CLI::App* sub, Invocation& inv) {
  add_field(sub, inv, "--seed", "seed", "RNG seed");
  add_field(sub, inv, "--modulation", "modulation", "psk or qam16");
  add_field(sub, inv, "--M", "M", "Constellation order");
  add_field(sub, inv, "--tau", "tau", "Time-packing factor");
  add_field(sub, inv, "--beta", "beta", "Roll-off factor");
  add_field(sub, inv, "--T", "T", "Symbol duration");
  add_field(sub, inv, "--Es", "Es", "Symbol energy");
  add_field(sub, inv, "--sigma2", "sigma2", "Noise variance per complex sample");
  add_field(sub, inv, "--snr-db", "snr_db", "SNR in dB, sets sigma2");
  add_field(sub, inv, "--N", "N", "Block length");
  add_field(sub, inv, "--K", "K", "One-sided ISI truncation");
  add_field(sub, inv, "--L", "L", "Randomization draws");
  add_field(sub, inv, "--factor-tol", "factor_tol", "Spectral factorization tolerance");
  add_field(sub, inv, "--linked-noise", "linked_noise", "Derive whitened noise from the colored draw");
}

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

int fail(std::ostream& err, int code, const char* kind, const std::string& message) {
  err << "error: code=" << kind << " message=" << one_line(message) << "\n";
  return code;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Faster-than-Nyquist detection toolkit", "ftnsim"};
  app.require_subcommand(1);
  Invocation inv;
  std::function<int(const Invocation&, std::ostream&)> action;

  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo BER/SER sweep, CSV output");
  add_common(simulate, inv);
  add_link_fields(simulate, inv);
  add_field(simulate, inv, "--detector", "detector", "sdr-psk, stsdrse or mlse (comma list allowed)");
  add_field(simulate, inv, "--snr-grid", "snr_grid", "a:b:step or comma list, dB");
  add_field(simulate, inv, "--max-trials", "max_trials", "Trials per point");
  add_field(simulate, inv, "--max-bit-errors", "max_bit_errors", "Bit errors that end a point");
  add_field(simulate, inv, "--threads", "threads", "Worker threads (0: all cores)");
  simulate->callback([&] { action = cmd_simulate; });

  auto* detect = app.add_subcommand("detect", "Detect one received block read as 're im' lines");
  add_common(detect, inv);
  add_link_fields(detect, inv);
  add_field(detect, inv, "--input", "input", "Received samples");
  add_field(detect, inv, "--detector", "detector", "sdr-psk, stsdrse or mlse");
  add_field(detect, inv, "--path", "path", "whitened or colored");
  detect->callback([&] { action = cmd_detect; });

  auto* cov = app.add_subcommand("verify-covariance", "Monte-Carlo check of the whitened-noise covariance");
  add_common(cov, inv);
  add_link_fields(cov, inv);
  add_field(cov, inv, "--trials", "trials", "Noise draws");
  cov->callback([&] { action = cmd_verify_covariance; });

  auto* se = app.add_subcommand("sweep-se", "Spectral efficiency per tau");
  add_common(se, inv);
  add_link_fields(se, inv);
  se->callback([&] { action = cmd_sweep_se; });

  auto* cx = app.add_subcommand("complexity", "Median detection time versus block length");
  add_common(cx, inv);
  add_link_fields(cx, inv);
  add_field(cx, inv, "--N-list", "N_list", "Comma list of block lengths");
  add_field(cx, inv, "--repetitions", "repetitions", "Blocks per length");
  cx->callback([&] { action = cmd_complexity; });

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    return fail(err, kExitUsage, "usage", e.what());
  }

  try {
    return action(inv, out);
  } catch (const ConfigError& e) {
    return fail(err, kExitConfig, "config", e.what());
  } catch (const ftn::ParameterError& e) {
    return fail(err, kExitConfig, "config", e.what());
  } catch (const OutputError& e) {
    return fail(err, kExitOutput, "output", e.what());
  } catch (const std::exception& e) {
    return fail(err, kExitRuntime, "runtime", e.what());
  }
}

}  // namespace ftnsim
