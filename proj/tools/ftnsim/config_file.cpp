#include "ftnsim/config_file.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>

namespace ftnsim {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string unquote(const std::string& v) {
  if (v.size() >= 2 && (v.front() == '"' || v.front() == '\'') && v.back() == v.front()) return v.substr(1, v.size() - 2);
  return v;
}

const std::set<std::string>& link_keys() {
  static const std::set<std::string> keys{"modulation", "M",    "tau",  "beta",       "T",           "Es",    "sigma2",
                                          "snr_db",     "N",    "K",    "L",          "seed",        "factor_tol",
                                          "linked_noise"};
  return keys;
}

}  // namespace

KeyValues parse_config(std::istream& in, const std::string& origin) {
  KeyValues kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    // a '#' inside quotes is kept
    bool quoted = false;
    char q = 0;
    for (std::size_t i = 0; i < line.size(); ++i) {
      const char c = line[i];
      if (quoted && c == q) {
        quoted = false;
      } else if (!quoted && (c == '"' || c == '\'')) {
        quoted = true;
        q = c;
      } else if (!quoted && c == '#') {
        line.resize(i);
        break;
      }
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = unquote(trim(line.substr(eq + 1)));
    if (key.empty()) throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
    kv[key] = value;
  }
  return kv;
}

KeyValues load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in, path);
}

void apply_override(KeyValues& kv, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError("override '" + assignment + "' is not key=value");
  kv[trim(assignment.substr(0, eq))] = unquote(trim(assignment.substr(eq + 1)));
}

double to_double(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': '" + value + "' is not a number");
  }
  if (used != value.size() || !std::isfinite(v)) throw ConfigError("key '" + key + "': '" + value + "' is not a number");
  return v;
}

long long to_integer(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(value, &used);
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': '" + value + "' is not an integer");
  }
  if (used != value.size()) throw ConfigError("key '" + key + "': '" + value + "' is not an integer");
  return v;
}

bool to_bool(const std::string& key, const std::string& value) {
  std::string v = value;
  std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("key '" + key + "': '" + value + "' is not a boolean");
}

ftn::FtnConfig make_config(const KeyValues& kv, const std::initializer_list<const char*>& extra_keys) {
  std::set<std::string> allowed(link_keys());
  for (const char* k : extra_keys) allowed.insert(k);
  for (const auto& [k, v] : kv)
    if (!allowed.count(k)) throw ConfigError("unknown key '" + k + "'");

  ftn::FtnConfig cfg;
  auto get = [&](const char* k) -> const std::string* {
    const auto it = kv.find(k);
    return it == kv.end() ? nullptr : &it->second;
  };
  if (auto v = get("modulation")) {
    try {
      cfg.modulation = ftn::modulation_from_string(*v);
    } catch (const std::exception& e) {
      throw ConfigError(e.what());
    }
    if (cfg.modulation == ftn::Modulation::Qam16) cfg.M = 16;
  }
  if (auto v = get("M")) cfg.M = static_cast<int>(to_integer("M", *v));
  if (auto v = get("tau")) cfg.tau = to_double("tau", *v);
  if (auto v = get("beta")) cfg.beta = to_double("beta", *v);
  if (auto v = get("T")) cfg.T = to_double("T", *v);
  if (auto v = get("Es")) cfg.Es = to_double("Es", *v);
  if (auto v = get("sigma2")) cfg.sigma2 = to_double("sigma2", *v);
  if (auto v = get("N")) cfg.N = static_cast<int>(to_integer("N", *v));
  if (auto v = get("K")) cfg.K = static_cast<int>(to_integer("K", *v));
  if (auto v = get("L")) cfg.L = static_cast<int>(to_integer("L", *v));
  if (auto v = get("seed")) {
    const long long s = to_integer("seed", *v);
    if (s < 0) throw ConfigError("key 'seed': must be nonnegative");
    cfg.seed = static_cast<std::uint64_t>(s);
  }
  if (auto v = get("factor_tol")) cfg.factor_tol = to_double("factor_tol", *v);
  if (auto v = get("linked_noise")) cfg.linked_noise = to_bool("linked_noise", *v);
  if (auto v = get("snr_db")) cfg.sigma2 = cfg.sigma2_for_snr(to_double("snr_db", *v));
  try {
    cfg.validate();
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

}  // namespace ftnsim
