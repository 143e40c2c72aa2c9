#pragma once

#include <istream>
#include <map>
#include <stdexcept>
#include <string>

#include "ftnsdr/config.hpp"

namespace ftnsim {

/// Malformed config text or an unknown key.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using KeyValues = std::map<std::string, std::string>;

/// Flat `key = value` lines; `#` starts a comment, values may be quoted.
KeyValues parse_config(std::istream& in, const std::string& origin = "config");
KeyValues load_config_file(const std::string& path);

/// Parses "key=value" into `kv`, replacing any previous value.
void apply_override(KeyValues& kv, const std::string& assignment);

/// Builds a link configuration from the FtnConfig keys in `kv`. `snr_db`, if
/// present, sets sigma2 after every other field. Keys that are neither link
/// fields nor listed in `extra_keys` raise ConfigError.
ftn::FtnConfig make_config(const KeyValues& kv, const std::initializer_list<const char*>& extra_keys = {});

double to_double(const std::string& key, const std::string& value);
long long to_integer(const std::string& key, const std::string& value);
bool to_bool(const std::string& key, const std::string& value);

}  // namespace ftnsim
