#pragma once

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "folium/errors.hpp"

namespace folium {

/// Shared run parameters: truncation order, tolerances, randomness, budgets.
struct RunConfig {
  int order = 24;            // series truncation order N
  double eps_coef = 1e-10;   // coefficient comparison tolerance
  double eps_root = 1e-8;    // root matching tolerance
  double eps_match = 1e-8;   // conjugacy witness tolerance
  std::uint64_t seed = 1;
  long long budget = 100000; // random search budget
  double delta_loop = 0.1;   // maximal loop radius in the value plane

  void validate() const {
    if (order < 4) throw domain_error("order must be at least 4");
    if (eps_coef <= 0 || eps_root <= 0 || eps_match <= 0)
      throw domain_error("tolerances must be positive");
    if (budget < 1) throw domain_error("budget must be positive");
    if (delta_loop <= 0) throw domain_error("loop radius must be positive");
  }
};

namespace detail {

inline std::string trim_ws(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace detail

/// Parse a key=value file ('#' starts a comment; blank lines ignored).
inline std::map<std::string, std::string> parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw domain_error("cannot open config file: " + path);
  std::map<std::string, std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = detail::trim_ws(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw domain_error("config line is not of the form key=value: " + line);
    out[detail::trim_ws(line.substr(0, eq))] = detail::trim_ws(line.substr(eq + 1));
  }
  return out;
}

/// Overlay key=value entries onto a config (unknown keys rejected).
inline void apply_config_entries(RunConfig& cfg, const std::map<std::string, std::string>& kv) {
  for (const auto& [key, value] : kv) {
    try {
      if (key == "order")
        cfg.order = std::stoi(value);
      else if (key == "eps_coef")
        cfg.eps_coef = std::stod(value);
      else if (key == "eps_root")
        cfg.eps_root = std::stod(value);
      else if (key == "eps_match")
        cfg.eps_match = std::stod(value);
      else if (key == "seed")
        cfg.seed = static_cast<std::uint64_t>(std::stoull(value));
      else if (key == "budget")
        cfg.budget = std::stoll(value);
      else if (key == "delta_loop")
        cfg.delta_loop = std::stod(value);
      else
        throw domain_error("unknown config key: " + key);
    } catch (const std::invalid_argument&) {
      throw domain_error("config value for '" + key + "' is not a number: " + value);
    } catch (const std::out_of_range&) {
      throw domain_error("config value for '" + key + "' is out of range: " + value);
    }
  }
}

/// Seed precedence: explicit CLI flag > FOLIUM_SEED environment > config file
/// value (already applied) > default.
inline void apply_seed_env(RunConfig& cfg) {
  if (const char* env = std::getenv("FOLIUM_SEED")) {
    try {
      cfg.seed = static_cast<std::uint64_t>(std::stoull(env));
    } catch (...) {
      throw domain_error(std::string("FOLIUM_SEED is not a number: ") + env);
    }
  }
}

}  // namespace folium
