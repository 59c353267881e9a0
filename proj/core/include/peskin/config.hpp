#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "peskin/evolution.hpp"
#include "peskin/tension.hpp"

namespace peskin {

/// Invalid or inconsistent configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flat `key = value` settings with dotted keys. `[section]` lines prefix
/// the keys that follow, `#` starts a comment, and values may be quoted.
class Config {
 public:
  static Config parse(std::string_view text);
  static Config load(const std::string& path);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  void set(const std::string& key, std::string value) { values_[key] = std::move(value); }

  std::string text(const std::string& key, const std::string& fallback) const;
  double number(const std::string& key, double fallback) const;
  long long integer(const std::string& key, long long fallback) const;
  std::vector<double> numbers(const std::string& key) const;

  /// Sorted `key = value` lines; the digest input of a run.
  std::string canonical() const;

  /// Throws on keys outside `known` (catches typos).
  void require_known(const std::vector<std::string>& known) const;

 private:
  std::map<std::string, std::string> values_;
};

/// Keys accepted by simulation configs.
const std::vector<std::string>& simulation_keys();

/// tension.kind = hookean | power | arctan | table, with tension.k0,
/// tension.coefficient, tension.p (or tension.exponent), tension.window =
/// [a, b] (or tension.window_lo/hi), tension.table_r / tension.table_t
/// (comma lists). tension.globalize = true extends the law from its window;
/// tension.globalize_a / tension.globalize_b override the interval.
TensionLaw make_law(const Config& c);

/// mu.kind = one | log.
MuWeight make_mu(const Config& c);

struct RunSettings {
  SimConfig sim;
  std::string output_dir = "run";
};

RunSettings make_run_settings(const Config& c);

}  // namespace peskin
