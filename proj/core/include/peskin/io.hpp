#pragma once

#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "peskin/curve.hpp"
#include "peskin/evolution.hpp"

namespace peskin {

/// Malformed input file.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Curve files: a header line `peskin-curve v1 N=<n>` followed by N lines
/// `x y` holding the nodes in round-trip precision.
std::string format_curve(const Curve& c);
Curve parse_curve(std::string_view text);
void write_curve(const std::string& path, const Curve& c);
Curve read_curve(const std::string& path);

inline constexpr int kDiagnosticsSchema = 1;

/// One NDJSON line (no trailing newline).
std::string diagnostics_json(const DiagnosticsRecord& r);

/// Appends lines and flushes each, so a crashed run leaves a readable prefix.
class NdjsonWriter {
 public:
  explicit NdjsonWriter(const std::string& path);
  void write(const std::string& line);

 private:
  std::ofstream out_;
};

struct RunManifest {
  std::string config_digest;
  std::string code_version;
  std::string started;
  std::string finished;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::uint64_t seed = 0;
  std::string status = "ok";
};

/// Writes `manifest.txt`; refuses to overwrite an existing manifest.
void write_manifest(const std::string& path, const RunManifest& m);

/// 64-bit FNV-1a, hex encoded.
std::string digest(std::string_view text);

/// UTC time as ISO 8601.
std::string utc_timestamp();

std::string code_version();

}  // namespace peskin
