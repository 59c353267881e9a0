#include "peskin/io.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <sstream>

#include <json.hpp>

namespace peskin {

std::string format_curve(const Curve& c) {
  std::string out = "peskin-curve v1 N=" + std::to_string(c.size()) + "\n";
  char line[96];
  for (const Vec2& v : c.nodes()) {
    std::snprintf(line, sizeof line, "%.17g %.17g\n", v.x, v.y);
    out += line;
  }
  return out;
}

Curve parse_curve(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string magic, version, size;
  if (!(in >> magic >> version >> size) || magic != "peskin-curve" || version != "v1" || size.rfind("N=", 0) != 0) {
    throw FormatError("curve file: expected header 'peskin-curve v1 N=<n>'");
  }
  int n = 0;
  try {
    n = std::stoi(size.substr(2));
  } catch (const std::exception&) {
    throw FormatError("curve file: bad node count '" + size + "'");
  }
  if (n < 2 || n % 2 != 0) throw FormatError("curve file: node count must be even and >= 2");
  std::vector<Vec2> nodes(static_cast<std::size_t>(n));
  for (auto& v : nodes) {
    if (!(in >> v.x >> v.y)) throw FormatError("curve file: expected " + std::to_string(n) + " nodes");
  }
  std::string extra;
  if (in >> extra) throw FormatError("curve file: trailing data after the nodes");
  return Curve::from_nodes(std::move(nodes));
}

void write_curve(const std::string& path, const Curve& c) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << format_curve(c);
}

Curve read_curve(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read curve file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_curve(ss.str());
}

std::string diagnostics_json(const DiagnosticsRecord& r) {
  nlohmann::ordered_json j;
  j["schema"] = kDiagnosticsSchema;
  j["step"] = r.step;
  j["t"] = r.t;
  j["arc_chord"] = r.arc_chord;
  j["arc_chord_estimate"] = r.arc_chord_estimate;
  j["l2"] = r.l2;
  j["h_half"] = r.h_half;
  j["h1"] = r.h1;
  j["besov_half_mu"] = r.besov_half_mu;
  j["step_scheme"] = r.scheme;
  return j.dump();
}

NdjsonWriter::NdjsonWriter(const std::string& path) : out_(path, std::ios::binary | std::ios::trunc) {
  if (!out_) throw std::runtime_error("cannot write " + path);
}

void NdjsonWriter::write(const std::string& line) {
  out_ << line << '\n';
  out_.flush();
}

void write_manifest(const std::string& path, const RunManifest& m) {
  if (std::filesystem::exists(path)) throw std::runtime_error("manifest already exists: " + path);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "config_digest = " << m.config_digest << '\n'
      << "code_version = " << m.code_version << '\n'
      << "started = " << m.started << '\n'
      << "finished = " << m.finished << '\n'
      << "seed = " << m.seed << '\n'
      << "status = " << m.status << '\n';
  for (const auto& f : m.inputs) out << "input = " << f << '\n';
  for (const auto& f : m.outputs) out << "output = " << f << '\n';
}

std::string digest(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

#ifndef PESKIN_VERSION
#define PESKIN_VERSION "unknown"
#endif

std::string code_version() { return PESKIN_VERSION; }

}  // namespace peskin
