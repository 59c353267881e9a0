#include "peskin/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace peskin {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

// Drops a trailing comment outside quotes.
std::string strip_comment(std::string_view line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return std::string(line.substr(0, i));
  }
  return std::string(line);
}

double to_number(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) throw ConfigError("key '" + key + "': not a number: '" + v + "'");
  return out;
}

}  // namespace

Config Config::parse(std::string_view text) {
  Config c;
  std::istringstream in{std::string(text)};
  std::string line, section;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string body = trim(strip_comment(line));
    if (body.empty()) continue;
    if (body.front() == '[') {
      if (body.back() != ']') throw ConfigError("line " + std::to_string(number) + ": unterminated section");
      section = trim(std::string_view(body).substr(1, body.size() - 2));
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(number) + ": expected key = value");
    std::string key = trim(std::string_view(body).substr(0, eq));
    std::string value = trim(std::string_view(body).substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(number) + ": empty key");
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    if (!section.empty()) key = section + "." + key;
    if (c.has(key)) throw ConfigError("line " + std::to_string(number) + ": duplicate key '" + key + "'");
    c.values_[key] = value;
  }
  return c;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string Config::text(const std::string& key, const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

double Config::number(const std::string& key, double fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : to_number(key, it->second);
}

long long Config::integer(const std::string& key, long long fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  long long out = 0;
  const auto& v = it->second;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) throw ConfigError("key '" + key + "': not an integer: '" + v + "'");
  return out;
}

std::vector<double> Config::numbers(const std::string& key) const {
  std::vector<double> out;
  std::string v = text(key, "");
  v.erase(std::remove_if(v.begin(), v.end(), [](char ch) { return ch == '[' || ch == ']'; }), v.end());
  std::istringstream in(v);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(to_number(key, item));
  }
  return out;
}

std::string Config::canonical() const {
  std::string out;
  for (const auto& [k, v] : values_) out += k + " = " + v + "\n";
  return out;
}

void Config::require_known(const std::vector<std::string>& known) const {
  for (const auto& [k, v] : values_) {
    if (std::find(known.begin(), known.end(), k) == known.end()) throw ConfigError("unknown key '" + k + "'");
  }
}

const std::vector<std::string>& simulation_keys() {
  static const std::vector<std::string> keys = {
      "grid.n",           "grid.m",           "time.dt",          "time.horizon",       "time.scheme",
      "init.kind",        "init.radius",      "init.semi_major",  "init.semi_minor",    "init.mode",
      "init.amplitude",   "init.rough_exponent", "init.file",     "tension.kind",       "tension.k0",
      "tension.coefficient", "tension.exponent", "tension.window_lo", "tension.window_hi", "tension.table_r",
      "tension.table_t",  "tension.globalize_a", "tension.globalize_b", "tension.p",
      "tension.window",   "tension.globalize", "mu.kind",        "output.stride",
      "output.dir",       "seed",             "run.rho_floor"};
  return keys;
}

TensionLaw make_law(const Config& c) {
  const std::string kind = c.text("tension.kind", "hookean");
  Window window{c.number("tension.window_lo", 0.1), c.number("tension.window_hi", 10.0)};
  if (c.has("tension.window")) {
    const std::vector<double> w = c.numbers("tension.window");
    if (w.size() != 2) throw ConfigError("tension.window must be [a, b]");
    window = {w[0], w[1]};
  }
  const double exponent = c.number("tension.p", c.number("tension.exponent", 2.0));
  const std::string glob = c.text("tension.globalize", "false");
  if (glob != "true" && glob != "false") throw ConfigError("tension.globalize must be true or false");
  auto build = [&]() -> TensionLaw {
    if (kind == "hookean") return TensionLaw::hookean(c.number("tension.k0", 1.0));
    if (kind == "power") return TensionLaw::power(c.number("tension.coefficient", 1.0), exponent, window);
    if (kind == "arctan") return TensionLaw::arctan(window);
    if (kind == "table") return TensionLaw::table(c.numbers("tension.table_r"), c.numbers("tension.table_t"));
    throw ConfigError("unknown tension.kind '" + kind + "'");
  };
  try {
    TensionLaw law = build();
    if (glob == "true" || c.has("tension.globalize_a") || c.has("tension.globalize_b")) {
      law = globalize(law, c.number("tension.globalize_a", window.lo), c.number("tension.globalize_b", window.hi));
    }
    return law;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("tension: ") + e.what());
  }
}

MuWeight make_mu(const Config& c) {
  const std::string kind = c.text("mu.kind", "log");
  if (kind == "log") return MuWeight::log();
  if (kind == "one") return MuWeight::one();
  throw ConfigError("unknown mu.kind '" + kind + "'");
}

RunSettings make_run_settings(const Config& c) {
  c.require_known(simulation_keys());
  RunSettings r;
  SimConfig& s = r.sim;
  s.n = static_cast<int>(c.integer("grid.n", s.n));
  s.m = static_cast<int>(c.integer("grid.m", s.m));
  s.dt = c.number("time.dt", s.dt);
  s.horizon = c.number("time.horizon", s.horizon);
  try {
    s.scheme = parse_scheme(c.text("time.scheme", "imex"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  s.output_stride = static_cast<int>(c.integer("output.stride", s.output_stride));
  s.seed = static_cast<std::uint64_t>(c.integer("seed", static_cast<long long>(s.seed)));
  s.rho_floor = c.number("run.rho_floor", s.rho_floor);
  s.init.kind = c.text("init.kind", s.init.kind);
  s.init.radius = c.number("init.radius", s.init.radius);
  s.init.semi_major = c.number("init.semi_major", s.init.semi_major);
  s.init.semi_minor = c.number("init.semi_minor", s.init.semi_minor);
  s.init.mode = static_cast<int>(c.integer("init.mode", s.init.mode));
  s.init.amplitude = c.number("init.amplitude", s.init.amplitude);
  s.init.rough_exponent = c.number("init.rough_exponent", s.init.rough_exponent);
  s.init.file = c.text("init.file", "");
  s.mu = make_mu(c);
  const TensionLaw law = make_law(c);
  s.law = [law] { return law; };
  r.output_dir = c.text("output.dir", r.output_dir);

  if (s.n < 16 || s.n % 2 != 0) throw ConfigError("grid.n must be even and >= 16");
  if (s.m != 0 && (s.m < 2 || s.m % 2 != 0)) throw ConfigError("grid.m must be even (or 0 for 4N)");
  if (!(s.dt > 0.0)) throw ConfigError("time.dt must be positive");
  if (!(s.horizon >= 0.0)) throw ConfigError("time.horizon must be non-negative");
  if (s.output_stride < 1) throw ConfigError("output.stride must be >= 1");
  const std::vector<std::string> kinds = {"circle", "ellipse", "perturbed-circle", "random-sobolev", "fourier-file"};
  if (std::find(kinds.begin(), kinds.end(), s.init.kind) == kinds.end()) {
    throw ConfigError("unknown init.kind '" + s.init.kind + "'");
  }
  if (s.init.kind == "fourier-file" && s.init.file.empty()) throw ConfigError("init.kind = fourier-file needs init.file");
  return r;
}

}  // namespace peskin
