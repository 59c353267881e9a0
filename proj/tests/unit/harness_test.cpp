#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "peskin/config.hpp"
#include "peskin/io.hpp"
#include "support.hpp"

using namespace peskin;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("peskin_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST(Config, ParsesSectionsCommentsAndQuotes) {
  const Config c = Config::parse(R"(
seed = 7
[grid]
n = 64   # trailing comment
[init]
kind = "perturbed-circle"
[tension]
table_r = 0.5, 1, 2
)");
  EXPECT_EQ(c.integer("seed", 0), 7);
  EXPECT_EQ(c.integer("grid.n", 0), 64);
  EXPECT_EQ(c.text("init.kind", ""), "perturbed-circle");
  EXPECT_EQ(c.numbers("tension.table_r"), (std::vector<double>{0.5, 1.0, 2.0}));
  EXPECT_EQ(c.number("time.dt", 0.25), 0.25);
}

TEST(Config, RejectsMalformedInput) {
  EXPECT_THROW(Config::parse("a = 1\na = 2"), ConfigError);
  EXPECT_THROW(Config::parse("no equals sign"), ConfigError);
  EXPECT_THROW(Config::parse("x = abc").number("x", 0.0), ConfigError);
  EXPECT_THROW(Config::parse("x = 1.5").integer("x", 0), ConfigError);
  EXPECT_THROW(Config::parse("grid.nn = 3").require_known(simulation_keys()), ConfigError);
  EXPECT_THROW(Config::load("/nonexistent/peskin.cfg"), ConfigError);
}

TEST(Config, CanonicalFormIsOrderIndependent) {
  EXPECT_EQ(Config::parse("b = 2\na = 1").canonical(), Config::parse("a=1\n b = 2").canonical());
}

TEST(Config, Laws) {
  EXPECT_EQ(make_law(Config::parse("tension.kind = hookean\ntension.k0 = 3"))(2.0), 6.0);
  EXPECT_NEAR(make_law(Config::parse("tension.kind = power\ntension.exponent = 2"))(3.0), 9.0, 1e-14);
  EXPECT_NEAR(make_law(Config::parse("tension.kind = arctan"))(1.0), kPi / 4, 1e-15);
  const TensionLaw g = make_law(Config::parse(
      "tension.kind = power\ntension.exponent = 2\ntension.globalize_a = 1\ntension.globalize_b = 2"));
  EXPECT_TRUE(g.is_global());
  EXPECT_NEAR(g(3.0), 8.0, 1e-12);
  const TensionLaw h = make_law(Config::parse(
      "[tension]\nkind = power\np = 2\nwindow = [1, 2]\nglobalize = true"));
  EXPECT_TRUE(h.is_global());
  EXPECT_NEAR(h(3.0), 8.0, 1e-12);
  EXPECT_FALSE(make_law(Config::parse("tension.kind = power\ntension.window = [1, 2]")).is_global());
  EXPECT_THROW(make_law(Config::parse("tension.window = [1]")), ConfigError);
  EXPECT_THROW(make_law(Config::parse("tension.globalize = maybe")), ConfigError);
  EXPECT_THROW(make_law(Config::parse("tension.kind = spring")), ConfigError);
  EXPECT_EQ(make_mu(Config::parse("mu.kind = one"))(100.0), 1.0);
  EXPECT_THROW(make_mu(Config::parse("mu.kind = exp")), ConfigError);
}

TEST(Config, RunSettings) {
  const RunSettings r = make_run_settings(Config::parse(
      "grid.n = 64\ntime.dt = 0.002\ntime.scheme = rk4\ninit.kind = ellipse\noutput.dir = out\nseed = 9"));
  EXPECT_EQ(r.sim.n, 64);
  EXPECT_EQ(r.sim.dt, 0.002);
  EXPECT_EQ(r.sim.scheme, StepScheme::Rk4);
  EXPECT_EQ(r.sim.init.kind, "ellipse");
  EXPECT_EQ(r.sim.seed, 9u);
  EXPECT_EQ(r.output_dir, "out");
  EXPECT_THROW(make_run_settings(Config::parse("grid.n = 15")), ConfigError);
  EXPECT_THROW(make_run_settings(Config::parse("time.dt = -1")), ConfigError);
  EXPECT_THROW(make_run_settings(Config::parse("time.scheme = euler")), ConfigError);
  EXPECT_THROW(make_run_settings(Config::parse("init.kind = fourier-file")), ConfigError);
}

TEST(CurveFiles, RoundTripIsExact) {
  const Curve c = peskin::testing::random_field(32, 10, 1);
  const Curve back = parse_curve(format_curve(c));
  ASSERT_EQ(back.size(), 32);
  for (int j = 0; j < 32; ++j) EXPECT_EQ(back[j], c[j]);

  const fs::path dir = scratch("curve");
  write_curve((dir / "c.curve").string(), c);
  EXPECT_EQ(l2_norm(read_curve((dir / "c.curve").string()) - c), 0.0);
}

TEST(CurveFiles, RejectsMalformedText) {
  EXPECT_THROW(parse_curve(""), FormatError);
  EXPECT_THROW(parse_curve("peskin-curve v2 N=2\n0 0\n1 1\n"), FormatError);
  EXPECT_THROW(parse_curve("peskin-curve v1 N=4\n0 0\n1 1\n"), FormatError);
  EXPECT_THROW(parse_curve("peskin-curve v1 N=2\n0 0\n1 x\n"), FormatError);
  EXPECT_THROW(read_curve("/nonexistent/x.curve"), FormatError);
}

TEST(Diagnostics, JsonRecord) {
  DiagnosticsRecord r;
  r.step = 3;
  r.t = 0.5;
  r.arc_chord = 0.6;
  r.scheme = "imex";
  const auto j = nlohmann::json::parse(diagnostics_json(r));
  EXPECT_EQ(j["schema"], kDiagnosticsSchema);
  EXPECT_EQ(j["step"], 3);
  EXPECT_EQ(j["t"], 0.5);
  EXPECT_EQ(j["step_scheme"], "imex");
  for (const char* key : {"arc_chord", "arc_chord_estimate", "l2", "h_half", "h1", "besov_half_mu"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
}

TEST(Diagnostics, NdjsonLinesAndManifest) {
  const fs::path dir = scratch("run");
  {
    NdjsonWriter w((dir / "diag.ndjson").string());
    w.write("{\"a\":1}");
    w.write("{\"a\":2}");
  }
  std::ifstream in(dir / "diag.ndjson");
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) lines += nlohmann::json::parse(line).contains("a");
  EXPECT_EQ(lines, 2);

  RunManifest m;
  m.config_digest = digest("x");
  m.code_version = code_version();
  m.seed = 4;
  write_manifest((dir / "manifest.txt").string(), m);
  EXPECT_THROW(write_manifest((dir / "manifest.txt").string(), m), std::runtime_error);
}

TEST(Digest, StableAndSensitive) {
  EXPECT_EQ(digest(""), "cbf29ce484222325");
  EXPECT_EQ(digest("a"), "af63dc4c8601ec8c");
  EXPECT_NE(digest("ab"), digest("ba"));
  EXPECT_EQ(utc_timestamp().size(), 20u);
}
