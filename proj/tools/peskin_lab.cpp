#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "peskin/config.hpp"
#include "peskin/diagnostics.hpp"
#include "peskin/io.hpp"
#include "peskin/kernels.hpp"

namespace fs = std::filesystem;
using namespace peskin;

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kBadInput = 2, kAbort = 3 };

int report(const AuditReport& r) {
  std::cout << r.to_json() << '\n';
  return r.passed() ? kOk : kCheckFailed;
}

MuWeight load_mu(const std::string& kind, const std::string& file) {
  if (kind == "one") return MuWeight::one();
  if (kind == "log") return MuWeight::log();
  if (kind == "file") {
    std::ifstream in(file);
    if (!in) throw ConfigError("cannot read mu table " + file);
    std::vector<double> t;
    for (double v; in >> v;) t.push_back(v);
    if (t.empty()) throw ConfigError("mu table " + file + " is empty");
    return MuWeight(std::move(t));
  }
  throw ConfigError("unknown --mu '" + kind + "'");
}

int simulate_cmd(const std::string& config_path, const std::string& out_override) {
  const Config cfg = Config::load(config_path);
  RunSettings run = make_run_settings(cfg);
  if (!out_override.empty()) run.output_dir = out_override;
  const fs::path dir(run.output_dir);
  fs::create_directories(dir);
  if (fs::exists(dir / "manifest.txt")) throw ConfigError("output directory already holds a run: " + dir.string());

  RunManifest manifest;
  manifest.config_digest = digest(cfg.canonical());
  manifest.code_version = code_version();
  manifest.started = utc_timestamp();
  manifest.seed = run.sim.seed;
  manifest.inputs.push_back(config_path);
  if (!run.sim.init.file.empty()) manifest.inputs.push_back(run.sim.init.file);

  NdjsonWriter diag((dir / "diag.ndjson").string());
  manifest.outputs.push_back("diag.ndjson");
  run.sim.keep_states = false;
  auto observer = [&](const SimState& s, const DiagnosticsRecord& r) {
    diag.write(diagnostics_json(r));
    char name[32];
    std::snprintf(name, sizeof name, "step_%08lld.curve", static_cast<long long>(r.step));
    write_curve((dir / name).string(), s.curve);
    manifest.outputs.push_back(name);
  };
  int code = kOk;
  try {
    simulate(run.sim, observer);
  } catch (const NumericalAbort& e) {
    manifest.status = std::string("aborted: ") + e.what();
    std::cerr << "numerical abort: " << e.what() << '\n';
    code = kAbort;
  }
  manifest.finished = utc_timestamp();
  write_manifest((dir / "manifest.txt").string(), manifest);
  return code;
}

int verify_cmd(const std::string& suite, int samples, std::uint64_t seed) {
  int code = kOk;
  auto run = [&](const AuditReport& r) { code = std::max(code, report(r)); };
  if (suite == "kernels" || suite == "all") {
    const AuditReport r = kernel_audit(samples, seed);
    std::printf("max cancellation residual %.3e\n", r.value("cancellation"));
    run(r);
  }
  if (suite == "operators" || suite == "all") run(operator_audit(128));
  if (suite == "formulations" || suite == "all") run(formulation_audit(std::max(1, samples / 100), 128, 512, 16, seed));
  return code;
}

int norms_cmd(const std::string& in, double s, double p, double r, const std::string& mu_kind,
              const std::string& mu_file, const std::string& method) {
  const Curve x = read_curve(in);
  const Curve f = derivative(x);
  BesovParams params;
  params.s = s;
  params.p = p;
  params.r = r;
  params.mu = load_mu(mu_kind, mu_file);
  double value = 0.0;
  if (method == "diff") {
    value = besov_diff(f, params);
  } else if (method == "lp") {
    value = besov_lp(f, params, LPFamily(f.size()));
  } else {
    throw ConfigError("unknown --method '" + method + "'");
  }
  nlohmann::ordered_json j;
  j["input"] = in;
  j["s"] = s;
  j["p"] = p;
  j["r"] = r;
  j["mu"] = mu_kind;
  j["method"] = method;
  j["value"] = value;
  std::cout << j.dump() << '\n';
  return kOk;
}

SimConfig sim_from(const std::string& config_path) {
  if (config_path.empty()) return SimConfig{};
  return make_run_settings(Config::load(config_path)).sim;
}

int audit_cmd(const std::string& which, const std::string& config_path, const std::string& mode, double horizon,
              int samples, std::uint64_t seed) {
  if (which == "kernels") return report(kernel_audit(samples, seed));
  if (which == "operators") return report(operator_audit(128));
  SimConfig sim = sim_from(config_path);
  if (horizon > 0.0) sim.horizon = horizon;
  sim.keep_states = true;
  if (which == "stability") {
    const Curve x0 = make_initial_curve(sim.init, sim.n, sim.seed);
    return report(stability_sweep(x0, random_band_limited_curve(sim.n, std::min(8, sim.n / 2 - 1), seed), sim));
  }
  const Trajectory traj = simulate(sim);
  if (which == "apriori") return report(apriori_audit(traj, sim.mu, sim.law().lambda()));
  if (which == "smoothing") {
    return report(smoothing_audit(traj, mode == "smooth" ? SmoothingMode::Smooth : SmoothingMode::Rough));
  }
  if (which == "equilibrium") return report(equilibrium_audit(traj));
  if (which == "chord-arc") return report(chord_arc_audit(traj));
  throw ConfigError("unknown audit '" + which + "'");
}

int compare_cmd(const std::string& a, const std::string& b, const std::string& config_path) {
  return report(stability_audit(read_curve(a), read_curve(b), sim_from(config_path)));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral simulator and audit tool for an elastic closed string in 2D Stokes flow"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  auto* sim = app.add_subcommand("simulate", "run a configuration and write curves, diag.ndjson and manifest.txt");
  sim->add_option("--config", config_path, "configuration file")->required()->check(CLI::ExistingFile);
  sim->add_option("--out", out_dir, "output directory (overrides output.dir)");

  std::string suite = "all";
  int samples = 1000;
  std::uint64_t seed = 1;
  auto* verify = app.add_subcommand("verify", "kernel, operator and formulation identity sweeps");
  verify->add_option("--suite", suite)->check(CLI::IsMember({"kernels", "operators", "formulations", "all"}));
  verify->add_option("--samples", samples)->check(CLI::PositiveNumber);
  verify->add_option("--seed", seed);

  std::string in, mu = "one", mu_file, method = "diff";
  double s = 0.5, p = 2.0, r = 1.0;
  auto* norms = app.add_subcommand("norms", "Besov norm of the derivative of a curve file");
  norms->add_option("--in", in)->required()->check(CLI::ExistingFile);
  norms->add_option("--s", s);
  norms->add_option("--p", p);
  norms->add_option("--r", r);
  norms->add_option("--mu", mu)->check(CLI::IsMember({"one", "log", "file"}));
  norms->add_option("--mu-file", mu_file, "whitespace separated mu(2^j), j = 0, 1, ...");
  norms->add_option("--method", method)->check(CLI::IsMember({"diff", "lp"}));

  std::string which, mode = "rough";
  double horizon = 0.0;
  auto* audit = app.add_subcommand("audit", "run one diagnostics audit");
  audit->add_option("--audit", which)
      ->required()
      ->check(CLI::IsMember({"apriori", "smoothing", "stability", "equilibrium", "chord-arc", "kernels", "operators"}));
  audit->add_option("--config", config_path)->check(CLI::ExistingFile);
  audit->add_option("--mode", mode)->check(CLI::IsMember({"rough", "smooth"}));
  audit->add_option("--horizon", horizon);
  audit->add_option("--samples", samples)->check(CLI::PositiveNumber);
  audit->add_option("--seed", seed);

  std::string a, b;
  auto* compare = app.add_subcommand("compare", "stability audit on two curve files");
  compare->add_option("a", a)->required()->check(CLI::ExistingFile);
  compare->add_option("b", b)->required()->check(CLI::ExistingFile);
  compare->add_option("--config", config_path)->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    if (*sim) return simulate_cmd(config_path, out_dir);
    if (*verify) return verify_cmd(suite, samples, seed);
    if (*norms) return norms_cmd(in, s, p, r, mu, mu_file, method);
    if (*audit) return audit_cmd(which, config_path, mode, horizon, samples, seed);
    if (*compare) return compare_cmd(a, b, config_path);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kBadInput;
  } catch (const FormatError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kBadInput;
  } catch (const NumericalAbort& e) {
    std::cerr << "numerical abort: " << e.what() << '\n';
    return kAbort;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kBadInput;
  }
  return kOk;
}
