#include "peskin/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "peskin/io.hpp"
#include "peskin/kernels.hpp"
#include "peskin/parallel.hpp"

namespace peskin {
namespace {

int wavenumber(int i, int n) { return 2 * i < n ? i : i - n; }

struct Fields {
  bool position = false;
  bool derivative = false;
  bool split = false;
  bool bi = false;
};

struct Sampled {
  std::vector<Vec2> position, derivative, lambda_tension, remainder, bi;
};

// Modes |k| < n/2 of the values on the theta grid; the mean is optionally
// removed.
Curve band_limit(std::span<const Vec2> values, int n, bool zero_mean) {
  const int p = static_cast<int>(values.size());
  const auto c = analyze(values);
  std::vector<cplx> out(static_cast<std::size_t>(n), cplx{});
  for (int i = 0; i < p; ++i) {
    const int k = wavenumber(i, p);
    if (std::abs(k) >= n / 2 || (zero_mean && k == 0)) continue;
    out[static_cast<std::size_t>(k >= 0 ? k : n + k)] = c[static_cast<std::size_t>(i)];
  }
  return Curve::from_coefficients(std::move(out));
}

void require_grid(const Curve& x) {
  if (x.size() < 16 || x.size() % 2 != 0) throw std::invalid_argument("right-hand sides need even N >= 16");
}

// One pass over theta_p + alpha_m on the 2N x M grid, accumulating every
// requested integrand from the same samples.
Sampled sample(const Curve& x_in, const TensionLaw& law, const RhsOptions& opt, Fields want) {
  require_grid(x_in);
  const int n = x_in.size();
  const int m = opt.m > 0 ? opt.m : 4 * n;
  if (m % 2 != 0) throw std::invalid_argument("alpha grid size must be even");
  const int p_count = 2 * n;
  const int fine = std::lcm(p_count, 2 * m);
  const int theta_stride = fine / p_count, alpha_stride = fine / (2 * m);

  const Curve x = truncate(x_in, n / 2);
  const Curve xp = derivative(x);
  const auto xf = x.resample(fine);
  const auto af = xp.resample(fine);
  std::vector<Vec2> tf(af.size());
  for (std::size_t i = 0; i < af.size(); ++i) tf[i] = tension_map(law, af[i]);

  std::vector<Vec2> dtf, hilbert;
  if (want.bi) {
    const auto app = derivative(xp).resample(fine);
    dtf.resize(af.size());
    for (std::size_t i = 0; i < af.size(); ++i) dtf[i] = tension_jacobian(law, af[i]) * app[i];
    // Convolution with -(1/4pi) log|2 sin(alpha/2)| of d_alpha T(X'): the
    // multiplier (i/4) sgn(k) on the coefficients of T(X').
    auto c = analyze(tf);
    for (int i = 0; i < fine; ++i) {
      const int k = wavenumber(i, fine);
      c[static_cast<std::size_t>(i)] *= (2 * std::abs(k) == fine || k == 0) ? cplx{} : cplx{0.0, 0.25 * (k > 0 ? 1 : -1)};
    }
    hilbert = synthesize(c);
  }

  std::vector<double> alphas(static_cast<std::size_t>(m));
  std::vector<double> log_sine(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    double a = (j + 0.5) * kTwoPi / m;
    if (a > kPi) a -= kTwoPi;
    alphas[static_cast<std::size_t>(j)] = a;
    log_sine[static_cast<std::size_t>(j)] = std::log(std::abs(2.0 * std::sin(0.5 * a)));
  }
  const double h = kTwoPi / m;

  Sampled s;
  const auto size = static_cast<std::size_t>(p_count);
  if (want.position) s.position.assign(size, {});
  if (want.derivative) s.derivative.assign(size, {});
  if (want.split) {
    s.lambda_tension.assign(size, {});
    s.remainder.assign(size, {});
  }
  if (want.bi) s.bi.assign(size, {});
  std::vector<double> min_chord(size, std::numeric_limits<double>::infinity());

  parallel_for(size, [&](std::size_t pi) {
    const int base = static_cast<int>(pi) * theta_stride;
    const Vec2 x0 = xf[static_cast<std::size_t>(base)], b = af[static_cast<std::size_t>(base)];
    const Vec2 t0 = tf[static_cast<std::size_t>(base)];
    Vec2 pos{}, der{}, lam{}, rem{}, bi{};
    double chord = std::numeric_limits<double>::infinity();
    for (int j = 0; j < m; ++j) {
      const auto idx = static_cast<std::size_t>((base + (2 * j + 1) * alpha_stride) % fine);
      const double a = alphas[static_cast<std::size_t>(j)];
      const Vec2 dx = xf[idx] - x0;
      const double r2 = norm2(dx);
      const Vec2 d = dx / a;
      chord = std::min(chord, norm(d));
      if (r2 == 0.0) continue;
      const Vec2 ta = tf[idx];
      if (want.position) {
        const Vec2 pa = projection_P(dx) * af[idx];
        pos += (dot(ta, pa) / r2) * dx;
      }
      if (want.derivative || want.split) {
        const Vec2 dt = ta - t0;
        const KernelInput in{af[idx], b, d};
        const double w = 1.0 / (a * a);
        if (want.derivative) der += w * (kernel_K(in) * dt);
        if (want.split) {
          lam += (w * kInv4Pi) * dt;
          rem += w * (kernel_A(in) * dt);
        }
      }
      if (want.bi) {
        const Mat2 g = (-kInv4Pi * (0.5 * std::log(r2) - log_sine[static_cast<std::size_t>(j)])) * Mat2::identity() +
                       stokeslet(dx, StokesletPart::G2);
        bi += g * dtf[idx];
      }
    }
    min_chord[pi] = chord;
    if (want.position) s.position[pi] = (h * kInv4Pi) * pos;
    if (want.derivative) s.derivative[pi] = h * der;
    if (want.split) {
      // Lambda-tilde T = -(1/4pi) int delta T / alpha^2, stored with its sign.
      s.lambda_tension[pi] = -h * lam;
      s.remainder[pi] = h * rem;
    }
    if (want.bi) s.bi[pi] = h * bi + hilbert[static_cast<std::size_t>(base)];
  });

  const double worst = *std::min_element(min_chord.begin(), min_chord.end());
  if (!std::isfinite(worst) || worst <= opt.rho_floor || worst == 0.0) {
    throw NumericalAbort("arc-chord floor breached (min |D_alpha X| = " + std::to_string(worst) + ")", opt.time);
  }
  return s;
}

void require_finite(const Curve& c, double t) {
  for (const Vec2& v : c.nodes()) {
    if (!std::isfinite(v.x) || !std::isfinite(v.y)) throw NumericalAbort("non-finite state", t);
  }
}

}  // namespace

Curve rhs_position_bi(const Curve& x, const TensionLaw& law, const RhsOptions& opt) {
  return band_limit(sample(x, law, opt, {.bi = true}).bi, x.size(), false);
}

Curve rhs_position_reduced(const Curve& x, const TensionLaw& law, const RhsOptions& opt) {
  return band_limit(sample(x, law, opt, {.position = true}).position, x.size(), false);
}

Curve rhs_derivative(const Curve& x, const TensionLaw& law, const RhsOptions& opt) {
  return band_limit(sample(x, law, opt, {.derivative = true}).derivative, x.size(), true);
}

Curve remainder_V(const Curve& x, const TensionLaw& law, const RhsOptions& opt) {
  return band_limit(sample(x, law, opt, {.split = true}).remainder, x.size(), true);
}

SplitEvaluation evaluate_split(const Curve& x, const TensionLaw& law, const RhsOptions& opt) {
  const Sampled s = sample(x, law, opt, {.derivative = true, .split = true});
  const int n = x.size();
  return {band_limit(s.derivative, n, true), band_limit(s.lambda_tension, n, true), band_limit(s.remainder, n, true)};
}

std::string to_string(StepScheme s) { return s == StepScheme::Rk4 ? "rk4" : "imex"; }

StepScheme parse_scheme(const std::string& s) {
  if (s == "rk4") return StepScheme::Rk4;
  if (s == "imex") return StepScheme::Imex;
  throw std::invalid_argument("unknown step scheme '" + s + "' (expected rk4 or imex)");
}

SimState SimState::make(Curve x, TensionLaw law, int m, double rho_floor, double t) {
  require_grid(x);
  SimState s;
  s.t = t;
  s.curve = truncate(x, x.size() / 2);
  s.deriv = derivative(s.curve);
  s.law = std::make_shared<const TensionLaw>(std::move(law));
  s.m = m > 0 ? m : 4 * x.size();
  s.symbol = std::make_shared<const OperatorSymbol>(x.size(), s.m);
  s.rho_floor = rho_floor >= 0.0 ? rho_floor : 0.5 * arc_chord(s.curve).value;
  return s;
}

Curve rhs_position_bi(const SimState& s) { return rhs_position_bi(s.curve, *s.law, s.options()); }
Curve rhs_position_reduced(const SimState& s) { return rhs_position_reduced(s.curve, *s.law, s.options()); }
Curve rhs_derivative(const SimState& s) { return rhs_derivative(s.curve, *s.law, s.options()); }
Curve remainder_V(const SimState& s) { return remainder_V(s.curve, *s.law, s.options()); }

double stiffness_coefficient(const SimState& s) {
  double c = 0.0;
  for (const Vec2& v : s.deriv.resample(2 * s.n())) {
    const double r = norm(v);
    if (r == 0.0) {
      c = std::max(c, s.law->d1(0.0));
      continue;
    }
    c = std::max({c, s.law->d1(r), s.law->operator()(r) / r});
  }
  return c;
}

double rk4_dt_limit(const SimState& s) {
  return kRk4Cfl / (stiffness_coefficient(s) * s.symbol->tilde(s.n() / 2));
}

SimState step(const SimState& s, double dt, StepScheme scheme) {
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
  SimState next = s;
  next.t = s.t + dt;
  const int n = s.n();

  if (scheme == StepScheme::Rk4) {
    if (dt > rk4_dt_limit(s) * (1.0 + 1e-12)) {
      throw std::invalid_argument("rk4 step exceeds the stability limit " + std::to_string(rk4_dt_limit(s)));
    }
    auto f = [&](const Curve& x, double t) {
      return rhs_position_reduced(x, *s.law, {s.m, s.rho_floor, t});
    };
    const Curve k1 = f(s.curve, s.t);
    const Curve k2 = f(s.curve + (0.5 * dt) * k1, s.t + 0.5 * dt);
    const Curve k3 = f(s.curve + (0.5 * dt) * k2, s.t + 0.5 * dt);
    const Curve k4 = f(s.curve + dt * k3, s.t + dt);
    next.curve = s.curve + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    next.deriv = derivative(next.curve);
  } else {
    const Sampled r = sample(s.curve, *s.law, s.options(), {.position = true, .derivative = true});
    const Curve rhs = band_limit(r.derivative, n, true);
    Vec2 drift{};
    for (const Vec2& v : r.position) drift += v;
    drift = drift / static_cast<double>(r.position.size());

    const double c = stiffness_coefficient(s);
    std::vector<cplx> out(s.deriv.coefficients().begin(), s.deriv.coefficients().end());
    const auto rc = rhs.coefficients();
    for (int i = 0; i < n; ++i) {
      const int k = wavenumber(i, n);
      const double lam = s.symbol->tilde(k);
      out[i] = (out[i] + dt * (c * lam * out[i] + rc[i])) / (1.0 + dt * c * lam);
    }
    out[0] = 0.0;
    next.deriv = Curve::from_coefficients(std::move(out));
    next.curve = primitive(next.deriv, s.curve.mean() + dt * drift);
  }
  require_finite(next.curve, next.t);
  return next;
}

DiagnosticsRecord measure(const SimState& s, const MuWeight& mu, std::int64_t step_index, StepScheme scheme) {
  DiagnosticsRecord r;
  r.step = step_index;
  r.t = s.t;
  const ArcChordResult ac = arc_chord(s.curve);
  r.arc_chord = ac.value;
  r.arc_chord_estimate = ac.estimate;
  r.l2 = l2_norm(s.deriv);
  r.h_half = sobolev_norm(s.deriv, 0.5);
  r.h1 = sobolev_norm(s.deriv, 1.0);
  BesovParams p;
  p.mu = mu;
  r.besov_half_mu = besov_diff(s.deriv, p);
  r.scheme = to_string(scheme);
  return r;
}

std::vector<double> Trajectory::times() const {
  std::vector<double> t;
  t.reserve(records.size());
  for (const auto& r : records) t.push_back(r.t);
  return t;
}

std::vector<Curve> Trajectory::derivatives() const {
  std::vector<Curve> d;
  d.reserve(states.size());
  for (const auto& s : states) d.push_back(s.deriv);
  return d;
}

Trajectory Trajectory::until(double horizon) const {
  Trajectory out;
  out.scheme = scheme;
  out.dt = dt;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].t > horizon * (1.0 + 1e-12)) break;
    out.records.push_back(records[i]);
    if (i < states.size()) out.states.push_back(states[i]);
  }
  return out;
}

Curve circle_curve(int n, double radius) {
  return Curve::from_function(n, [radius](double t) { return Vec2{radius * std::cos(t), radius * std::sin(t)}; });
}

Curve ellipse_curve(int n, double a, double b) {
  return Curve::from_function(n, [a, b](double t) { return Vec2{a * std::cos(t), b * std::sin(t)}; });
}

Curve perturbed_circle(int n, double eps, int mode) {
  return Curve::from_function(n, [eps, mode](double t) {
    const double r = 1.0 + eps * std::cos(mode * t);
    return Vec2{r * std::cos(t), r * std::sin(t)};
  });
}

Curve rough_curve(int n, double sigma, double eps, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto phase = [&rng] { return kTwoPi * static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  std::vector<cplx> c(static_cast<std::size_t>(n), cplx{});
  c[1] = cplx{0.0, 1.0};
  for (int k = 2; k < n / 2; ++k) {
    const double amp = eps * std::pow(k, -sigma);
    c[static_cast<std::size_t>(k)] += std::polar(amp, phase());
    c[static_cast<std::size_t>(n - k)] += std::polar(amp, phase());
  }
  return primitive(Curve::from_coefficients(std::move(c)), Vec2{});
}

Curve make_initial_curve(const InitSpec& spec, int n, std::uint64_t seed) {
  if (spec.kind == "circle") return circle_curve(n, spec.radius);
  if (spec.kind == "ellipse") return ellipse_curve(n, spec.semi_major, spec.semi_minor);
  if (spec.kind == "perturbed-circle") return perturbed_circle(n, spec.amplitude, spec.mode);
  if (spec.kind == "random-sobolev") return rough_curve(n, spec.rough_exponent, spec.amplitude, seed);
  if (spec.kind == "fourier-file") return read_curve(spec.file).resized(n);
  throw std::invalid_argument("unknown initial data kind '" + spec.kind + "'");
}

Trajectory simulate(const SimConfig& config, const StepObserver& observer) {
  return simulate_from(make_initial_curve(config.init, config.n, config.seed), config, observer);
}

Trajectory simulate_from(const Curve& initial, const SimConfig& config, const StepObserver& observer) {
  if (!(config.dt > 0.0) || !(config.horizon >= 0.0)) throw std::invalid_argument("dt and horizon must be positive");
  if (config.output_stride < 1) throw std::invalid_argument("output stride must be >= 1");
  const Curve x0 = initial.size() == config.n ? initial : initial.resized(config.n);
  SimState s = SimState::make(x0, config.law(), config.m, config.rho_floor);

  Trajectory traj;
  traj.scheme = config.scheme;
  traj.dt = config.dt;
  auto record = [&](std::int64_t k) {
    DiagnosticsRecord r = measure(s, config.mu, k, config.scheme);
    if (r.arc_chord <= s.rho_floor) throw NumericalAbort("arc-chord number below floor", s.t);
    if (observer) observer(s, r);
    traj.records.push_back(std::move(r));
    if (config.keep_states) traj.states.push_back(s);
  };

  const auto steps = static_cast<std::int64_t>(std::ceil(config.horizon / config.dt - 1e-9));
  record(0);
  for (std::int64_t k = 1; k <= steps; ++k) {
    const double dt = std::min(config.dt, config.horizon - s.t);
    if (dt <= 0.0) break;
    s = step(s, dt, config.scheme);
    if (k % config.output_stride == 0 || k == steps) record(k);
  }
  return traj;
}

}  // namespace peskin
