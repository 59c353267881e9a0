#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "peskin/besov.hpp"
#include "peskin/curve.hpp"
#include "peskin/operators.hpp"
#include "peskin/tension.hpp"

namespace peskin {

/// Raised when a run leaves the admissible regime (arc-chord floor breached
/// or non-finite values); carries the simulation time of the failure.
class NumericalAbort : public std::runtime_error {
 public:
  NumericalAbort(const std::string& what, double time)
      : std::runtime_error(what + " at t = " + std::to_string(time)), time_(time) {}
  double time() const { return time_; }

 private:
  double time_;
};

/// Quadrature and safety settings shared by the right-hand sides. The theta
/// loop runs on 2N points and results are truncated back to |k| < N/2.
struct RhsOptions {
  int m = 0;               ///< alpha points; 0 selects 4N
  double rho_floor = 0.0;  ///< abort when min |D_alpha X| over the samples falls below
  double time = 0.0;       ///< reported in aborts
};

/// d_t X = int G(delta_alpha X) d_alpha [T(X'(theta + alpha))] d alpha. The
/// log|delta X| part is split into log|delta X / S(alpha)| (trapezoid) and
/// log|S(alpha)|, whose convolution is applied as the multiplier
/// (i/4) sgn(k) on the coefficients of T(X').
Curve rhs_position_bi(const Curve& x, const TensionLaw& law, const RhsOptions& opt = {});

/// First-derivative form
/// (1/4pi) int [a . P(delta X) a / |delta X|^2] [T(|a|)/|a|] delta X d alpha
/// with a = X'(theta + alpha).
Curve rhs_position_reduced(const Curve& x, const TensionLaw& law, const RhsOptions& opt = {});

/// d_t X' = int alpha^-2 K delta_alpha T(X') d alpha, projected to mean zero.
Curve rhs_derivative(const Curve& x, const TensionLaw& law, const RhsOptions& opt = {});

/// V = int alpha^-2 A delta_alpha T(X') d alpha, projected to mean zero.
Curve remainder_V(const Curve& x, const TensionLaw& law, const RhsOptions& opt = {});

/// The three pieces of the derivative equation evaluated on identical
/// samples: derivative = -lambda_tension + remainder up to rounding.
struct SplitEvaluation {
  Curve derivative;
  Curve lambda_tension;  ///< Lambda-tilde T(X') by the same alpha quadrature
  Curve remainder;
};
SplitEvaluation evaluate_split(const Curve& x, const TensionLaw& law, const RhsOptions& opt = {});

enum class StepScheme { Rk4, Imex };

std::string to_string(StepScheme s);
StepScheme parse_scheme(const std::string& s);

/// Snapshot of a run: the curve X, its derivative, the law and the grid.
struct SimState {
  double t = 0.0;
  Curve curve;
  Curve deriv;
  std::shared_ptr<const TensionLaw> law;
  std::shared_ptr<const OperatorSymbol> symbol;
  int m = 0;
  double rho_floor = 0.0;

  /// rho_floor < 0 selects half the initial arc-chord number.
  static SimState make(Curve x, TensionLaw law, int m = 0, double rho_floor = -1.0, double t = 0.0);

  RhsOptions options() const { return {m, rho_floor, t}; }
  int n() const { return curve.size(); }
};

Curve rhs_position_bi(const SimState& s);
Curve rhs_position_reduced(const SimState& s);
Curve rhs_derivative(const SimState& s);
Curve remainder_V(const SimState& s);

/// Largest eigenvalue of DT(X') over the grid (the IMEX coefficient).
double stiffness_coefficient(const SimState& s);

inline constexpr double kRk4Cfl = 2.5;

/// kRk4Cfl / (c_bar * max_k lambda-tilde_k).
double rk4_dt_limit(const SimState& s);

/// One step. rk4 integrates d_t X = rhs_position_reduced; imex advances the
/// coefficients of X' by
/// [X' + dt (c Lambda-tilde X' + rhs_derivative)]_k / (1 + dt c lambda-tilde_k)
/// and the mean of X by the averaged position right-hand side.
SimState step(const SimState& s, double dt, StepScheme scheme);

/// Diagnostics attached to each output time.
struct DiagnosticsRecord {
  std::int64_t step = 0;
  double t = 0.0;
  double arc_chord = 0.0;
  double arc_chord_estimate = 0.0;
  double l2 = 0.0;             ///< ||X'||_2
  double h_half = 0.0;         ///< ||X'||_{H^1/2}
  double h1 = 0.0;             ///< ||X'||_{H^1}
  double besov_half_mu = 0.0;  ///< ||X'||_{B^{1/2,mu}_{2,1}}
  std::string scheme;
};

DiagnosticsRecord measure(const SimState& s, const MuWeight& mu, std::int64_t step, StepScheme scheme);

struct Trajectory {
  std::vector<SimState> states;
  std::vector<DiagnosticsRecord> records;
  StepScheme scheme = StepScheme::Imex;
  double dt = 0.0;

  std::vector<double> times() const;
  std::vector<Curve> derivatives() const;
  /// Prefix up to and including time `horizon`.
  Trajectory until(double horizon) const;
};

/// Initial curves.
struct InitSpec {
  std::string kind = "circle";  ///< circle, ellipse, perturbed-circle, random-sobolev, fourier-file
  double radius = 1.0;
  double semi_major = 2.0;
  double semi_minor = 1.0;
  int mode = 3;
  double amplitude = 0.05;
  double rough_exponent = 1.4;
  std::string file;
};

Curve circle_curve(int n, double radius = 1.0);
Curve ellipse_curve(int n, double a, double b);
/// (1 + eps cos(mode theta)) (cos theta, sin theta).
Curve perturbed_circle(int n, double eps, int mode);
/// Unit circle plus eps times a field whose derivative has coefficients
/// |k|^-sigma with phases from mt19937_64(seed), 2 <= |k| < N/2.
Curve rough_curve(int n, double sigma, double eps, std::uint64_t seed);
Curve make_initial_curve(const InitSpec& spec, int n, std::uint64_t seed);

struct SimConfig {
  int n = 128;
  int m = 0;
  double dt = 1e-3;
  double horizon = 1.0;
  StepScheme scheme = StepScheme::Imex;
  int output_stride = 10;
  std::uint64_t seed = 1;
  double rho_floor = -1.0;
  InitSpec init;
  std::function<TensionLaw()> law = [] { return TensionLaw::hookean(1.0); };
  MuWeight mu = MuWeight::log();
  bool keep_states = true;
};

using StepObserver = std::function<void(const SimState&, const DiagnosticsRecord&)>;

/// Runs from make_initial_curve (or `initial` when given) to the horizon,
/// recording every output_stride steps and at the final time.
Trajectory simulate(const SimConfig& config, const StepObserver& observer = {});
Trajectory simulate_from(const Curve& initial, const SimConfig& config, const StepObserver& observer = {});

}  // namespace peskin
