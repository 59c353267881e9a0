#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "peskin/vec2.hpp"

namespace peskin {

struct Window {
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double r) const { return r >= lo && r <= hi; }
};

/// Empirical constants of a scalar tension law: lambda bounds both
/// eigenvalues T'(r) and T(r)/r of the Jacobian of the tension map from
/// below, c1 bounds them from above, c2 and c3 bound |T''| and |T'''|.
struct TensionBounds {
  double lambda = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
};

/// Scalar tension T(r) with derivatives, ellipticity/bound constants and the
/// window on which the law is trusted. Immutable after construction.
class TensionLaw {
 public:
  using Fn = std::function<double(double)>;

  /// T(r) = k0 r.
  static TensionLaw hookean(double k0);
  /// T(r) = coefficient * r^exponent, exponent > 0.
  static TensionLaw power(double coefficient, double exponent, Window window = {0.1, 10.0});
  /// T(r) = arctan(r).
  static TensionLaw arctan(Window window = {0.1, 10.0});
  /// Monotone cubic Hermite interpolation of tabulated (r, T) pairs; linear
  /// extrapolation with the end slopes outside the table.
  static TensionLaw table(std::vector<double> r, std::vector<double> t);
  /// User supplied closures. Missing d2/d3 fall back to finite differences
  /// of d1. `global` declares the law valid on [0, inf) with T(0) = 0.
  static TensionLaw custom(std::string name, Fn eval, Fn d1, Fn d2, Fn d3, Window window,
                           bool global = false);

  double operator()(double r) const { return eval_(r); }
  double d1(double r) const { return d1_(r); }
  double d2(double r) const;
  double d3(double r) const;

  const std::string& name() const { return name_; }
  const Window& window() const { return window_; }

  /// True when the law satisfies the global quantitative assumptions
  /// (T(0) = 0, T' bounded above and below on [0, inf)).
  bool is_global() const { return global_; }

  double lambda() const { return bounds_.lambda; }
  /// Bound constants; empty for laws only trusted on their window.
  std::optional<double> c1() const { return global_ ? std::optional(bounds_.c1) : std::nullopt; }
  std::optional<double> c2() const { return global_ ? std::optional(bounds_.c2) : std::nullopt; }
  std::optional<double> c3() const { return global_ ? std::optional(bounds_.c3) : std::nullopt; }

  /// Constants sampled over the trusted window (or [0, 4 hi] for global laws
  /// with an unbounded window), regardless of globality.
  const TensionBounds& sampled_bounds() const { return bounds_; }

  /// Whether T extends continuously to r = 0 with T(0) = 0.
  bool vanishes_at_zero() const { return vanishes_at_zero_; }

 private:
  TensionLaw(std::string name, Fn eval, Fn d1, Fn d2, Fn d3, Window window, bool global, bool zero);
  void compute_bounds();

  std::string name_;
  Fn eval_, d1_, d2_, d3_;
  Window window_;
  bool global_ = false;
  bool vanishes_at_zero_ = false;
  TensionBounds bounds_;
};

/// T(|z|) z/|z|.
Vec2 tension_map(const TensionLaw& law, Vec2 z);

/// T'(|z|) zhat (x) zhat + T(|z|)/|z| zhat_perp (x) zhat_perp.
Mat2 tension_jacobian(const TensionLaw& law, Vec2 z);

/// Extension of `law` from [a, b] to [0, inf): linear through the origin with
/// slope s0 on [0, a/2], a quadratic C^1 blend on [a/2, a], the law itself on
/// [a, b], and the tangent line at b beyond b. s0 = (4T(a) - a T'(a)) / (3a)
/// is the slope that makes the blend meet T(a) with slope T'(a).
TensionLaw globalize(const TensionLaw& law, double a, double b);

}  // namespace peskin
