#pragma once

#include <cstdint>
#include <limits>

#include "peskin/vec2.hpp"

namespace peskin {

enum class StokesletPart { G1, G2, Full };

/// G1 = -(1/4pi) log|z| I, G2 = (1/4pi) z (x) z / |z|^2.
Mat2 stokeslet(Vec2 z, StokesletPart part = StokesletPart::Full);

enum class StokesletDerivative {
  GradG1,  ///< directional derivative of G1 along u
  GradG2,  ///< directional derivative of G2 along u
  HessG1,  ///< second derivative of G1 along u and v
  HessG2,  ///< second derivative of G2 along u and v
};

/// Closed-form directional derivatives of the Stokeslet; v is ignored for the
/// first derivatives.
Mat2 stokeslet_derivative(Vec2 u, Vec2 v, Vec2 z, StokesletDerivative which);

/// |grad_u G1(z) z + G2(z) u|, identically zero in exact arithmetic.
double cancellation_residual(Vec2 u, Vec2 z);

/// Reflection matrices zhat (x) zperp + zperp (x) zhat and
/// zhat (x) zhat - zperp (x) zperp. `orientation` = -1 uses -zperp.
Mat2 reflection_R(Vec2 z, double orientation = 1.0);
Mat2 projection_P(Vec2 z);

/// One (theta, alpha) sample of the kernel inputs: a = X'(theta + alpha),
/// b = X'(theta), d = D_alpha X(theta).
struct KernelInput {
  Vec2 a;
  Vec2 b;
  Vec2 d;

  Vec2 delta_plus() const { return a - d; }
  Vec2 delta_minus() const { return b - d; }
};

enum class KernelForm { Direct, Split };

/// K[X](theta, alpha). Direct evaluates the three-term expression in a, b, d;
/// Split evaluates I/4pi + A.
Mat2 kernel_K(const KernelInput& in, KernelForm form = KernelForm::Direct, double orientation = 1.0);

/// The remainder A = K - I/4pi, written in delta^+ and delta^-.
Mat2 kernel_A(const KernelInput& in, double orientation = 1.0);

/// K_0 = K(a, b, delta_x / alpha) / alpha^2.
Mat2 kernel_K0(Vec2 a, Vec2 b, Vec2 delta_x, double alpha);

/// Outcome of comparing a measured size against C times a bound structure.
struct BoundCheck {
  double lhs = 0.0;        ///< measured quantity (Frobenius norm)
  double structure = 0.0;  ///< right-hand side without the constant
  double constant = 0.0;
  double bound = 0.0;  ///< constant * structure
  bool violated = false;

  double ratio() const {
    if (structure > 0.0) return lhs / structure;
    return lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  }
};

/// Frozen constants for the A bound audits. calibrate_a_bounds over 2e6
/// samples gives maxima 0.238, 0.309 and 0.568; each is frozen with about
/// 30% headroom.
inline constexpr double kABoundConstant = 0.3;
inline constexpr double kABetaBoundConstant = 0.4;
inline constexpr double kADiffBoundConstant = 0.75;

/// |A| <= C (rho^-2 e^2 + rho^-1 e) with e = max(|delta^+|, |delta^-|).
BoundCheck a_bound_audit(const KernelInput& in, double rho, double constant = kABoundConstant);

/// |A(theta + beta) - A(theta)| against the split bound for the translated
/// difference. `base` is the sample at theta, `shifted` the one at theta + beta
/// with the same alpha. rho defaults to the smaller of the two |d|.
BoundCheck a_beta_bound_audit(const KernelInput& base, const KernelInput& shifted, double rho = 0.0,
                              double constant = kABetaBoundConstant);

/// |A[X] - A[Y]| at the same sample against the two-curve bound. rho_x is the
/// arc-chord proxy for X, rho_xy the joint one; defaults are per-sample |d|.
BoundCheck a_diff_bound_audit(const KernelInput& x, const KernelInput& y, double rho_x = 0.0, double rho_xy = 0.0,
                              double constant = kADiffBoundConstant);

/// Largest lhs/structure ratio of each audit over a random sweep.
struct ABoundCalibration {
  double a = 0.0;
  double a_beta = 0.0;
  double a_diff = 0.0;
};
ABoundCalibration calibrate_a_bounds(int samples, std::uint64_t seed);

/// Maxima collected by the randomized kernel identity sweep.
struct KernelSweep {
  int samples = 0;
  double cancellation = 0.0;   ///< max cancellation residual
  double split = 0.0;          ///< max |K_direct - K_split| / max(1, |K|)
  double symmetry = 0.0;       ///< max |K(a,b,d) - K(b,a,d)|
  double orientation = 0.0;    ///< max |K - K with zperp -> -zperp|
  double k0_scaling = 0.0;     ///< max |alpha^2 K0 - K(a,b,dX/alpha)| / max(1, |K|)
  double rotation = 0.0;       ///< max |K(Qa,Qb,Qd) - Q K Q^T|
  double homogeneity = 0.0;    ///< max |K(ra,rb,rd) - K(a,b,d)|
  int a_bound_violations = 0;
  int a_beta_violations = 0;
  int a_diff_violations = 0;
};
KernelSweep kernel_sweep(int samples, std::uint64_t seed);

}  // namespace peskin
