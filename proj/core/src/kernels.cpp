#include "peskin/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace peskin {
namespace {



Vec2 require_nonzero(Vec2 z, const char* what) {
  const double r = norm(z);
  if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument(what);
  return z / r;
}

// u . M v evaluated so that swapping u and v is exact for symmetric M.
double sym_form(const Mat2& m, Vec2 u, Vec2 v) {
  const double off = 0.5 * (m.a12 + m.a21);
  return m.a11 * (u.x * v.x) + off * (u.x * v.y + u.y * v.x) + m.a22 * (u.y * v.y);
}

struct Frame {
  Mat2 p;
  Mat2 r;
  double inv_r2;
};

Frame frame_of(Vec2 d, double orientation) {
  const Vec2 e = require_nonzero(d, "kernel evaluated at D_alpha X = 0 (arc-chord failure)");
  const Vec2 q = orientation * perp(e);
  return {outer(e, e) - outer(q, q), outer(e, q) + outer(q, e), 1.0 / norm2(d)};
}

}  // namespace

Mat2 stokeslet(Vec2 z, StokesletPart part) {
  const Vec2 e = require_nonzero(z, "stokeslet at z = 0");
  Mat2 out{};
  if (part != StokesletPart::G2) out += (-kInv4Pi * std::log(norm(z))) * Mat2::identity();
  if (part != StokesletPart::G1) out += kInv4Pi * outer(e, e);
  return out;
}

Mat2 reflection_R(Vec2 z, double orientation) {
  const Vec2 e = require_nonzero(z, "reflection matrix at z = 0");
  const Vec2 q = orientation * perp(e);
  return outer(e, q) + outer(q, e);
}

Mat2 projection_P(Vec2 z) {
  const Vec2 e = require_nonzero(z, "projection matrix at z = 0");
  const Vec2 q = perp(e);
  return outer(e, e) - outer(q, q);
}

Mat2 stokeslet_derivative(Vec2 u, Vec2 v, Vec2 z, StokesletDerivative which) {
  const Vec2 e = require_nonzero(z, "stokeslet derivative at z = 0");
  const double r = norm(z);
  const Vec2 q = perp(e);
  const Mat2 R = outer(e, q) + outer(q, e);
  const Mat2 P = outer(e, e) - outer(q, q);
  switch (which) {
    case StokesletDerivative::GradG1:
      return (-kInv4Pi * dot(u, e) / r) * Mat2::identity();
    case StokesletDerivative::GradG2:
      return (kInv4Pi * dot(u, q) / r) * R;
    case StokesletDerivative::HessG1:
      return (kInv4Pi * sym_form(P, u, v) / (r * r)) * Mat2::identity();
    case StokesletDerivative::HessG2:
      return (kInv4Pi / (r * r)) * (-sym_form(R, u, v) * R + sym_form(P - Mat2::identity(), u, v) * P);
  }
  throw std::invalid_argument("unknown stokeslet derivative");
}

double cancellation_residual(Vec2 u, Vec2 z) {
  const Vec2 lhs = stokeslet_derivative(u, {}, z, StokesletDerivative::GradG1) * z;
  const Vec2 rhs = stokeslet(z, StokesletPart::G2) * u;
  return norm(lhs + rhs);
}

Mat2 kernel_K(const KernelInput& in, KernelForm form, double orientation) {
  if (form == KernelForm::Split) return kInv4Pi * Mat2::identity() + kernel_A(in, orientation);
  const Frame f = frame_of(in.d, orientation);
  const double ip = sym_form(f.p, in.a, in.b) * f.inv_r2;
  const double ir = sym_form(f.r, in.a, in.b) * f.inv_r2;
  const double iq = sym_form(f.p - Mat2::identity(), in.a, in.b) * f.inv_r2;
  return kInv4Pi * (ip * Mat2::identity() - ir * f.r + iq * f.p);
}

Mat2 kernel_A(const KernelInput& in, double orientation) {
  const Frame f = frame_of(in.d, orientation);
  const Vec2 dp = in.delta_plus(), dm = in.delta_minus(), sum = dp + dm;
  const double c_i = (sym_form(f.p, dp, dm) + sym_form(f.p, sum, in.d)) * f.inv_r2;
  const double c_r = (sym_form(f.r, dp, dm) + sym_form(f.r, sum, in.d)) * f.inv_r2;
  const double c_p = sym_form(f.p - Mat2::identity(), dp, dm) * f.inv_r2;
  return kInv4Pi * (c_i * Mat2::identity() - c_r * f.r + c_p * f.p);
}

Mat2 kernel_K0(Vec2 a, Vec2 b, Vec2 delta_x, double alpha) {
  if (alpha == 0.0 || !std::isfinite(alpha)) throw std::invalid_argument("kernel_K0 needs alpha != 0");
  require_nonzero(delta_x, "kernel_K0 at delta_alpha X = 0");
  return (1.0 / (alpha * alpha)) * kernel_K({a, b, delta_x / alpha});
}

namespace {

BoundCheck finish(double lhs, double structure, double constant) {
  BoundCheck c{lhs, structure, constant, constant * structure, false};
  // Relative slack absorbs rounding when both sides vanish together.
  c.violated = lhs > c.bound * (1.0 + 1e-12) + 1e-15;
  return c;
}

}  // namespace

BoundCheck a_bound_audit(const KernelInput& in, double rho, double constant) {
  if (!(rho > 0.0) || norm(in.d) < rho * (1.0 - 1e-12)) {
    throw std::invalid_argument("a_bound_audit needs 0 < rho <= |d|");
  }
  const double e = std::max(norm(in.delta_plus()), norm(in.delta_minus()));
  const double lhs = frobenius_norm(kernel_A(in));
  return finish(lhs, e * e / (rho * rho) + e / rho, constant);
}

BoundCheck a_beta_bound_audit(const KernelInput& base, const KernelInput& shifted, double rho, double constant) {
  if (rho <= 0.0) rho = std::min(norm(base.d), norm(shifted.d));
  if (!(rho > 0.0)) throw std::invalid_argument("a_beta_bound_audit needs |d| > 0");
  const double dp = norm(base.delta_plus()), dm = norm(base.delta_minus());
  const double tau_m = norm(shifted.delta_minus());
  const double ddp = norm(shifted.delta_plus() - base.delta_plus());
  const double ddm = norm(shifted.delta_minus() - base.delta_minus());
  const double dd = norm(shifted.d - base.d);
  const double r2 = rho * rho, r3 = r2 * rho;
  // First piece: differences of delta^+/- at fixed d; second: variation of d.
  const double part1 = (ddp * tau_m + dp * ddm) / r2 + (ddp + ddm) / rho;
  const double part2 = dp * (tau_m + dm) * dd / r3 + (dp + dm) * dd / r2;
  const double lhs = frobenius_norm(kernel_A(shifted) - kernel_A(base));
  return finish(lhs, part1 + part2, constant);
}

BoundCheck a_diff_bound_audit(const KernelInput& x, const KernelInput& y, double rho_x, double rho_xy,
                              double constant) {
  if (rho_x <= 0.0) rho_x = norm(x.d);
  if (rho_xy <= 0.0) rho_xy = std::min(norm(x.d), norm(y.d));
  if (!(rho_x > 0.0) || !(rho_xy > 0.0)) throw std::invalid_argument("a_diff_bound_audit needs |d| > 0");
  const double ep = norm(x.delta_plus() - y.delta_plus());
  const double em = norm(x.delta_minus() - y.delta_minus());
  const double ed = norm(x.d - y.d);
  const double xm = norm(x.delta_minus());
  const double yp = norm(y.delta_plus()), ym = norm(y.delta_minus());
  const double structure = (ep + em) / rho_x + (ep * xm + em * yp) / (rho_x * rho_x) +
                           ed * (ym + yp) / (rho_xy * rho_xy) + ed * ym * yp / (rho_xy * rho_xy * rho_xy);
  const double lhs = frobenius_norm(kernel_A(x) - kernel_A(y));
  return finish(lhs, structure, constant);
}

namespace {

struct Sampler {
  std::mt19937_64 rng;
  std::uniform_real_distribution<double> unit{-1.0, 1.0};
  std::uniform_real_distribution<double> open{0.0, 1.0};

  explicit Sampler(std::uint64_t seed) : rng(seed) {}

  Vec2 vec(double scale) { return {scale * unit(rng), scale * unit(rng)}; }

  double log_uniform(double lo, double hi) { return lo * std::pow(hi / lo, open(rng)); }

  // Kernel input with components of order one and |d| >= dmin.
  KernelInput input(double dmin) {
    Vec2 d;
    do d = vec(2.0); while (norm(d) < dmin);
    return {vec(2.0), vec(2.0), d};
  }

  KernelInput perturbed(const KernelInput& in, double dmin) {
    for (;;) {
      const double eps = log_uniform(1e-4, 1.0);
      KernelInput out{in.a + vec(eps), in.b + vec(eps), in.d + vec(eps)};
      if (norm(out.d) >= dmin) return out;
    }
  }
};

constexpr double kSweepDMin = 0.1;

}  // namespace

ABoundCalibration calibrate_a_bounds(int samples, std::uint64_t seed) {
  Sampler s(seed);
  ABoundCalibration c;
  for (int i = 0; i < samples; ++i) {
    const KernelInput x = s.input(kSweepDMin);
    const KernelInput y = s.perturbed(x, kSweepDMin);
    c.a = std::max(c.a, a_bound_audit(x, norm(x.d), 1.0).ratio());
    c.a_beta = std::max(c.a_beta, a_beta_bound_audit(x, y, 0.0, 1.0).ratio());
    c.a_diff = std::max(c.a_diff, a_diff_bound_audit(x, y, 0.0, 0.0, 1.0).ratio());
  }
  return c;
}

KernelSweep kernel_sweep(int samples, std::uint64_t seed) {
  Sampler s(seed);
  KernelSweep w;
  w.samples = samples;
  for (int i = 0; i < samples; ++i) {
    {
      const double r = s.log_uniform(1e-3, 1e3);
      const double phi = kPi * s.unit(s.rng);
      const Vec2 z{r * std::cos(phi), r * std::sin(phi)};
      w.cancellation = std::max(w.cancellation, cancellation_residual(s.vec(1.0), z));
    }
    const KernelInput in = s.input(kSweepDMin);
    const Mat2 k = kernel_K(in);
    const double scale = std::max(1.0, max_abs(k));
    w.split = std::max(w.split, max_abs(k - kernel_K(in, KernelForm::Split)) / scale);
    w.symmetry = std::max(w.symmetry, max_abs(k - kernel_K({in.b, in.a, in.d})));
    w.orientation = std::max(w.orientation, max_abs(k - kernel_K(in, KernelForm::Direct, -1.0)));

    const double alpha = kPi * (0.01 + 0.99 * s.open(s.rng)) * (s.open(s.rng) < 0.5 ? -1.0 : 1.0);
    const Mat2 k0 = kernel_K0(in.a, in.b, alpha * in.d, alpha);
    w.k0_scaling = std::max(w.k0_scaling, max_abs(alpha * alpha * k0 - k) / scale);

    const double angle = kPi * s.unit(s.rng);
    const Mat2 q = rotation(angle);
    const Mat2 kq = kernel_K({q * in.a, q * in.b, q * in.d});
    w.rotation = std::max(w.rotation, max_abs(kq - q * k * q.transpose()) / scale);

    const double r = s.log_uniform(1e-2, 1e2);
    w.homogeneity = std::max(w.homogeneity, max_abs(kernel_K({r * in.a, r * in.b, r * in.d}) - k) / scale);

    const KernelInput y = s.perturbed(in, kSweepDMin);
    if (a_bound_audit(in, norm(in.d)).violated) ++w.a_bound_violations;
    if (a_beta_bound_audit(in, y).violated) ++w.a_beta_violations;
    if (a_diff_bound_audit(in, y).violated) ++w.a_diff_violations;
  }
  return w;
}

}  // namespace peskin
