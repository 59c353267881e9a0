#pragma once

#include <functional>
#include <span>
#include <vector>

#include "peskin/vec2.hpp"

namespace peskin {

/// A closed planar curve, or any R^2-valued periodic field, sampled on the
/// uniform grid theta_j = -pi + 2 pi j / N together with the Fourier
/// coefficients of its trigonometric interpolant.
///
/// Coefficients are stored packed: the complex signal z = x + i y has
/// z(theta) = sum_k c_k exp(i k theta), with c_k held in FFT order (index k
/// for 0 <= k < N/2, index N + k for -N/2 <= k < 0). The Nyquist mode
/// k = -N/2 is interpreted symmetrically, c cos(N theta / 2), so that shifts
/// and resampling of real data stay real.
///
/// Values are immutable; every operation returns a new Curve whose nodes and
/// coefficients were produced together.
class Curve {
 public:
  Curve() = default;

  static Curve from_nodes(std::vector<Vec2> nodes);
  static Curve from_coefficients(std::vector<cplx> coefficients);
  static Curve from_function(int n, const std::function<Vec2(double)>& f);

  int size() const { return static_cast<int>(nodes_.size()); }
  bool empty() const { return nodes_.empty(); }

  double theta(int j) const { return -kPi + kTwoPi * j / size(); }

  std::span<const Vec2> nodes() const { return nodes_; }
  Vec2 operator[](int j) const { return nodes_[static_cast<std::size_t>(j)]; }

  std::span<const cplx> coefficients() const { return coeffs_; }

  /// Packed coefficient c_k for -N/2 <= k <= N/2 (both ends name the Nyquist
  /// mode, reported with half weight each).
  cplx coefficient(int k) const;

  /// Per-component coefficients: x(theta) = sum_k coeff_x(k) e^{ik theta}.
  cplx coeff_x(int k) const;
  cplx coeff_y(int k) const;

  /// The k = 0 mode.
  Vec2 mean() const { return mean_; }

  /// Trigonometric interpolant at an arbitrary angle (direct O(N) sum).
  Vec2 evaluate(double theta) const;

  /// Interpolant sampled on the uniform grid of `m` points (m >= N keeps
  /// all modes; m < N truncates to |k| < m/2).
  std::vector<Vec2> resample(int m) const;

  /// Same band-limited function represented on a grid of `m` points.
  Curve resized(int m) const;

  /// Pointwise map on nodes.
  Curve map(const std::function<Vec2(Vec2)>& f) const;

  friend Curve operator+(const Curve& a, const Curve& b);
  friend Curve operator-(const Curve& a, const Curve& b);
  friend Curve operator*(double s, const Curve& a);

 private:
  Curve(std::vector<Vec2> nodes, std::vector<cplx> coeffs);

  std::vector<Vec2> nodes_;
  std::vector<cplx> coeffs_;
  Vec2 mean_;
};

/// Packed coefficient array (FFT order, size m) holding the modes of `c`
/// that fit on a grid of size m, with the Nyquist mode split symmetrically.
std::vector<cplx> padded_coefficients(const Curve& c, int m);

/// Values on the grid of size m from a packed coefficient array of size m.
std::vector<Vec2> synthesize(std::span<const cplx> coeffs);

/// Packed coefficients from values on a uniform grid.
std::vector<cplx> analyze(std::span<const Vec2> values);

/// Rigid motions and scalings, applied exactly to the nodes.
Curve translate(const Curve& c, Vec2 offset);
Curve rotate(const Curve& c, double angle);
Curve scale(const Curve& c, double factor);

/// X' via the multiplier ik; the Nyquist and mean modes are dropped.
Curve derivative(const Curve& c);

/// Primitive with prescribed mean: inverse of `derivative` on mean-zero data.
Curve primitive(const Curve& derivative_field, Vec2 mean);

/// Spectral translation f(theta + alpha), exact for band-limited f.
Curve shift(const Curve& c, double alpha);

/// Drops modes with |k| >= kmax (and the Nyquist mode).
Curve truncate(const Curve& c, int kmax);

enum class DifferenceKind {
  Plain,    ///< f(theta + alpha) - f(theta)
  Divided,  ///< (f(theta + alpha) - f(theta)) / alpha
  Plus,     ///< X'(theta + alpha) - D_alpha X(theta)
  Minus,    ///< X'(theta) - D_alpha X(theta)
};

struct DifferenceField {
  double alpha = 0.0;
  DifferenceKind kind = DifferenceKind::Plain;
  std::vector<Vec2> values;
};

/// Plain or divided difference of f at offset alpha in (-pi, pi], alpha != 0.
DifferenceField difference(const Curve& f, double alpha, DifferenceKind kind);

/// Any difference kind for a derivative field X' whose primitive X is given.
/// Plain and Divided act on the derivative field itself.
DifferenceField difference(const Curve& derivative_field, const Curve& primitive_curve, double alpha,
                           DifferenceKind kind);

/// Grid L^p norm (2 pi / N sum |v_j|^p)^{1/p}; p = infinity gives the max.
double lp_norm(std::span<const Vec2> values, double p);
double l2_norm(const Curve& c);

/// Values of a field at theta_p + alpha_m for the uniform theta grid of P
/// points and the half-offset grid alpha_m = (m + 1/2) 2 pi / M, wrapped into
/// (-pi, pi). The field is resampled spectrally onto a fine grid of size
/// lcm(P, 2M) so every shifted value is exact for band-limited data.
class ShiftGrid {
 public:
  ShiftGrid(const Curve& c, int theta_points, int alpha_points);

  int theta_points() const { return p_; }
  int alpha_points() const { return m_; }
  double alpha(int m) const { return alphas_[static_cast<std::size_t>(m)]; }
  Vec2 at(int p) const { return fine_[static_cast<std::size_t>(p * theta_stride_)]; }
  Vec2 shifted(int p, int m) const {
    return fine_[static_cast<std::size_t>((p * theta_stride_ + (2 * m + 1) * alpha_stride_) % fine_size_)];
  }

 private:
  int p_ = 0, m_ = 0, fine_size_ = 0, theta_stride_ = 0, alpha_stride_ = 0;
  std::vector<Vec2> fine_;
  std::vector<double> alphas_;
};

struct ArcChordResult {
  double value = 0.0;     ///< refined grid infimum
  double coarse = 0.0;    ///< unrefined grid infimum
  double estimate = 0.0;  ///< |refined - coarse|
};

/// Grid approximation of inf |delta_alpha X(theta)| / |alpha| over the node
/// grid, the half-offset alpha grid of M = alpha_factor * N points and
/// alpha = pi, with one refinement level (2N nodes, 2M offsets).
ArcChordResult arc_chord(const Curve& c, int alpha_factor = 4);

/// Brute force variant used for validation: theta on the N grid and
/// M = alpha_factor * N half-offset samples, no refinement.
double arc_chord_grid(const Curve& c, int theta_factor, int alpha_factor);

}  // namespace peskin
