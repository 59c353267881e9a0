#pragma once

#include <vector>

#include "peskin/curve.hpp"

namespace peskin {

/// Smooth radial cutoff and the dyadic Littlewood-Paley blocks it induces on
/// the wavenumbers |k| <= N/2 of a grid of size N.
class LPFamily {
 public:
  explicit LPFamily(int n);

  /// 1 on |x| <= 3/2, 0 on |x| >= 8/3, exp(-1/t) transition in between.
  static double phi(double x);

  /// phi(2^-j k) - phi(2^(1-j) k).
  static double block_value(int j, double k);

  int n() const { return n_; }
  int j_min() const { return j_min_; }
  int j_max() const { return j_max_; }

  /// Cached block multiplier for 0 <= |k| <= N/2 and j in [j_min, j_max].
  double block(int j, int k) const;

 private:
  int n_;
  int j_min_;
  int j_max_;
  std::vector<double> table_;
};

/// Per-wavenumber eigenvalues for a grid of size N: |k|^s on demand, the
/// exact Lambda-tilde eigenvalues, and those of the alpha quadrature with M
/// half-offset points (M = 8N when m = 0).
class OperatorSymbol {
 public:
  explicit OperatorSymbol(int n, int m = 0);

  int n() const { return n_; }
  int m() const { return m_; }

  /// (1/4pi) int_T (1 - cos k alpha) / alpha^2 d alpha.
  double tilde(int k) const { return exact_[static_cast<std::size_t>(std::abs(k))]; }
  /// The same integral by the half-offset midpoint rule with M points.
  double tilde_quadrature(int k) const { return quad_[static_cast<std::size_t>(std::abs(k))]; }

  /// Exact eigenvalue computed independently of any table.
  static double tilde_exact(int k);

 private:
  int n_;
  int m_;
  std::vector<double> exact_;
  std::vector<double> quad_;
};

/// Coefficient-wise multiplication by |k|^s.
Curve lambda_fourier(const Curve& f, double s);

/// Lambda f from the sine kernel, (1/pi) int delta_alpha f / S(alpha)^2 with
/// S = 2 sin(alpha/2), by the half-offset rule with M points (default 8N).
/// Returns Lambda f, i.e. minus the integral.
Curve lambda_sine(const Curve& f, int m = 0);

/// Lambda-tilde f = -(1/4pi) int delta_alpha f / alpha^2, same quadrature.
Curve lambda_tilde(const Curve& f, int m = 0);

/// Lambda-tilde applied through the cached exact eigenvalues.
Curve lambda_tilde_spectral(const Curve& f, const OperatorSymbol& symbol);

/// [(1/8pi) int d theta int d alpha |delta_alpha f|^2 / alpha^2]^(1/2) by
/// grid quadrature in theta and the half-offset rule in alpha.
double half_lambda_norm(const Curve& f, int m = 0);

/// L^2 inner product int f . g d theta of two fields on the same grid.
double l2_inner(const Curve& f, const Curve& g);

/// Delta_j f.
Curve lp_project(const Curve& f, const LPFamily& family, int j);

/// Normalizing constant of the periodized kernel representation of Lambda^s
/// written with (delta_alpha + delta_{-alpha}).
double lambda_s_constant(double s);

/// Eigenvalue of Lambda^s on e^{ik theta} from the periodized lattice kernel,
/// truncated at |m| <= lattice with an integral tail correction. Validation
/// only.
double periodized_lambda_s_eigenvalue(int k, double s, int lattice = 1000);

/// ||Lambda^m Delta_j f||_p / (2^{jm} ||Delta_j f||_p); 0 when the block is empty.
double bernstein_ratio(const Curve& f, const LPFamily& family, int j, double m, double p);

/// Frozen Bernstein brackets [lower, upper] for p in {2, inf} and
/// m in {1/2, 1}. The L^2 bracket is the exact range of (|k| / 2^j)^m over the
/// block support; the L^inf one is that range widened by a factor 2 each way
/// (300 random fields on N = 256 give [0.88, 1.41] at m = 1/2, [0.77, 2] at m = 1).
struct BernsteinBracket {
  double lower;
  double upper;
};
BernsteinBracket bernstein_bracket(double m, double p);

}  // namespace peskin
