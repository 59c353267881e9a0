#include "peskin/operators.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "peskin/parallel.hpp"

namespace peskin {
namespace {

int wavenumber(int i, int n) { return 2 * i < n ? i : i - n; }

int default_m(const Curve& f, int m) { return m > 0 ? m : 8 * f.size(); }

double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / t), b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

Curve multiply(const Curve& f, const std::function<double(int)>& symbol) {
  const int n = f.size();
  std::vector<cplx> c(f.coefficients().begin(), f.coefficients().end());
  for (int i = 0; i < n; ++i) c[i] *= symbol(wavenumber(i, n));
  return Curve::from_coefficients(std::move(c));
}

// Sum over the half-offset alpha grid of weight(alpha) delta_alpha f(theta_p).
Curve singular_sum(const Curve& f, int m, const std::function<double(double)>& weight) {
  const ShiftGrid grid(f, f.size(), m);
  std::vector<double> w(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) w[k] = weight(grid.alpha(k));
  std::vector<Vec2> out(static_cast<std::size_t>(f.size()));
  parallel_for(out.size(), [&](std::size_t j) {
    const int p = static_cast<int>(j);
    const Vec2 base = grid.at(p);
    Vec2 acc{};
    for (int k = 0; k < m; ++k) acc += w[k] * (grid.shifted(p, k) - base);
    out[j] = acc;
  });
  return Curve::from_nodes(std::move(out));
}

}  // namespace

LPFamily::LPFamily(int n) : n_(n), j_min_(-1), j_max_(0) {
  if (n < 2) throw std::invalid_argument("LPFamily needs N >= 2");
  while (3.0 * std::ldexp(1.0, j_max_) < n) ++j_max_;
  const int kmax = n / 2;
  table_.resize(static_cast<std::size_t>((j_max_ - j_min_ + 1) * (kmax + 1)));
  for (int j = j_min_; j <= j_max_; ++j) {
    for (int k = 0; k <= kmax; ++k) table_[(j - j_min_) * (kmax + 1) + k] = block_value(j, k);
  }
}

double LPFamily::phi(double x) {
  constexpr double lo = 1.5, hi = 8.0 / 3.0;
  return 1.0 - smooth_step((std::abs(x) - lo) / (hi - lo));
}

double LPFamily::block_value(int j, double k) {
  return phi(std::ldexp(k, -j)) - phi(std::ldexp(k, 1 - j));
}

double LPFamily::block(int j, int k) const {
  if (j < j_min_ || j > j_max_) return 0.0;
  const int kmax = n_ / 2;
  k = std::abs(k);
  if (k > kmax) return block_value(j, k);
  return table_[(j - j_min_) * (kmax + 1) + k];
}

double OperatorSymbol::tilde_exact(int k) {
  k = std::abs(k);
  if (k == 0) return 0.0;
  // (1/2pi) int_0^pi 2 sin^2(k a / 2) / a^2 da, panel-wise Gauss-Legendre.
  const int panels = std::max(4, 2 * k);
  const double width = kPi / panels;
  auto f = [k](double a) {
    const double s = std::sin(0.5 * k * a);
    return 2.0 * s * s / (a * a);
  };
  double sum = 0.0;
  for (int i = 0; i < panels; ++i) {
    sum += boost::math::quadrature::gauss<double, 20>::integrate(f, i * width, (i + 1) * width);
  }
  return sum / kTwoPi;
}

OperatorSymbol::OperatorSymbol(int n, int m) : n_(n), m_(m > 0 ? m : 8 * n) {
  if (n < 2 || m_ % 2 != 0) throw std::invalid_argument("OperatorSymbol needs N >= 2 and even M");
  const int kmax = n / 2;
  exact_.resize(static_cast<std::size_t>(kmax + 1));
  quad_.resize(static_cast<std::size_t>(kmax + 1));
  for (int k = 0; k <= kmax; ++k) {
    exact_[k] = tilde_exact(k);
    double q = 0.0;
    for (int j = 0; j < m_ / 2; ++j) {
      const double a = (j + 0.5) * kTwoPi / m_;
      q += (1.0 - std::cos(k * a)) / (a * a);
    }
    // Symmetric pairs, weight 2 pi / M, prefactor 1/4pi.
    quad_[k] = q / m_;
  }
}

Curve lambda_fourier(const Curve& f, double s) {
  return multiply(f, [s](int k) { return k == 0 ? 0.0 : std::pow(std::abs(k), s); });
}

Curve lambda_sine(const Curve& f, int m) {
  m = default_m(f, m);
  const double h = kTwoPi / m;
  return singular_sum(f, m, [h](double a) {
    const double s = 2.0 * std::sin(0.5 * a);
    return -h / (kPi * s * s);
  });
}

Curve lambda_tilde(const Curve& f, int m) {
  m = default_m(f, m);
  const double h = kTwoPi / m;
  return singular_sum(f, m, [h](double a) { return -h / (kFourPi * a * a); });
}

Curve lambda_tilde_spectral(const Curve& f, const OperatorSymbol& symbol) {
  if (symbol.n() != f.size()) throw std::invalid_argument("operator symbol built for a different grid");
  return multiply(f, [&symbol](int k) { return symbol.tilde(k); });
}

double half_lambda_norm(const Curve& f, int m) {
  m = default_m(f, m);
  const ShiftGrid grid(f, f.size(), m);
  double sum = 0.0;
  for (int p = 0; p < f.size(); ++p) {
    for (int k = 0; k < m; ++k) {
      const double a = grid.alpha(k);
      sum += norm2(grid.shifted(p, k) - grid.at(p)) / (a * a);
    }
  }
  const double weight = (kTwoPi / f.size()) * (kTwoPi / m) / (8.0 * kPi);
  return std::sqrt(weight * sum);
}

double l2_inner(const Curve& f, const Curve& g) {
  if (f.size() != g.size()) throw std::invalid_argument("l2_inner: grid sizes differ");
  double s = 0.0;
  for (int j = 0; j < f.size(); ++j) s += dot(f[j], g[j]);
  return s * kTwoPi / f.size();
}

Curve lp_project(const Curve& f, const LPFamily& family, int j) {
  if (family.n() != f.size()) throw std::invalid_argument("LP family built for a different grid");
  return multiply(f, [&family, j](int k) { return k == 0 ? 0.0 : family.block(j, k); });
}

double lambda_s_constant(double s) {
  if (!(s > 0.0 && s < 2.0)) throw std::invalid_argument("lambda_s_constant needs s in (0, 2)");
  return std::pow(2.0, s) * boost::math::tgamma(0.5 * (1.0 + s)) /
         (2.0 * std::sqrt(kPi) * std::abs(boost::math::tgamma(-0.5 * s)));
}

double periodized_lambda_s_eigenvalue(int k, double s, int lattice) {
  k = std::abs(k);
  if (k == 0) return 0.0;
  const double c = lambda_s_constant(s);
  const double edge = kTwoPi * (lattice + 0.5);
  // Lattice images other than m = 0, plus the tail beyond |m| = lattice.
  auto kernel = [=](double a) {
    double w = 0.0;
    for (int m = 1; m <= lattice; ++m) {
      w += std::pow(kTwoPi * m + a, -1.0 - s) + std::pow(kTwoPi * m - a, -1.0 - s);
    }
    w += (std::pow(edge + a, -s) + std::pow(edge - a, -s)) / (kTwoPi * s);
    return w;
  };
  auto f = [&](double a) {
    if (a <= 0.0) return 0.0;
    const double h = std::sin(0.5 * k * a);
    const double q = h / a;
    return 2.0 * q * q * std::pow(a, 1.0 - s) + 2.0 * h * h * kernel(a);
  };
  // The first panel carries the a^(1-s) endpoint behaviour.
  const int panels = std::max(4, 4 * k);
  const double width = kPi / panels;
  boost::math::quadrature::tanh_sinh<double> ts;
  double sum = ts.integrate(f, 0.0, width);
  for (int i = 1; i < panels; ++i) {
    sum += boost::math::quadrature::gauss<double, 30>::integrate(f, i * width, (i + 1) * width);
  }
  // -Lambda^s e = c int_T (2 cos - 2) W e, and the integrand is even in a.
  return 4.0 * c * sum;
}

double bernstein_ratio(const Curve& f, const LPFamily& family, int j, double m, double p) {
  const Curve block = lp_project(f, family, j);
  const int fine = std::isinf(p) ? 4 * f.size() : f.size();
  const auto base = block.resample(fine);
  const auto lifted = lambda_fourier(block, m).resample(fine);
  const double denom = lp_norm(base, p);
  if (denom == 0.0) return 0.0;
  return lp_norm(lifted, p) / (std::pow(2.0, j * m) * denom);
}

BernsteinBracket bernstein_bracket(double m, double p) {
  if (!std::isinf(p)) return {std::pow(0.75, m), std::pow(8.0 / 3.0, m)};
  return {0.5 * std::pow(0.75, m), 2.0 * std::pow(8.0 / 3.0, m)};
}

}  // namespace peskin
