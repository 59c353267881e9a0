#include "peskin/curve.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "peskin/fft.hpp"
#include "peskin/parallel.hpp"

namespace peskin {
namespace {

// Signed wavenumber stored at FFT index i of an array of size n.
int wavenumber(int i, int n) { return 2 * i < n ? i : i - n; }

int index_of(int k, int n) { return k >= 0 ? k : k + n; }

double sign_alternation(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

void require_even_size(std::size_t n) {
  if (n < 2 || n % 2 != 0) {
    throw std::invalid_argument("curve grid size must be even and positive, got " + std::to_string(n));
  }
}

void require_offset(double alpha) {
  if (alpha == 0.0 || !(alpha > -kPi && alpha <= kPi)) {
    throw std::invalid_argument("difference offset must lie in (-pi, pi] \\ {0}");
  }
}

void require_same_size(const Curve& a, const Curve& b) {
  if (a.size() != b.size()) throw std::invalid_argument("curve sizes differ");
}

}  // namespace

std::vector<cplx> analyze(std::span<const Vec2> values) {
  const int n = static_cast<int>(values.size());
  std::vector<cplx> z(values.size());
  for (int j = 0; j < n; ++j) z[j] = to_complex(values[j]);
  auto c = fft::forward(z);
  const double inv = 1.0 / n;
  for (int i = 0; i < n; ++i) c[i] *= sign_alternation(i) * inv;
  return c;
}

std::vector<Vec2> synthesize(std::span<const cplx> coeffs) {
  const int n = static_cast<int>(coeffs.size());
  std::vector<cplx> work(coeffs.begin(), coeffs.end());
  for (int i = 0; i < n; ++i) work[i] *= sign_alternation(i);
  const auto z = fft::backward(work);
  std::vector<Vec2> out(coeffs.size());
  for (int j = 0; j < n; ++j) out[j] = to_vec(z[j]);
  return out;
}

Curve::Curve(std::vector<Vec2> nodes, std::vector<cplx> coeffs)
    : nodes_(std::move(nodes)), coeffs_(std::move(coeffs)) {
  mean_ = coeffs_.empty() ? Vec2{} : to_vec(coeffs_[0]);
}

Curve Curve::from_nodes(std::vector<Vec2> nodes) {
  require_even_size(nodes.size());
  auto coeffs = analyze(nodes);
  return Curve(std::move(nodes), std::move(coeffs));
}

Curve Curve::from_coefficients(std::vector<cplx> coefficients) {
  require_even_size(coefficients.size());
  auto nodes = synthesize(coefficients);
  return Curve(std::move(nodes), std::move(coefficients));
}

Curve Curve::from_function(int n, const std::function<Vec2(double)>& f) {
  std::vector<Vec2> nodes(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) nodes[j] = f(-kPi + kTwoPi * j / n);
  return from_nodes(std::move(nodes));
}

cplx Curve::coefficient(int k) const {
  const int n = size();
  if (2 * std::abs(k) > n) return {};
  if (2 * std::abs(k) == n) return 0.5 * coeffs_[static_cast<std::size_t>(n / 2)];
  return coeffs_[static_cast<std::size_t>(index_of(k, n))];
}

cplx Curve::coeff_x(int k) const { return 0.5 * (coefficient(k) + std::conj(coefficient(-k))); }

cplx Curve::coeff_y(int k) const {
  return (coefficient(k) - std::conj(coefficient(-k))) / cplx(0.0, 2.0);
}

Vec2 Curve::evaluate(double theta) const {
  const int n = size();
  cplx z{};
  for (int i = 0; i < n; ++i) {
    const int k = wavenumber(i, n);
    if (2 * k == -n) {
      z += coeffs_[i] * std::cos(0.5 * n * theta);
    } else {
      z += coeffs_[i] * std::polar(1.0, k * theta);
    }
  }
  return to_vec(z);
}

std::vector<cplx> padded_coefficients(const Curve& c, int m) {
  const int n = c.size();
  std::vector<cplx> out(static_cast<std::size_t>(m));
  const auto src = c.coefficients();
  for (int i = 0; i < n; ++i) {
    const int k = wavenumber(i, n);
    if (2 * k == -n) {
      if (m > n) {
        out[index_of(k, m)] += 0.5 * src[i];
        out[index_of(-k, m)] += 0.5 * src[i];
      } else if (m == n) {
        out[i] = src[i];
      }
      continue;
    }
    if (2 * std::abs(k) < m) out[index_of(k, m)] = src[i];
  }
  return out;
}

std::vector<Vec2> Curve::resample(int m) const { return synthesize(padded_coefficients(*this, m)); }

Curve Curve::resized(int m) const { return from_coefficients(padded_coefficients(*this, m)); }

Curve Curve::map(const std::function<Vec2(Vec2)>& f) const {
  std::vector<Vec2> out(nodes_.size());
  std::transform(nodes_.begin(), nodes_.end(), out.begin(), f);
  return from_nodes(std::move(out));
}

Curve operator+(const Curve& a, const Curve& b) {
  require_same_size(a, b);
  std::vector<Vec2> nodes(a.nodes_.size());
  std::vector<cplx> coeffs(a.coeffs_.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    nodes[i] = a.nodes_[i] + b.nodes_[i];
    coeffs[i] = a.coeffs_[i] + b.coeffs_[i];
  }
  return Curve(std::move(nodes), std::move(coeffs));
}

Curve operator-(const Curve& a, const Curve& b) { return a + (-1.0) * b; }

Curve operator*(double s, const Curve& a) {
  std::vector<Vec2> nodes(a.nodes_.size());
  std::vector<cplx> coeffs(a.coeffs_.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    nodes[i] = s * a.nodes_[i];
    coeffs[i] = s * a.coeffs_[i];
  }
  return Curve(std::move(nodes), std::move(coeffs));
}

Curve translate(const Curve& c, Vec2 offset) {
  std::vector<cplx> coeffs(c.coefficients().begin(), c.coefficients().end());
  coeffs[0] += to_complex(offset);
  return Curve::from_coefficients(std::move(coeffs));
}

Curve rotate(const Curve& c, double angle) {
  const cplx phase = std::polar(1.0, angle);
  std::vector<cplx> coeffs(c.coefficients().begin(), c.coefficients().end());
  for (auto& v : coeffs) v *= phase;
  return Curve::from_coefficients(std::move(coeffs));
}

Curve scale(const Curve& c, double factor) { return factor * c; }

Curve derivative(const Curve& c) {
  const int n = c.size();
  std::vector<cplx> coeffs(c.coefficients().begin(), c.coefficients().end());
  for (int i = 0; i < n; ++i) {
    const int k = wavenumber(i, n);
    coeffs[i] = (2 * k == -n) ? cplx{} : coeffs[i] * cplx(0.0, k);
  }
  return Curve::from_coefficients(std::move(coeffs));
}

Curve primitive(const Curve& derivative_field, Vec2 mean) {
  const int n = derivative_field.size();
  std::vector<cplx> coeffs(derivative_field.coefficients().begin(), derivative_field.coefficients().end());
  for (int i = 0; i < n; ++i) {
    const int k = wavenumber(i, n);
    if (k == 0) {
      coeffs[i] = to_complex(mean);
    } else if (2 * k == -n) {
      coeffs[i] = {};
    } else {
      coeffs[i] /= cplx(0.0, k);
    }
  }
  return Curve::from_coefficients(std::move(coeffs));
}

Curve shift(const Curve& c, double alpha) {
  const int n = c.size();
  std::vector<cplx> coeffs(c.coefficients().begin(), c.coefficients().end());
  for (int i = 0; i < n; ++i) {
    const int k = wavenumber(i, n);
    coeffs[i] *= (2 * k == -n) ? cplx(std::cos(0.5 * n * alpha), 0.0) : std::polar(1.0, k * alpha);
  }
  return Curve::from_coefficients(std::move(coeffs));
}

Curve truncate(const Curve& c, int kmax) {
  const int n = c.size();
  std::vector<cplx> coeffs(c.coefficients().begin(), c.coefficients().end());
  for (int i = 0; i < n; ++i) {
    const int k = wavenumber(i, n);
    if (std::abs(k) >= kmax || 2 * k == -n) coeffs[i] = {};
  }
  return Curve::from_coefficients(std::move(coeffs));
}

DifferenceField difference(const Curve& f, double alpha, DifferenceKind kind) {
  require_offset(alpha);
  if (kind == DifferenceKind::Plus || kind == DifferenceKind::Minus) {
    throw std::invalid_argument("delta^+/- differences need the primitive curve");
  }
  const Curve shifted = shift(f, alpha);
  DifferenceField out{alpha, kind, std::vector<Vec2>(f.nodes().size())};
  const double factor = kind == DifferenceKind::Divided ? 1.0 / alpha : 1.0;
  for (int j = 0; j < f.size(); ++j) out.values[j] = factor * (shifted[j] - f[j]);
  return out;
}

DifferenceField difference(const Curve& derivative_field, const Curve& primitive_curve, double alpha,
                           DifferenceKind kind) {
  if (kind == DifferenceKind::Plain || kind == DifferenceKind::Divided) {
    return difference(derivative_field, alpha, kind);
  }
  require_offset(alpha);
  require_same_size(derivative_field, primitive_curve);
  const auto divided = difference(primitive_curve, alpha, DifferenceKind::Divided);
  const Curve base = kind == DifferenceKind::Plus ? shift(derivative_field, alpha) : derivative_field;
  DifferenceField out{alpha, kind, std::vector<Vec2>(divided.values.size())};
  for (int j = 0; j < base.size(); ++j) out.values[j] = base[j] - divided.values[j];
  return out;
}

double lp_norm(std::span<const Vec2> values, double p) {
  if (values.empty()) return 0.0;
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto& v : values) m = std::max(m, norm(v));
    return m;
  }
  double s = 0.0;
  for (const auto& v : values) s += std::pow(norm(v), p);
  return std::pow(kTwoPi / static_cast<double>(values.size()) * s, 1.0 / p);
}

double l2_norm(const Curve& c) { return lp_norm(c.nodes(), 2.0); }

ShiftGrid::ShiftGrid(const Curve& c, int theta_points, int alpha_points)
    : p_(theta_points), m_(alpha_points) {
  if (theta_points < 1 || alpha_points < 2 || alpha_points % 2 != 0) {
    throw std::invalid_argument("shift grid needs P >= 1 and even M >= 2");
  }
  fine_size_ = std::lcm(theta_points, 2 * alpha_points);
  theta_stride_ = fine_size_ / theta_points;
  alpha_stride_ = fine_size_ / (2 * alpha_points);
  fine_ = c.resample(fine_size_);
  alphas_.resize(static_cast<std::size_t>(alpha_points));
  for (int m = 0; m < alpha_points; ++m) {
    const double a = (m + 0.5) * kTwoPi / alpha_points;
    alphas_[m] = a > kPi ? a - kTwoPi : a;
  }
}

double arc_chord_grid(const Curve& c, int theta_factor, int alpha_factor) {
  const ShiftGrid grid(c, theta_factor * c.size(), alpha_factor * c.size());
  const int n_theta = grid.theta_points(), m = grid.alpha_points();
  std::vector<double> row_min(static_cast<std::size_t>(n_theta));
  parallel_for(static_cast<std::size_t>(n_theta), [&](std::size_t j) {
    const int p = static_cast<int>(j);
    // alpha = pi is not on the half-offset grid but lands on a node.
    double best = norm(grid.at((p + n_theta / 2) % n_theta) - grid.at(p)) / kPi;
    for (int k = 0; k < m; ++k) best = std::min(best, norm(grid.shifted(p, k) - grid.at(p)) / std::abs(grid.alpha(k)));
    row_min[j] = best;
  });
  return *std::min_element(row_min.begin(), row_min.end());
}

ArcChordResult arc_chord(const Curve& c, int alpha_factor) {
  if (alpha_factor < 4) throw std::invalid_argument("arc_chord needs at least 4N offsets");
  ArcChordResult r;
  r.coarse = arc_chord_grid(c, 1, alpha_factor);
  r.value = arc_chord_grid(c, 2, 2 * alpha_factor);
  r.estimate = std::abs(r.value - r.coarse);
  return r;
}

}  // namespace peskin
