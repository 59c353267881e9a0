#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "peskin/curve.hpp"

namespace peskin::testing {

inline Curve mode(int n, int k, double amplitude = 1.0) {
  return Curve::from_function(n, [k, amplitude](double t) { return Vec2{amplitude * std::cos(k * t), amplitude * std::sin(k * t)}; });
}

/// Random trigonometric polynomial with modes 1 <= |k| <= kmax, zero mean.
inline Curve random_field(int n, int kmax, std::uint64_t seed, double decay = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<cplx> c(static_cast<std::size_t>(n));
  for (int k = 1; k <= kmax; ++k) {
    const double a = std::pow(k, -decay);
    c[static_cast<std::size_t>(k)] = {a * g(rng), a * g(rng)};
    c[static_cast<std::size_t>(n - k)] = {a * g(rng), a * g(rng)};
  }
  return Curve::from_coefficients(std::move(c));
}

inline double max_node_error(const Curve& a, const Curve& b) {
  double m = 0.0;
  for (int j = 0; j < a.size(); ++j) m = std::max(m, norm(a[j] - b[j]));
  return m;
}

}  // namespace peskin::testing
