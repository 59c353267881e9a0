#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <utility>

namespace peskin {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kFourPi = 4.0 * kPi;
inline constexpr double kInv4Pi = 1.0 / kFourPi;

/// A point or vector in the plane.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
  constexpr Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
  constexpr Vec2& operator*=(double s) { x *= s; y *= s; return *this; }
  constexpr Vec2& operator/=(double s) { x /= s; y /= s; return *this; }

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend constexpr Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
  friend constexpr Vec2 operator/(Vec2 a, double s) { return {a.x / s, a.y / s}; }
  friend constexpr bool operator==(Vec2 a, Vec2 b) = default;
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double norm2(Vec2 a) { return dot(a, a); }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

/// Counter-clockwise rotation by pi/2.
constexpr Vec2 perp(Vec2 a) { return {-a.y, a.x}; }

inline Vec2 rotate(Vec2 a, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {c * a.x - s * a.y, s * a.x + c * a.y};
}

constexpr cplx to_complex(Vec2 a) { return {a.x, a.y}; }
constexpr Vec2 to_vec(cplx z) { return {z.real(), z.imag()}; }

/// Dense 2x2 real matrix, row-major.
struct Mat2 {
  double a11 = 0.0, a12 = 0.0, a21 = 0.0, a22 = 0.0;

  static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static constexpr Mat2 zero() { return {}; }
  static constexpr Mat2 diag(double d1, double d2) { return {d1, 0.0, 0.0, d2}; }

  constexpr Mat2& operator+=(const Mat2& o) {
    a11 += o.a11; a12 += o.a12; a21 += o.a21; a22 += o.a22;
    return *this;
  }
  constexpr Mat2& operator-=(const Mat2& o) {
    a11 -= o.a11; a12 -= o.a12; a21 -= o.a21; a22 -= o.a22;
    return *this;
  }
  constexpr Mat2& operator*=(double s) {
    a11 *= s; a12 *= s; a21 *= s; a22 *= s;
    return *this;
  }

  friend constexpr Mat2 operator+(Mat2 a, const Mat2& b) { return a += b; }
  friend constexpr Mat2 operator-(Mat2 a, const Mat2& b) { return a -= b; }
  friend constexpr Mat2 operator*(double s, Mat2 a) { return a *= s; }
  friend constexpr Mat2 operator*(Mat2 a, double s) { return a *= s; }
  friend constexpr Vec2 operator*(const Mat2& m, Vec2 v) {
    return {m.a11 * v.x + m.a12 * v.y, m.a21 * v.x + m.a22 * v.y};
  }
  friend constexpr Mat2 operator*(const Mat2& m, const Mat2& n) {
    return {m.a11 * n.a11 + m.a12 * n.a21, m.a11 * n.a12 + m.a12 * n.a22,
            m.a21 * n.a11 + m.a22 * n.a21, m.a21 * n.a12 + m.a22 * n.a22};
  }
  friend constexpr bool operator==(const Mat2&, const Mat2&) = default;

  constexpr Mat2 transpose() const { return {a11, a21, a12, a22}; }
  constexpr double trace() const { return a11 + a22; }
};

constexpr Mat2 outer(Vec2 u, Vec2 v) { return {u.x * v.x, u.x * v.y, u.y * v.x, u.y * v.y}; }

/// Frobenius inner product.
constexpr double frobenius(const Mat2& m, const Mat2& n) {
  return m.a11 * n.a11 + m.a12 * n.a12 + m.a21 * n.a21 + m.a22 * n.a22;
}

inline double frobenius_norm(const Mat2& m) { return std::sqrt(frobenius(m, m)); }

inline double max_abs(const Mat2& m) {
  return std::max({std::abs(m.a11), std::abs(m.a12), std::abs(m.a21), std::abs(m.a22)});
}

/// Rotation matrix for a counter-clockwise rotation by `angle`.
inline Mat2 rotation(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {c, -s, s, c};
}

/// Eigenvalues of a symmetric matrix, ascending.
inline std::pair<double, double> symmetric_eigenvalues(const Mat2& m) {
  const double mean = 0.5 * (m.a11 + m.a22);
  const double half_diff = 0.5 * (m.a11 - m.a22);
  const double off = 0.5 * (m.a12 + m.a21);
  const double r = std::hypot(half_diff, off);
  return {mean - r, mean + r};
}

}  // namespace peskin
