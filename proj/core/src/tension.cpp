#include "peskin/tension.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <utility>

namespace peskin {
namespace {

constexpr int kBoundSamples = 4000;

double fd_step(double r) { return 1e-4 * std::max(1.0, std::abs(r)); }

// Sample points for bound estimation: dense near the lower end, covering
// [lo, hi] with geometric spacing when the range spans decades.
std::vector<double> sample_points(double lo, double hi) {
  std::vector<double> pts;
  pts.reserve(kBoundSamples + 1);
  if (lo > 0.0 && hi / lo > 20.0) {
    const double ratio = std::log(hi / lo);
    for (int i = 0; i <= kBoundSamples; ++i) pts.push_back(lo * std::exp(ratio * i / kBoundSamples));
  } else {
    const double start = lo > 0.0 ? lo : hi * 1e-6;
    for (int i = 0; i <= kBoundSamples; ++i) pts.push_back(start + (hi - start) * i / kBoundSamples);
  }
  return pts;
}

}  // namespace

TensionLaw::TensionLaw(std::string name, Fn eval, Fn d1, Fn d2, Fn d3, Window window, bool global,
                       bool zero)
    : name_(std::move(name)),
      eval_(std::move(eval)),
      d1_(std::move(d1)),
      d2_(std::move(d2)),
      d3_(std::move(d3)),
      window_(window),
      global_(global),
      vanishes_at_zero_(zero) {
  if (!eval_ || !d1_) throw std::invalid_argument("tension law needs T and T'");
  if (!(window_.lo >= 0.0 && window_.hi > window_.lo)) {
    throw std::invalid_argument("tension window must satisfy 0 <= a < b");
  }
  compute_bounds();
}

double TensionLaw::d2(double r) const {
  if (d2_) return d2_(r);
  const double h = fd_step(r);
  if (r - h <= 0.0) return (d1_(r + 2 * h) - d1_(r)) / (2 * h);
  return (d1_(r + h) - d1_(r - h)) / (2 * h);
}

double TensionLaw::d3(double r) const {
  if (d3_) return d3_(r);
  const double h = 10 * fd_step(r);
  if (r - h <= 0.0) return (d1_(r + 2 * h) - 2 * d1_(r + h) + d1_(r)) / (h * h);
  return (d1_(r + h) - 2 * d1_(r) + d1_(r - h)) / (h * h);
}

void TensionLaw::compute_bounds() {
  const double hi = std::isfinite(window_.hi) ? window_.hi : std::max(4.0, 4.0 * window_.lo);
  TensionBounds b{std::numeric_limits<double>::infinity(), 0.0, 0.0, 0.0};
  for (double r : sample_points(window_.lo, hi)) {
    if (r <= 0.0) continue;
    const double t = eval_(r), t1 = d1_(r);
    if (!(t1 > 0.0) || !(t > 0.0)) {
      throw std::invalid_argument("tension law " + name_ + " is not positive and increasing on its window (r = " +
                                  std::to_string(r) + ")");
    }
    b.lambda = std::min({b.lambda, t1, t / r});
    b.c1 = std::max({b.c1, t1, t / r});
    b.c2 = std::max(b.c2, std::abs(d2(r)));
    b.c3 = std::max(b.c3, std::abs(d3(r)));
  }
  bounds_ = b;
}

TensionLaw TensionLaw::hookean(double k0) {
  if (!(k0 > 0.0)) throw std::invalid_argument("hookean k0 must be positive");
  return TensionLaw(
      "hookean", [k0](double r) { return k0 * r; }, [k0](double) { return k0; },
      [](double) { return 0.0; }, [](double) { return 0.0; }, Window{}, true, true);
}

TensionLaw TensionLaw::power(double coefficient, double exponent, Window window) {
  if (!(coefficient > 0.0) || !(exponent > 0.0)) {
    throw std::invalid_argument("power law needs positive coefficient and exponent");
  }
  const double c = coefficient, p = exponent;
  const bool linear = p == 1.0;
  return TensionLaw(
      "power", [c, p](double r) { return c * std::pow(r, p); },
      [c, p](double r) { return c * p * std::pow(r, p - 1.0); },
      [c, p](double r) { return c * p * (p - 1.0) * std::pow(r, p - 2.0); },
      [c, p](double r) { return c * p * (p - 1.0) * (p - 2.0) * std::pow(r, p - 3.0); },
      linear ? Window{} : window, linear, true);
}

TensionLaw TensionLaw::arctan(Window window) {
  return TensionLaw(
      "arctan", [](double r) { return std::atan(r); }, [](double r) { return 1.0 / (1.0 + r * r); },
      [](double r) { return -2.0 * r / ((1.0 + r * r) * (1.0 + r * r)); },
      [](double r) {
        const double q = 1.0 + r * r;
        return (6.0 * r * r - 2.0) / (q * q * q);
      },
      window, false, true);
}

TensionLaw TensionLaw::table(std::vector<double> r, std::vector<double> t) {
  if (r.size() != t.size() || r.size() < 2) throw std::invalid_argument("tension table needs >= 2 pairs");
  for (std::size_t i = 1; i < r.size(); ++i) {
    if (!(r[i] > r[i - 1]) || !(t[i] > t[i - 1])) {
      throw std::invalid_argument("tension table must be strictly increasing in r and T");
    }
  }
  if (!(r.front() > 0.0) || !(t.front() > 0.0)) throw std::invalid_argument("tension table must be positive");

  // Fritsch-Carlson monotone slopes.
  const std::size_t n = r.size();
  std::vector<double> secant(n - 1), slope(n);
  for (std::size_t i = 0; i + 1 < n; ++i) secant[i] = (t[i + 1] - t[i]) / (r[i + 1] - r[i]);
  slope[0] = secant[0];
  slope[n - 1] = secant[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double w1 = 2 * (r[i + 1] - r[i]) + (r[i] - r[i - 1]);
    const double w2 = (r[i + 1] - r[i]) + 2 * (r[i] - r[i - 1]);
    slope[i] = (w1 + w2) / (w1 / secant[i - 1] + w2 / secant[i]);
  }

  struct Data {
    std::vector<double> r, t, m;
    // Hermite basis on the interval containing x; returns (value, d1, d2, d3).
    std::array<double, 4> eval(double x) const {
      if (x <= r.front()) return {t.front() + m.front() * (x - r.front()), m.front(), 0.0, 0.0};
      if (x >= r.back()) return {t.back() + m.back() * (x - r.back()), m.back(), 0.0, 0.0};
      const auto it = std::upper_bound(r.begin(), r.end(), x);
      const std::size_t i = static_cast<std::size_t>(it - r.begin()) - 1;
      const double h = r[i + 1] - r[i], s = (x - r[i]) / h;
      const double y0 = t[i], y1 = t[i + 1], m0 = m[i] * h, m1 = m[i + 1] * h;
      // Cubic in s: a + b s + c s^2 + d s^3.
      const double a = y0, b = m0, c = 3 * (y1 - y0) - 2 * m0 - m1, d = 2 * (y0 - y1) + m0 + m1;
      return {a + s * (b + s * (c + s * d)), (b + s * (2 * c + 3 * s * d)) / h, (2 * c + 6 * s * d) / (h * h),
              6 * d / (h * h * h)};
    }
  };
  auto data = std::make_shared<Data>(Data{std::move(r), std::move(t), std::move(slope)});
  const Window w{data->r.front(), data->r.back()};
  return TensionLaw(
      "table", [data](double x) { return data->eval(x)[0]; }, [data](double x) { return data->eval(x)[1]; },
      [data](double x) { return data->eval(x)[2]; }, [data](double x) { return data->eval(x)[3]; }, w, false,
      false);
}

TensionLaw TensionLaw::custom(std::string name, Fn eval, Fn d1, Fn d2, Fn d3, Window window, bool global) {
  const bool zero = global;
  return TensionLaw(std::move(name), std::move(eval), std::move(d1), std::move(d2), std::move(d3), window, global,
                    zero);
}

Vec2 tension_map(const TensionLaw& law, Vec2 z) {
  const double r = norm(z);
  if (r == 0.0) {
    if (law.vanishes_at_zero()) return {};
    throw std::invalid_argument("tension map at z = 0 for a law without T(0) = 0");
  }
  return (law(r) / r) * z;
}

Mat2 tension_jacobian(const TensionLaw& law, Vec2 z) {
  const double r = norm(z);
  if (r == 0.0) throw std::invalid_argument("tension jacobian at z = 0");
  const Vec2 zhat = z / r;
  return law.d1(r) * outer(zhat, zhat) + (law(r) / r) * outer(perp(zhat), perp(zhat));
}

TensionLaw globalize(const TensionLaw& law, double a, double b) {
  if (!(a > 0.0 && b > a)) throw std::invalid_argument("globalize needs 0 < a < b");
  // Monotonicity and positivity on [a, b].
  constexpr int kChecks = 2000;
  double prev = law(a);
  for (int i = 0; i <= kChecks; ++i) {
    const double r = a + (b - a) * i / kChecks;
    const double t = law(r), t1 = law.d1(r);
    if (!(t > 0.0) || !(t1 > 0.0) || (i > 0 && !(t > prev))) {
      throw std::invalid_argument("globalize: law is not positive and increasing on [a, b]");
    }
    prev = t;
  }
  const double ta = law(a), sa = law.d1(a), tb = law(b), sb = law.d1(b);
  const double s0 = (4.0 * ta - a * sa) / (3.0 * a);
  if (!(s0 > 0.0)) throw std::invalid_argument("globalize: no positive C^1 blend below a (4T(a) <= a T'(a))");

  const auto inner = std::make_shared<TensionLaw>(law);
  const double half = 0.5 * a;
  auto eval = [=](double r) {
    if (r <= half) return s0 * r;
    if (r < a) {
      const double u = r - half;
      return s0 * r + (sa - s0) * u * u / a;
    }
    if (r <= b) return (*inner)(r);
    return tb + sb * (r - b);
  };
  auto d1 = [=](double r) {
    if (r <= half) return s0;
    if (r < a) return s0 + 2.0 * (sa - s0) * (r - half) / a;
    if (r <= b) return inner->d1(r);
    return sb;
  };
  auto d2 = [=](double r) {
    if (r <= half) return 0.0;
    if (r < a) return 2.0 * (sa - s0) / a;
    if (r <= b) return inner->d2(r);
    return 0.0;
  };
  auto d3 = [=](double r) {
    if (r > a && r <= b) return inner->d3(r);
    return 0.0;
  };
  auto out = TensionLaw::custom(law.name() + "+global", eval, d1, d2, d3, Window{0.0, 4.0 * b}, true);
  return out;
}

}  // namespace peskin
