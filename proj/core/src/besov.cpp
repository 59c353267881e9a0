#include "peskin/besov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include <boost/math/quadrature/gauss.hpp>

namespace peskin {
namespace {

// (k, |c_k|^2) with the Nyquist mode split evenly between +-N/2.
std::vector<std::pair<int, double>> power_spectrum(const Curve& f) {
  const int n = f.size();
  const auto c = f.coefficients();
  std::vector<std::pair<int, double>> out;
  out.reserve(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i < n; ++i) {
    const int k = 2 * i < n ? i : i - n;
    const double e = std::norm(c[i]);
    if (2 * k == -n) {
      out.emplace_back(k, 0.25 * e);
      out.emplace_back(-k, 0.25 * e);
    } else {
      out.emplace_back(k, e);
    }
  }
  return out;
}

struct Node {
  double beta;
  double weight;
};

// Nodes on (0, pi] for int_0^pi g(beta) d beta with g ~ beta^(r(1-s)-1) at 0:
// beta = pi u^q flattens the endpoint behaviour, then composite Gauss-Legendre
// in u.
std::vector<Node> beta_rule(double s, double r, int panels) {
  if (panels < 1) throw std::invalid_argument("beta quadrature needs at least one panel");
  const double decay = std::isinf(r) ? 1.0 : r * (1.0 - s);
  const double q = std::max(1.0, 1.0 / decay);
  using rule = boost::math::quadrature::gauss<double, 16>;
  const auto& x = rule::abscissa();
  const auto& w = rule::weights();
  std::vector<Node> nodes;
  nodes.reserve(static_cast<std::size_t>(panels) * 16);
  const double h = 1.0 / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = (p + 0.5) * h;
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (double sign : {-1.0, 1.0}) {
        if (x[i] == 0.0 && sign < 0) continue;
        const double u = mid + sign * 0.5 * h * x[i];
        const double beta = kPi * std::pow(u, q);
        const double jac = kPi * q * std::pow(u, q - 1.0);
        nodes.push_back({beta, 0.5 * h * w[i] * jac});
      }
    }
  }
  return nodes;
}

double weight_at(const BesovParams& params, double beta) { return params.mu ? (*params.mu)(1.0 / beta) : 1.0; }

double difference_lp(const Curve& f, double beta, double p) {
  if (p == 2.0) return difference_l2(f, beta);
  const Curve shifted = shift(f, beta);
  std::vector<Vec2> d(static_cast<std::size_t>(f.size()));
  for (int j = 0; j < f.size(); ++j) d[j] = shifted[j] - f[j];
  return lp_norm(d, p);
}

void require_params(const BesovParams& params) {
  if (!(params.s > 0.0 && params.s < 1.0)) {
    throw std::invalid_argument("difference Besov norm needs s in (0, 1)");
  }
  if (!(params.p >= 1.0) || !(params.r >= 1.0) || !(params.q >= 1.0)) {
    throw std::invalid_argument("Besov exponents must lie in [1, inf]");
  }
}

}  // namespace

MuWeight::MuWeight(std::vector<double> table, double c0) : table_(std::move(table)), c0_(c0) {
  if (table_.empty()) throw std::invalid_argument("mu table is empty");
}

MuWeight MuWeight::one(int j_max) { return MuWeight(std::vector<double>(static_cast<std::size_t>(j_max + 1), 1.0)); }

MuWeight MuWeight::log(int j_max) {
  std::vector<double> t(static_cast<std::size_t>(j_max + 1));
  for (int j = 0; j <= j_max; ++j) t[j] = std::log(4.0 + std::ldexp(1.0, j));
  return MuWeight(std::move(t));
}

double MuWeight::at_dyadic(int j) const {
  if (j <= 0) return table_.front();
  if (j >= j_max()) return table_.back();
  return table_[static_cast<std::size_t>(j)];
}

double MuWeight::operator()(double r) const {
  if (!(r > 1.0)) return table_.front();
  const double x = std::log2(r);
  if (x >= j_max()) return table_.back();
  const int j = static_cast<int>(std::floor(x));
  const double t = x - j;
  return (1.0 - t) * table_[j] + t * table_[j + 1];
}

MuCheck check_mu_admissible(const MuWeight& mu, double c0) {
  MuCheck c;
  const auto t = mu.table();
  constexpr double tol = 1e-12;
  for (std::size_t j = 0; j < t.size(); ++j) {
    if (t[j] < 1.0 - tol) c.at_least_one = false;
    if (j == 0) continue;
    if (t[j] < t[j - 1] * (1.0 - tol)) c.nondecreasing = false;
    const double ratio = t[j] / t[j - 1];
    c.max_doubling_ratio = std::max(c.max_doubling_ratio, ratio);
    const double l0 = std::log(4.0 + std::ldexp(1.0, static_cast<int>(j) - 1));
    const double l1 = std::log(4.0 + std::ldexp(1.0, static_cast<int>(j)));
    if (t[j] / l1 > t[j - 1] / l0 * (1.0 + tol)) c.log_ratio_nonincreasing = false;
  }
  // The interpolated function between dyadics.
  const double top = std::ldexp(1.0, mu.j_max() - 1);
  for (int i = 0; i <= 4000; ++i) {
    const double r = std::pow(top, i / 4000.0);
    c.max_doubling_ratio = std::max(c.max_doubling_ratio, mu(2.0 * r) / mu(r));
  }
  c.doubling = c.max_doubling_ratio <= c0 * (1.0 + tol);
  return c;
}

double difference_l2(const Curve& f, double beta) {
  double s = 0.0;
  for (const auto& [k, e] : power_spectrum(f)) {
    const double h = std::sin(0.5 * k * beta);
    s += 4.0 * h * h * e;
  }
  return std::sqrt(kTwoPi * s);
}

double sobolev_norm(const Curve& f, double s) {
  double sum = 0.0;
  for (const auto& [k, e] : power_spectrum(f)) {
    if (k != 0) sum += std::pow(std::abs(k), 2.0 * s) * e;
  }
  return std::sqrt(kTwoPi * sum);
}

double besov_diff(const Curve& f, const BesovParams& params, int beta_panels) {
  require_params(params);
  const auto nodes = beta_rule(params.s, params.r, beta_panels);
  if (std::isinf(params.r)) {
    double best = 0.0;
    for (const auto& n : nodes) {
      best = std::max(best, weight_at(params, n.beta) * difference_lp(f, n.beta, params.p) / std::pow(n.beta, params.s));
    }
    return best;
  }
  double sum = 0.0;
  for (const auto& n : nodes) {
    const double v = weight_at(params, n.beta) * difference_lp(f, n.beta, params.p) / std::pow(n.beta, params.s);
    sum += n.weight * std::pow(v, params.r) / n.beta;
  }
  // The integrand is even in beta.
  return std::pow(2.0 * sum, 1.0 / params.r);
}

double besov_lp(const Curve& f, const BesovParams& params, const LPFamily& family) {
  if (!(params.p >= 1.0) || !(params.r >= 1.0)) throw std::invalid_argument("Besov exponents must lie in [1, inf]");
  double acc = 0.0;
  for (int j = family.j_min(); j <= family.j_max(); ++j) {
    const Curve block = lp_project(f, family, j);
    const double norm_j = params.p == 2.0 ? sobolev_norm(block, 0.0) : lp_norm(block.nodes(), params.p);
    const double mu = params.mu ? params.mu->at_dyadic(j) : 1.0;
    const double v = std::pow(2.0, j * params.s) * mu * norm_j;
    acc = std::isinf(params.r) ? std::max(acc, v) : acc + std::pow(v, params.r);
  }
  return std::isinf(params.r) ? acc : std::pow(acc, 1.0 / params.r);
}

double cl_norm(std::span<const Curve> snapshots, double dt, const BesovParams& params, MixedNorm kind,
               int beta_panels) {
  if (snapshots.empty()) throw std::invalid_argument("mixed norm of an empty trajectory");
  if (kind != MixedNorm::B && snapshots.size() > 1 && !(dt > 0.0)) {
    throw std::invalid_argument("mixed norm needs dt > 0");
  }
  require_params(params);
  const auto nodes = beta_rule(params.s, 1.0, beta_panels);

  std::vector<std::vector<std::pair<int, double>>> spectra;
  spectra.reserve(snapshots.size());
  for (const auto& c : snapshots) spectra.push_back(power_spectrum(c));
  std::vector<double> tilde;
  if (kind != MixedNorm::B) {
    const int kmax = snapshots.front().size() / 2;
    tilde.resize(static_cast<std::size_t>(kmax + 1));
    for (int k = 0; k <= kmax; ++k) tilde[k] = kind == MixedNorm::D ? OperatorSymbol::tilde_exact(k) : k;
  }

  double sum = 0.0;
  for (const auto& n : nodes) {
    double value = 0.0;
    if (kind == MixedNorm::B) {
      for (const auto& c : snapshots) value = std::max(value, difference_l2(c, n.beta));
    } else {
      const std::size_t count = spectra.size();
      double time_sum = 0.0;
      for (std::size_t t = 0; t < count; ++t) {
        double e = 0.0;
        for (const auto& [k, p] : spectra[t]) {
          const double h = std::sin(0.5 * k * n.beta);
          e += tilde[static_cast<std::size_t>(std::abs(k))] * 4.0 * h * h * p;
        }
        const double w = (count == 1) ? 0.0 : ((t == 0 || t + 1 == count) ? 0.5 * dt : dt);
        time_sum += w * kTwoPi * e;
      }
      value = std::sqrt(time_sum);
    }
    sum += n.weight * weight_at(params, n.beta) * value / std::pow(n.beta, 1.0 + params.s);
  }
  return 2.0 * sum;
}

MuWeight construct_mu(const Curve& f, int j_max) {
  const LPFamily family(f.size());
  std::vector<double> block_norm(static_cast<std::size_t>(j_max + 2), 0.0);
  for (int j = 0; j <= std::min(j_max, family.j_max()); ++j) {
    block_norm[j] = sobolev_norm(lp_project(f, family, j), 0.0);
  }
  std::vector<double> tail(static_cast<std::size_t>(j_max + 2), 0.0);
  for (int j = j_max; j >= 0; --j) tail[j] = tail[j + 1] + std::pow(2.0, 0.5 * j) * block_norm[j];
  if (!std::isfinite(tail[0])) throw std::invalid_argument("construct_mu: base norm is not finite");

  std::vector<double> mu(static_cast<std::size_t>(j_max + 1));
  auto log_at = [](int j) { return std::log(4.0 + std::ldexp(1.0, j)); };
  for (int j = 0; j <= j_max; ++j) {
    const double cap = log_at(j);
    const double raw = tail[j] > 0.0 ? std::min(cap, 1.0 / std::sqrt(tail[j])) : cap;
    if (j == 0) {
      mu[j] = std::max(1.0, raw);
    } else {
      mu[j] = std::clamp(raw, mu[j - 1], mu[j - 1] * log_at(j) / log_at(j - 1));
    }
  }
  return MuWeight(std::move(mu));
}

MuWeight nu_weight(const MuWeight& mu, double c3, double m) {
  if (!(c3 >= 1.0)) throw std::invalid_argument("nu weight needs C3 >= 1");
  const double scale = c3 * std::max(1.0, m);
  std::vector<double> t(mu.table().begin(), mu.table().end());
  for (auto& v : t) v = 1.0 + v / scale;
  return MuWeight(std::move(t), mu.c0());
}

EmbeddingReport embedding_audit(std::span<const Curve> family) {
  if (family.empty()) throw std::invalid_argument("embedding audit needs at least one field");
  EmbeddingReport rep;
  rep.fields = static_cast<int>(family.size());
  const BesovParams b_half{0.5, 2.0, 1.0, 2.0, std::nullopt};
  const BesovParams b_quarter{0.25, 4.0, 1.0, 2.0, std::nullopt};
  for (const auto& f : family) {
    const double base = besov_diff(f, b_half);
    if (base == 0.0) continue;
    const double linf = lp_norm(f.resample(4 * f.size()), std::numeric_limits<double>::infinity());
    rep.linf = std::max(rep.linf, linf / base);
    rep.besov = std::max(rep.besov, besov_diff(f, b_quarter) / base);
    const double h0 = sobolev_norm(f, 0.0), h1 = sobolev_norm(f, 1.0);
    rep.interpolation = std::max(rep.interpolation, sobolev_norm(f, 0.5) / std::sqrt(h0 * h1));
  }
  rep.ok = rep.linf <= kLinfEmbeddingConstant && rep.besov <= kBesovEmbeddingConstant &&
           rep.interpolation <= 1.0 + 1e-12;
  return rep;
}

}  // namespace peskin
