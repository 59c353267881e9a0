#pragma once

#include <optional>
#include <span>
#include <vector>

#include "peskin/curve.hpp"
#include "peskin/operators.hpp"

namespace peskin {

/// Log-scale weight tabulated at dyadic arguments mu(2^j), j = 0..j_max,
/// evaluated elsewhere by linear interpolation in log2(r). Below r = 1 it is
/// held at mu(1); beyond 2^j_max at the last entry.
class MuWeight {
 public:
  MuWeight() : table_(1, 1.0) {}
  explicit MuWeight(std::vector<double> table, double c0 = 2.0);

  /// mu = 1.
  static MuWeight one(int j_max = 40);
  /// mu(r) = log(4 + r).
  static MuWeight log(int j_max = 40);

  double operator()(double r) const;
  double at_dyadic(int j) const;

  int j_max() const { return static_cast<int>(table_.size()) - 1; }
  double c0() const { return c0_; }
  std::span<const double> table() const { return table_; }

 private:
  std::vector<double> table_;
  double c0_ = 2.0;
};

/// Results of the admissibility predicates on the dyadic table.
struct MuCheck {
  bool at_least_one = true;
  bool nondecreasing = true;
  bool doubling = true;                ///< mu(2r) <= c0 mu(r), table and sampled
  bool log_ratio_nonincreasing = true; ///< mu(r) / log(4 + r)
  double max_doubling_ratio = 0.0;

  bool ok() const { return at_least_one && nondecreasing && doubling && log_ratio_nonincreasing; }
};
MuCheck check_mu_admissible(const MuWeight& mu, double c0 = 2.0);

struct BesovParams {
  double s = 0.5;
  double p = 2.0;
  double r = 1.0;
  double q = 2.0;  ///< time exponent for mixed norms
  std::optional<MuWeight> mu;
};

/// Panels of 16-point Gauss-Legendre in u after beta = pi u^q.
inline constexpr int kDefaultBetaPanels = 48;

/// (int_T (mu(1/|beta|) ||delta_beta f||_p / |beta|^s)^r d beta / |beta|)^(1/r),
/// with the sup over the beta nodes when r = inf. Requires s in (0, 1).
double besov_diff(const Curve& f, const BesovParams& params, int beta_panels = kDefaultBetaPanels);

/// || 2^{js} mu(2^j) ||Delta_j f||_p ||_{l^r} over the active blocks.
double besov_lp(const Curve& f, const BesovParams& params, const LPFamily& family);

/// (2 pi sum |k|^{2s} |f_k|^2)^(1/2).
double sobolev_norm(const Curve& f, double s);

/// ||delta_beta f||_{L^2} from the Fourier coefficients.
double difference_l2(const Curve& f, double beta);

enum class MixedNorm { B, D, DHalf };

/// Chemin-Lerner type norms of a time series on a uniform time grid:
/// B: int d beta / |beta|^(1+s) mu sup_t ||delta_beta f(t)||_2,
/// D: the same with ||Lambda-tilde^(1/2) delta_beta f||_{L^2_t L^2}
/// (trapezoid in t), DHalf: as D with Lambda^(1/2) in place of
/// Lambda-tilde^(1/2). Uses params.s and params.mu; r = 1.
double cl_norm(std::span<const Curve> snapshots, double dt, const BesovParams& params, MixedNorm kind,
               int beta_panels = kDefaultBetaPanels);

/// Admissible weight built from the block tails of f: tail_j = sum_{j' >= j}
/// 2^{j'/2} ||Delta_j' f||_2, raw_j = min(log(4 + 2^j), tail_j^(-1/2)), then one
/// forward sweep clamping mu_{j+1} into [mu_j, mu_j log(4+2^{j+1})/log(4+2^j)]
/// with mu_0 >= 1.
MuWeight construct_mu(const Curve& f, int j_max = 40);

/// nu(r) = 1 + mu(r) / (c3 max(1, m)).
MuWeight nu_weight(const MuWeight& mu, double c3, double m);

/// Frozen constants of the embedding audit. A sweep of 200 mixed random
/// trigonometric polynomials (power-law, low-pass, single-mode, exponential
/// spectra) peaks at 0.083 and 0.573.
inline constexpr double kLinfEmbeddingConstant = 0.15;
inline constexpr double kBesovEmbeddingConstant = 1.0;

/// besov_lp / besov_diff at (1/2, 2, 1) stays inside [1/B, B]; the same sweep
/// gives ratios in [0.084, 0.209].
inline constexpr double kBesovEquivalenceBracket = 16.0;

struct EmbeddingReport {
  int fields = 0;
  double linf = 0.0;           ///< max ||f||_inf / ||f||_{B^{1/2}_{2,1}}
  double besov = 0.0;          ///< max ||f||_{B^{1/4}_{4,1}} / ||f||_{B^{1/2}_{2,1}}
  double interpolation = 0.0;  ///< max ||f||_{H^1/2} / (||f||_2 ||f||_{H^1})^(1/2)
  bool ok = true;
};

/// Both sides of the L^inf embedding, the Besov embedding at s1 = 1/4,
/// (p1, p2) = (2, 4), and the H^(1/2) interpolation inequality.
EmbeddingReport embedding_audit(std::span<const Curve> family);

}  // namespace peskin
