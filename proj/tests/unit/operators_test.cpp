#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "peskin/operators.hpp"
#include "support.hpp"

using namespace peskin;
using peskin::testing::mode;

namespace {

// High-precision values of (k Si(k pi) - (1 - (-1)^k) / pi) / (2 pi).
constexpr double kTilde1 = 0.19342375247570404;
constexpr double kTilde2 = 0.4514116667901403134;
constexpr double kTilde3 = 0.69831867278507020238;
constexpr double kTilde4 = 0.94993933976731015465;
constexpr double kTilde16 = 3.9493793214257676597;
constexpr double kTilde64 = 15.949341913778724895;

double eigenvalue(const Curve& image, int k) { return image.coeff_x(k).real(); }

Curve cosine_mode(int n, int k) {
  return Curve::from_function(n, [k](double t) { return Vec2{std::cos(k * t), 0.0}; });
}

}  // namespace

TEST(LambdaFourier, Multiplier) {
  const Curve f = mode(64, 3);
  EXPECT_LT(peskin::testing::max_node_error(lambda_fourier(f, 1.0), 3.0 * f), 1e-13);
  const Curve c = Curve::from_function(32, [](double) { return Vec2{2, -1}; });
  EXPECT_LT(l2_norm(lambda_fourier(c, 0.5)), 1e-14);
}

TEST(LambdaSine, MatchesMultiplier) {
  EXPECT_NEAR(eigenvalue(lambda_sine(cosine_mode(64, 1)), 1) / 0.5, 1.0, 1e-8);
  EXPECT_NEAR(eigenvalue(lambda_sine(cosine_mode(64, 4)), 4) / 0.5, 4.0, 1e-7);
  const Curve c = Curve::from_function(32, [](double) { return Vec2{1, 1}; });
  EXPECT_LT(l2_norm(lambda_sine(c)), 1e-13);
}

TEST(LambdaTilde, ExactEigenvalues) {
  EXPECT_NEAR(OperatorSymbol::tilde_exact(0), 0.0, 0.0);
  EXPECT_NEAR(OperatorSymbol::tilde_exact(1), kTilde1, 1e-15);
  EXPECT_NEAR(OperatorSymbol::tilde_exact(2), kTilde2, 1e-15);
  EXPECT_NEAR(OperatorSymbol::tilde_exact(3), kTilde3, 1e-15);
  EXPECT_NEAR(OperatorSymbol::tilde_exact(4), kTilde4, 1e-15);
  EXPECT_NEAR(OperatorSymbol::tilde_exact(16), kTilde16, 1e-14);
  EXPECT_NEAR(OperatorSymbol::tilde_exact(64), kTilde64, 1e-13);
  EXPECT_NEAR(OperatorSymbol::tilde_exact(-3), kTilde3, 1e-15);
  EXPECT_NEAR(kTilde1, 0.19345, 1e-4);
}

TEST(LambdaTilde, QuadratureMatchesSymbol) {
  const OperatorSymbol sym(64);
  for (int k : {1, 2, 5, 17, 31}) {
    EXPECT_NEAR(sym.tilde(k), OperatorSymbol::tilde_exact(k), 1e-15);
    EXPECT_NEAR(eigenvalue(lambda_tilde(cosine_mode(64, k)), k) / 0.5, sym.tilde_quadrature(k), 1e-12);
    EXPECT_NEAR(sym.tilde_quadrature(k), sym.tilde(k), 2e-3 * sym.tilde(k));
  }
}

TEST(LambdaTilde, ComparableToLambda) {
  for (int k = 1; k <= 512; ++k) {
    const double r = OperatorSymbol::tilde_exact(k) / k;
    EXPECT_GT(r, 0.19);
    EXPECT_LT(r, 0.25);
  }
}

TEST(LambdaTilde, SpectralAndQuadratureAgree) {
  const Curve f = peskin::testing::random_field(128, 20, 4);
  const OperatorSymbol sym(128);
  EXPECT_LT(peskin::testing::max_node_error(lambda_tilde(f), lambda_tilde_spectral(f, sym)), 1e-3);
  EXPECT_LT(l2_norm(lambda_tilde_spectral(Curve::from_function(16, [](double) { return Vec2{3, 4}; }), OperatorSymbol(16))),
            1e-15);
}

TEST(HalfLambdaNorm, MatchesSpectralPairing) {
  const Curve f = peskin::testing::random_field(128, 12, 8);
  const double quad = half_lambda_norm(f);
  const double spectral = std::sqrt(l2_inner(f, lambda_tilde_spectral(f, OperatorSymbol(128))));
  EXPECT_NEAR(quad, spectral, 1e-3 * spectral);
  EXPECT_EQ(half_lambda_norm(Curve::from_nodes(std::vector<Vec2>(32))), 0.0);
}

TEST(LittlewoodPaley, CutoffAndBlocks) {
  EXPECT_EQ(LPFamily::phi(0.0), 1.0);
  EXPECT_EQ(LPFamily::phi(1.5), 1.0);
  EXPECT_EQ(LPFamily::phi(8.0 / 3.0), 0.0);
  EXPECT_GT(LPFamily::phi(2.0), 0.0);
  EXPECT_LT(LPFamily::phi(2.0), 1.0);
  for (int j = 0; j < 6; ++j) {
    for (double k : {1.0, 3.0, 7.0, 20.0}) {
      EXPECT_DOUBLE_EQ(LPFamily::block_value(j, k), LPFamily::phi(k / std::ldexp(1.0, j)) - LPFamily::phi(k / std::ldexp(1.0, j - 1)));
    }
  }
  const LPFamily fam(256);
  for (int k = 1; k <= 128; ++k) {
    double sum = 0.0;
    for (int j = fam.j_min(); j <= fam.j_max(); ++j) sum += fam.block(j, k);
    EXPECT_NEAR(sum, 1.0, 1e-14) << "k = " << k;
  }
}

TEST(LittlewoodPaley, ReconstructsField) {
  const Curve f = peskin::testing::random_field(256, 100, 2, 0.5);
  const LPFamily fam(256);
  Curve sum = Curve::from_nodes(std::vector<Vec2>(256));
  for (int j = fam.j_min(); j <= fam.j_max(); ++j) sum = sum + lp_project(f, fam, j);
  EXPECT_LT(peskin::testing::max_node_error(sum, f), 1e-12);
  EXPECT_LT(l2_norm(lp_project(Curve::from_nodes(std::vector<Vec2>(256)), fam, 3)), 1e-300);
}

TEST(PeriodizedKernel, ReproducesPowerSymbol) {
  for (double s : {0.25, 0.5, 0.75}) {
    for (int k : {1, 3, 8}) EXPECT_NEAR(periodized_lambda_s_eigenvalue(k, s), std::pow(k, s), 1e-3 * std::pow(k, s));
  }
}

TEST(Bernstein, RatiosInsideBrackets) {
  const LPFamily fam(256);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Curve f = peskin::testing::random_field(256, 120, seed, 0.5);
    for (double m : {0.5, 1.0}) {
      for (double p : {2.0, std::numeric_limits<double>::infinity()}) {
        const BernsteinBracket b = bernstein_bracket(m, p);
        for (int j = std::max(0, fam.j_min()); j <= fam.j_max(); ++j) {
          const double r = bernstein_ratio(f, fam, j, m, p);
          if (r == 0.0) continue;
          EXPECT_GE(r, b.lower);
          EXPECT_LE(r, b.upper);
        }
      }
    }
  }
}
