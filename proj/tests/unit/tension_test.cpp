#include <gtest/gtest.h>

#include <cmath>

#include "peskin/tension.hpp"

using namespace peskin;

namespace {

Mat2 fd_jacobian(const TensionLaw& law, Vec2 z, double h = 1e-6) {
  const Vec2 cx = (tension_map(law, z + Vec2{h, 0}) - tension_map(law, z - Vec2{h, 0})) / (2 * h);
  const Vec2 cy = (tension_map(law, z + Vec2{0, h}) - tension_map(law, z - Vec2{0, h})) / (2 * h);
  return {cx.x, cy.x, cx.y, cy.y};
}

}  // namespace

TEST(TensionMap, Hookean) {
  const Vec2 t = tension_map(TensionLaw::hookean(2.0), {3.0, 4.0});
  EXPECT_NEAR(t.x, 6.0, 1e-14);
  EXPECT_NEAR(t.y, 8.0, 1e-14);
}

TEST(TensionMap, Quadratic) {
  const Vec2 t = tension_map(TensionLaw::power(1.0, 2.0), {3.0, 4.0});
  EXPECT_NEAR(t.x, 15.0, 1e-13);
  EXPECT_NEAR(t.y, 20.0, 1e-13);
}

TEST(TensionMap, Arctan) {
  const Vec2 t = tension_map(TensionLaw::arctan(), {1.0, 0.0});
  EXPECT_NEAR(t.x, kPi / 4, 1e-15);
  EXPECT_EQ(t.y, 0.0);
}

TEST(TensionMap, ZeroArgument) {
  EXPECT_EQ(tension_map(TensionLaw::hookean(1.0), {}), Vec2{});
  EXPECT_THROW(tension_map(TensionLaw::table({1, 2}, {1, 3}), {}), std::invalid_argument);
  EXPECT_THROW(tension_jacobian(TensionLaw::hookean(1.0), {}), std::invalid_argument);
}

TEST(TensionJacobian, HookeanIsScalar) {
  const Mat2 j = tension_jacobian(TensionLaw::hookean(3.0), {0.3, -1.7});
  EXPECT_LT(max_abs(j - 3.0 * Mat2::identity()), 1e-14);
}

TEST(TensionJacobian, QuadraticMatchesFiniteDifferences) {
  const TensionLaw law = TensionLaw::power(1.0, 2.0);
  EXPECT_LT(max_abs(tension_jacobian(law, {1.0, 0.0}) - Mat2::diag(2.0, 1.0)), 1e-14);
  EXPECT_LT(max_abs(tension_jacobian(law, {0.0, 2.0}) - Mat2::diag(2.0, 4.0)), 1e-14);
  for (Vec2 z : {Vec2{1.0, 0.0}, Vec2{0.0, 2.0}, Vec2{0.7, -1.1}}) {
    EXPECT_LT(max_abs(tension_jacobian(law, z) - fd_jacobian(law, z)), 1e-8);
  }
}

TEST(TensionJacobian, ArctanAndTableMatchFiniteDifferences) {
  const TensionLaw table = TensionLaw::table({0.5, 1.0, 2.0, 3.0}, {0.4, 1.0, 1.5, 1.7});
  for (const TensionLaw* law : {&table}) {
    for (Vec2 z : {Vec2{0.6, 0.3}, Vec2{-1.2, 1.5}}) EXPECT_LT(max_abs(tension_jacobian(*law, z) - fd_jacobian(*law, z)), 1e-6);
  }
  const TensionLaw at = TensionLaw::arctan();
  EXPECT_LT(max_abs(tension_jacobian(at, {0.4, 0.9}) - fd_jacobian(at, {0.4, 0.9})), 1e-8);
}

TEST(TensionLaw, HookeanConstants) {
  const TensionLaw law = TensionLaw::hookean(2.0);
  EXPECT_TRUE(law.is_global());
  EXPECT_DOUBLE_EQ(law.lambda(), 2.0);
  EXPECT_DOUBLE_EQ(law.c1().value(), 2.0);
  EXPECT_DOUBLE_EQ(law.c2().value(), 0.0);
}

TEST(TensionLaw, WindowedLawsAreNotGlobal) {
  const TensionLaw law = TensionLaw::power(1.0, 2.0, {0.5, 2.0});
  EXPECT_FALSE(law.is_global());
  EXPECT_FALSE(law.c1().has_value());
  EXPECT_NEAR(law.lambda(), 0.5, 1e-12);  // T/r = r at the left end
  EXPECT_NEAR(law.sampled_bounds().c1, 4.0, 1e-12);
}

TEST(TensionLaw, RejectsDecreasingLaws) {
  EXPECT_THROW(TensionLaw::custom("bad", [](double r) { return 1.0 / r; }, [](double r) { return -1.0 / (r * r); },
                                  nullptr, nullptr, {0.5, 2.0}),
               std::invalid_argument);
  EXPECT_THROW(TensionLaw::table({1.0, 2.0}, {2.0, 1.0}), std::invalid_argument);
}

TEST(TensionLaw, FiniteDifferenceFallback) {
  const TensionLaw law = TensionLaw::custom("cubic", [](double r) { return r * r * r; }, [](double r) { return 3 * r * r; },
                                            nullptr, nullptr, {0.5, 2.0});
  EXPECT_NEAR(law.d2(1.0), 6.0, 1e-6);
  EXPECT_NEAR(law.d3(1.0), 6.0, 1e-4);
}

TEST(TensionLaw, TableIsMonotoneInterpolant) {
  const TensionLaw law = TensionLaw::table({0.5, 1.0, 2.0, 3.0}, {0.4, 1.0, 1.5, 1.7});
  EXPECT_NEAR(law(1.0), 1.0, 1e-14);
  EXPECT_NEAR(law(2.0), 1.5, 1e-14);
  for (double r = 0.5; r < 3.0; r += 0.01) EXPECT_GT(law.d1(r), 0.0);
  EXPECT_NEAR(law(4.0), 1.7 + law.d1(3.0), 1e-12);  // linear extrapolation
}

TEST(Globalize, HookeanIsUnchanged) {
  const TensionLaw law = globalize(TensionLaw::hookean(1.5), 0.5, 2.0);
  for (double r : {0.1, 0.3, 0.7, 1.4, 5.0}) EXPECT_NEAR(law(r), 1.5 * r, 1e-13);
  EXPECT_TRUE(law.is_global());
}

TEST(Globalize, QuadraticOnOneTwo) {
  const TensionLaw base = TensionLaw::power(1.0, 2.0, {1.0, 2.0});
  const TensionLaw law = globalize(base, 1.0, 2.0);
  // Tangent line at b = 2: T(2) + T'(2)(r - 2) = 4 + 4 (r - 2).
  EXPECT_NEAR(law.d1(3.0), 4.0, 1e-12);
  EXPECT_NEAR(law(3.0), 8.0, 1e-12);
  EXPECT_NEAR(law(1.5), 2.25, 1e-12);
  // C^1 at the joins.
  for (double r : {0.5, 1.0, 2.0}) {
    EXPECT_NEAR(law(r - 1e-9), law(r + 1e-9), 1e-7);
    EXPECT_NEAR(law.d1(r - 1e-7), law.d1(r + 1e-7), 1e-5);
  }
  EXPECT_EQ(law(0.0), 0.0);
  EXPECT_GT(law.lambda(), 0.0);
  EXPECT_TRUE(law.is_global());
  double floor = 1e300;
  for (double r = 1e-3; r < 8.0; r += 1e-3) floor = std::min({floor, law.d1(r), law(r) / r});
  EXPECT_NEAR(law.lambda(), floor, 1e-3);
}
