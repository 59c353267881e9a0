#include <gtest/gtest.h>

#include <cmath>

#include "peskin/diagnostics.hpp"
#include "peskin/evolution.hpp"
#include "support.hpp"

using namespace peskin;
using peskin::testing::max_node_error;

namespace {

double rel_l2(const Curve& a, const Curve& b) { return l2_norm(a - b) / std::max(1e-300, l2_norm(b)); }

Curve run(const Curve& x0, const TensionLaw& law, double dt, int steps, StepScheme scheme) {
  SimState s = SimState::make(x0, law, 0, 0.0);
  for (int k = 0; k < steps; ++k) s = step(s, dt, scheme);
  return s.curve;
}

}  // namespace

TEST(Rhs, CircleIsEquilibrium) {
  const Curve circle = circle_curve(128);
  const RhsOptions opt{512, 0.0, 0.0};
  for (const TensionLaw& law : {TensionLaw::hookean(1.0), TensionLaw::power(1.0, 2.0), TensionLaw::arctan()}) {
    EXPECT_LE(l2_norm(rhs_position_bi(circle, law, opt)), 1e-6) << law.name();
    EXPECT_LE(l2_norm(rhs_position_reduced(circle, law, opt)), 1e-6) << law.name();
    EXPECT_LE(l2_norm(rhs_derivative(circle, law, opt)), 1e-6) << law.name();
  }
}

TEST(Rhs, FormulationsAgree) {
  const Curve x = random_band_limited_curve(64, 6, 5);
  const TensionLaw law = TensionLaw::power(1.0, 2.0);
  const RhsOptions opt{256, 0.0, 0.0};
  const Curve reduced = rhs_position_reduced(x, law, opt);
  EXPECT_LE(rel_l2(rhs_position_bi(x, law, opt), reduced), 1e-6);
  EXPECT_LE(rel_l2(rhs_derivative(x, law, opt), derivative(reduced)), 1e-6);
}

TEST(Rhs, SplitIdentity) {
  const Curve x = random_band_limited_curve(64, 6, 7);
  const SplitEvaluation s = evaluate_split(x, TensionLaw::hookean(1.0), {256, 0.0, 0.0});
  EXPECT_LE(max_node_error(s.derivative, s.remainder - s.lambda_tension), 1e-10 * l2_norm(s.derivative));
  EXPECT_LE(max_node_error(remainder_V(x, TensionLaw::hookean(1.0), {256, 0.0, 0.0}), s.remainder), 1e-14);
}

TEST(Rhs, RigidMotionEquivariance) {
  const Curve x = random_band_limited_curve(64, 6, 9);
  const TensionLaw law = TensionLaw::arctan();
  const RhsOptions opt{256, 0.0, 0.0};
  const Curve base = rhs_position_reduced(x, law, opt);
  EXPECT_LE(max_node_error(rhs_position_reduced(translate(x, {3.0, -1.0}), law, opt), base), 1e-10);
  EXPECT_LE(max_node_error(rhs_position_reduced(rotate(x, 0.7), law, opt), rotate(base, 0.7)), 1e-10);
}

TEST(Rhs, HookeanIsHomogeneous) {
  const Curve x = random_band_limited_curve(64, 6, 13);
  const TensionLaw law = TensionLaw::hookean(1.0);
  const RhsOptions opt{256, 0.0, 0.0};
  EXPECT_LE(rel_l2(rhs_position_reduced(scale(x, 2.0), law, opt), scale(rhs_position_reduced(x, law, opt), 2.0)), 1e-12);
}

TEST(Rhs, RejectsBadGrids) {
  EXPECT_THROW(rhs_position_reduced(circle_curve(8), TensionLaw::hookean(1.0)), std::invalid_argument);
}

TEST(Rhs, ArcChordFloorAborts) {
  const Curve x = ellipse_curve(64, 2.0, 1.0);
  EXPECT_THROW(rhs_position_reduced(x, TensionLaw::hookean(1.0), {0, 10.0, 0.25}), NumericalAbort);
  try {
    rhs_derivative(x, TensionLaw::hookean(1.0), {0, 10.0, 0.25});
  } catch (const NumericalAbort& e) {
    EXPECT_EQ(e.time(), 0.25);
  }
}

TEST(Step, CircleStaysPut) {
  SimState s = SimState::make(circle_curve(64), TensionLaw::power(1.0, 2.0));
  for (StepScheme scheme : {StepScheme::Rk4, StepScheme::Imex}) {
    const SimState next = step(s, 0.01, scheme);
    EXPECT_LE(max_node_error(next.curve, s.curve), 1e-8) << to_string(scheme);
    EXPECT_NEAR(next.t, 0.01, 1e-17);
  }
}

TEST(Step, Rk4IsFourthOrder) {
  const Curve x0 = perturbed_circle(64, 0.05, 3);
  const TensionLaw law = TensionLaw::hookean(1.0);
  const Curve ref = run(x0, law, 0.025, 80, StepScheme::Rk4);
  const double e1 = l2_norm(run(x0, law, 0.2, 10, StepScheme::Rk4) - ref);
  const double e2 = l2_norm(run(x0, law, 0.1, 20, StepScheme::Rk4) - ref);
  EXPECT_GT(e1 / e2, 12.0);
  EXPECT_LT(e1 / e2, 20.0);
}

TEST(Step, ImexIsFirstOrder) {
  const Curve x0 = perturbed_circle(64, 0.05, 3);
  const TensionLaw law = TensionLaw::hookean(1.0);
  const Curve ref = run(x0, law, 0.01, 50, StepScheme::Rk4);
  const double e1 = l2_norm(run(x0, law, 0.05, 10, StepScheme::Imex) - ref);
  const double e2 = l2_norm(run(x0, law, 0.025, 20, StepScheme::Imex) - ref);
  EXPECT_NEAR(e1 / e2, 2.0, 0.3);
}

TEST(Step, Rk4RejectsUnstableStep) {
  const SimState s = SimState::make(perturbed_circle(64, 0.05, 3), TensionLaw::hookean(1.0));
  EXPECT_THROW(step(s, 1.1 * rk4_dt_limit(s), StepScheme::Rk4), std::invalid_argument);
  EXPECT_THROW(step(s, 0.0, StepScheme::Imex), std::invalid_argument);
}

TEST(Step, ImexStableFarBeyondRk4Limit) {
  SimState s = SimState::make(perturbed_circle(64, 0.05, 3), TensionLaw::hookean(1.0));
  const double dt = 50.0 * rk4_dt_limit(s);
  const double d0 = circle_distance(s.deriv);
  for (int k = 0; k < 200; ++k) s = step(s, dt, StepScheme::Imex);
  EXPECT_TRUE(std::isfinite(l2_norm(s.curve)));
  EXPECT_LT(circle_distance(s.deriv), d0);
}

TEST(Step, StiffnessCoefficient) {
  EXPECT_NEAR(stiffness_coefficient(SimState::make(circle_curve(32), TensionLaw::hookean(2.0))), 2.0, 1e-14);
  EXPECT_NEAR(stiffness_coefficient(SimState::make(circle_curve(32, 1.5), TensionLaw::power(1.0, 2.0))), 3.0, 1e-12);
}

TEST(InitialCurves, Shapes) {
  const Curve p = perturbed_circle(64, 0.1, 3);
  for (int j = 0; j < 64; ++j) {
    const double t = p.theta(j);
    EXPECT_NEAR(norm(p[j]), 1.0 + 0.1 * std::cos(3 * t), 1e-14);
  }
  const Curve e = ellipse_curve(32, 2.0, 1.0);
  EXPECT_NEAR(e[0].x, -2.0, 1e-15);
  EXPECT_EQ(l2_norm(rough_curve(64, 1.4, 0.05, 3) - rough_curve(64, 1.4, 0.05, 3)), 0.0);
  EXPECT_GT(l2_norm(rough_curve(64, 1.4, 0.05, 3) - rough_curve(64, 1.4, 0.05, 4)), 0.0);
  InitSpec spec;
  spec.kind = "nonsense";
  EXPECT_THROW(make_initial_curve(spec, 32, 1), std::invalid_argument);
}

TEST(Simulate, RecordsAndDeterminism) {
  SimConfig cfg;
  cfg.n = 32;
  cfg.dt = 0.01;
  cfg.horizon = 0.105;
  cfg.output_stride = 4;
  cfg.init.kind = "perturbed-circle";
  const Trajectory a = simulate(cfg);
  const Trajectory b = simulate(cfg);
  ASSERT_EQ(a.records.size(), 4u);  // steps 0, 4, 8 and the final step 11
  EXPECT_EQ(a.records.back().step, 11);
  EXPECT_NEAR(a.records.back().t, 0.105, 1e-14);
  EXPECT_EQ(a.records.back().scheme, "imex");
  ASSERT_EQ(a.states.size(), b.states.size());
  for (std::size_t i = 0; i < a.states.size(); ++i) EXPECT_EQ(l2_norm(a.states[i].curve - b.states[i].curve), 0.0);
  EXPECT_EQ(a.until(0.05).records.size(), 2u);
  EXPECT_EQ(a.times().size(), 4u);
  for (const auto& r : a.records) {
    EXPECT_GT(r.arc_chord, 0.0);
    EXPECT_LE(r.h_half, std::sqrt(r.l2 * r.h1) * (1 + 1e-12));
  }
}

TEST(Simulate, ObserverAndFloor) {
  SimConfig cfg;
  cfg.n = 32;
  cfg.horizon = 0.01;
  int calls = 0;
  simulate(cfg, [&](const SimState&, const DiagnosticsRecord&) { ++calls; });
  EXPECT_EQ(calls, 2);
  cfg.rho_floor = 5.0;
  EXPECT_THROW(simulate(cfg), NumericalAbort);
}
