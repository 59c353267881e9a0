#include <gtest/gtest.h>

#include <cmath>

#include "peskin/diagnostics.hpp"
#include "support.hpp"

using namespace peskin;

namespace {

SimConfig small_config(double horizon = 0.2) {
  SimConfig cfg;
  cfg.n = 32;
  cfg.dt = 0.01;
  cfg.horizon = horizon;
  cfg.output_stride = 2;
  return cfg;
}

}  // namespace

TEST(AuditReport, ThresholdsDecidePass) {
  AuditReport r;
  r.record("x", 1.0);
  EXPECT_TRUE(r.passed());
  EXPECT_TRUE(r.require_le("a", 1.0, 1.0));
  EXPECT_TRUE(r.passed());
  EXPECT_FALSE(r.require_ge("b", 0.5, 1.0));
  EXPECT_FALSE(r.passed());
  EXPECT_EQ(r.value("x"), 1.0);
  EXPECT_EQ(r.value("b"), 0.5);
  EXPECT_TRUE(std::isnan(r.value("missing")));
  EXPECT_NE(r.to_json().find("\"pass\":false"), std::string::npos);
}

TEST(CircleDistance, ZeroOnCirclesOnly) {
  EXPECT_LT(circle_distance(derivative(circle_curve(64, 2.0))), 1e-13);
  EXPECT_LT(circle_distance(derivative(rotate(circle_curve(64), 1.0))), 1e-13);
  const Curve p = perturbed_circle(64, 0.1, 3);
  EXPECT_GT(circle_distance(derivative(p)), 0.1);
}

TEST(HolderHalf, UnitCircle) {
  // sup over alpha of 2 sin(alpha/2) / alpha^(1/2), attained where tan(alpha/2) = alpha.
  EXPECT_NEAR(holder_half(derivative(circle_curve(256))), 1.2038, 5e-3);
}

TEST(RandomCurve, DeterministicAndCirclelike) {
  const Curve a = random_band_limited_curve(64, 5, 3);
  EXPECT_EQ(l2_norm(a - random_band_limited_curve(64, 5, 3)), 0.0);
  EXPECT_GT(arc_chord(a).value, 0.3);
}

TEST(Audits, KernelsAndOperators) {
  EXPECT_TRUE(kernel_audit(500, 1).passed());
  EXPECT_TRUE(operator_audit(64).passed());
}

TEST(Audits, Formulations) {
  const AuditReport r = formulation_audit(1, 32, 128, 4, 2);
  EXPECT_TRUE(r.passed()) << r.to_json();
}

TEST(Audits, EquilibriumCircleAndPerturbation) {
  SimConfig cfg = small_config();
  EXPECT_TRUE(equilibrium_audit(circle_curve(32), cfg).passed());
  const AuditReport r = equilibrium_audit(perturbed_circle(32, 0.05, 2), cfg);
  EXPECT_TRUE(r.passed()) << r.to_json();
  EXPECT_LT(r.value("final_distance"), r.value("initial_distance"));
}

TEST(Audits, ChordArcAndApriori) {
  SimConfig cfg = small_config(0.1);
  cfg.init.kind = "perturbed-circle";
  const Trajectory traj = simulate(cfg);
  EXPECT_TRUE(chord_arc_audit(traj).passed());
  const AuditReport a = apriori_audit(traj, MuWeight::log(), 1.0);
  EXPECT_TRUE(a.passed()) << a.to_json();
  const AprioriSides s = apriori_sides(traj, MuWeight::log());
  EXPECT_NEAR(s.lhs(2.0, 0.5), s.sup_part + 2.0 * std::sqrt(0.5) * s.dissipation, 1e-12);
  EXPECT_FALSE(apriori_audit(traj, MuWeight::log(), 1.0, 1e3).passed());
}

TEST(Audits, SmoothDataStaysBounded) {
  SimConfig cfg = small_config();
  cfg.init.kind = "perturbed-circle";
  EXPECT_TRUE(smoothing_audit(simulate(cfg), SmoothingMode::Smooth).passed());
}

TEST(Audits, StabilityOfIdenticalAndRotatedData) {
  SimConfig cfg = small_config();
  const Curve x0 = perturbed_circle(32, 0.05, 3);
  EXPECT_EQ(stability_audit(x0, x0, cfg).value("ratio"), 0.0);

  // Rotation commutes with the flow, so ||X' - QX'|| = 2 |sin(phi/2)| ||X'(t)||.
  const double phi = 0.3;
  const AuditReport r = stability_audit(x0, rotate(x0, phi), cfg);
  const Trajectory traj = simulate_from(x0, cfg);
  EXPECT_NEAR(r.value("final_difference"), 2.0 * std::sin(phi / 2) * traj.records.back().l2, 1e-10);
  EXPECT_NEAR(r.value("initial_difference"), 2.0 * std::sin(phi / 2) * traj.records.front().l2, 1e-12);
  EXPECT_TRUE(r.passed());
}

TEST(Audits, StabilitySweep) {
  SimConfig cfg = small_config(0.1);
  const AuditReport r = stability_sweep(perturbed_circle(32, 0.05, 3), perturbed_circle(32, 0.5, 2) - circle_curve(32), cfg, 3, 5);
  EXPECT_TRUE(r.passed()) << r.to_json();
}

TEST(Audits, DigestTracksData) {
  SimConfig cfg = small_config(0.04);
  const Trajectory a = simulate(cfg);
  EXPECT_EQ(trajectory_digest(a), trajectory_digest(simulate(cfg)));
  cfg.init.kind = "perturbed-circle";
  EXPECT_NE(trajectory_digest(a), trajectory_digest(simulate(cfg)));
}
