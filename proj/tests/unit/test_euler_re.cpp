#include <gtest/gtest.h>

#include <cmath>

#include "sphere_re/dynamics.hpp"
#include "sphere_re/error.hpp"
#include "sphere_re/euler_re.hpp"
#include "sphere_re/euler_scan.hpp"
#include "support/generators.hpp"

namespace sphere_re {
namespace {

const Potential kCot = Potential::cotangent();
const double kSqrt3 = std::sqrt(3.0);

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::internal_error;
}

// Bisection oracle for cos 2y = 1 on the scalene branch, written without
// the closed form.
double bisect_ac() {
  auto h = [](double a) {
    const double c = std::cos(a), c2 = std::cos(2 * a), s = std::sin(a);
    const double rad = c2 * c2 - 4 * c2 - 4;
    return c + (s * s / c) * (c2 + std::sqrt(std::max(rad, 0.0))) - 1.0;
  };
  double lo = 1.75, hi = 1.85;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (h(lo) * h(mid) <= 0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

TEST(Discriminant, DegenerateShapesForEqualMasses) {
  const auto d = degenerate_shape_constraints(Masses::equal());
  EXPECT_TRUE(d.attainable);
  EXPECT_FALSE(d.boundary);
  const MeridianShape3 expected[] = {
      {2 * pi / 3, pi / 3}, {2 * pi / 3, -2 * pi / 3}, {pi / 3, 2 * pi / 3}, {pi / 3, -pi / 3}};
  for (const auto& e : expected) {
    bool found = false;
    for (const auto& s : d.shapes)
      found = found || (std::abs(s.shape.a - e.a) < 1e-12 && std::abs(s.shape.x - e.x) < 1e-12);
    EXPECT_TRUE(found) << e.a << "," << e.x;
  }
  for (const auto& s : d.shapes) EXPECT_LT(discriminant(s.shape, Masses::equal()).A, 1e-12);
}

TEST(Discriminant, HeavyMassIsNotAttainable) {
  EXPECT_FALSE(degenerate_shape_constraints(Masses(5, 1, 1)).attainable);
}

TEST(Discriminant, BoundaryMassesCollapse) {
  const auto d = degenerate_shape_constraints(Masses(2, 1, 1));
  EXPECT_TRUE(d.attainable);
  EXPECT_TRUE(d.boundary);
  for (const auto& s : d.shapes) EXPECT_TRUE(s.singular);
}

TEST(Discriminant, IsSquareOfA) {
  testing::Gen gen(51);
  for (int i = 0; i < 500; ++i) {
    const Masses m = gen.masses();
    const MeridianShape3 s{gen.uniform(0.01, pi - 0.01), gen.uniform(-pi, pi)};
    const auto d = discriminant(s, m);
    EXPECT_NEAR(d.D, d.A * d.A, 1e-12 * m.total() * m.total());
  }
}

TEST(Reconstruct, EquilateralUnequalMasses) {
  const Masses m(1, 2, 3);
  const MeridianShape3 eq{2 * pi / 3, -2 * pi / 3};
  const double A = discriminant(eq, m).A;
  EXPECT_NEAR(A, kSqrt3, 1e-14);
  for (int s : {1, -1}) {
    const auto th = reconstruct_meridian(eq, m, s);
    // sin 2theta_k is proportional to the cyclic mass gap opposite k.
    const double gaps[] = {m[1] - m[2], m[2] - m[0], m[0] - m[1]};
    const double sign = std::sin(2 * th[1]) * gaps[1] > 0 ? 1.0 : -1.0;
    for (std::size_t k = 0; k < 3; ++k)
      EXPECT_NEAR(std::sin(2 * th[k]), sign * kSqrt3 * gaps[k] / (2 * A), 1e-12);
  }
  // The two branches differ by a quarter turn.
  const auto p = reconstruct_meridian(eq, m, 1), q = reconstruct_meridian(eq, m, -1);
  for (std::size_t k = 0; k < 3; ++k)
    EXPECT_NEAR(std::abs(std::sin(p[k] - q[k])), 1.0, 1e-12);
}

TEST(Reconstruct, DegenerateShapeIsRejected) {
  EXPECT_EQ(code_of([] { reconstruct_meridian({2 * pi / 3, pi / 3}, Masses::equal(), 1); }),
            ErrorCode::degenerate_discriminant);
}

TEST(Reconstruct, SineSumVanishes) {
  testing::Gen gen(52);
  for (int i = 0; i < 500; ++i) {
    const Masses m = gen.masses();
    const MeridianShape3 s{gen.uniform(0.05, pi - 0.05), gen.uniform(-pi + 0.05, pi - 0.05)};
    if (discriminant(s, m).A < 1e-3) continue;
    for (int b : {1, -1}) {
      const auto th = reconstruct_meridian(s, m, b);
      double sum = 0;
      for (std::size_t k = 0; k < 3; ++k) sum += m[k] * std::sin(2 * th[k]);
      EXPECT_NEAR(sum, 0.0, 1e-10 * m.total());
    }
  }
}

TEST(ShapeDet, IsoscelesVanishes) {
  const auto d = ere_shape_det({1.0, 0.5}, Masses::equal(), kCot);
  EXPECT_LT(std::abs(d.det), 1e-12 * d.scale);
}

TEST(ShapeDet, GenericShapeDoesNot) {
  const auto d = ere_shape_det({1.0, 0.4}, Masses::equal(), kCot);
  EXPECT_GT(std::abs(d.det), 1e-3 * d.scale);
}

TEST(ShapeDet, ScaleneCurvePointVanishes) {
  for (double a : {1.6, 1.7, 1.75, 1.8}) {
    const auto p = scalene_curve_point(a);
    ASSERT_TRUE(p);
    const auto d = ere_shape_det(*p, Masses::equal(), kCot);
    EXPECT_LT(std::abs(d.det), 1e-10 * d.scale) << a;
    EXPECT_LT(std::abs(g_equal_mass(p->a, p->x)), 1e-10) << a;
  }
}

TEST(ShapeDet, CotangentNumeratorMatchesDet) {
  testing::Gen gen(53);
  for (int i = 0; i < 500; ++i) {
    const Masses m = gen.masses();
    const MeridianShape3 s{gen.uniform(0.1, pi - 0.1), gen.uniform(-pi + 0.1, pi - 0.1)};
    const auto th = s.offsets();
    double prod = 1.0;
    bool ok = discriminant(s, m).A > 1e-6;
    for (std::size_t p = 0; p < 3; ++p) {
      const double d = th[p] - th[(p + 1) % 3];
      const double sn = std::sin(d);
      ok = ok && std::abs(sn) > 0.05;
      prod *= sn * std::abs(sn);
    }
    if (!ok) continue;
    const auto det = ere_shape_det(s, m, kCot);
    EXPECT_NEAR(det.det, m[0] * m[1] * m[2] * g_general(th, m) / prod, 1e-9 * det.scale);
  }
}

TEST(EreOmega, IsoscelesPoleBranch) {
  // theta = (-0.5, 0.5, 0), the middle body at the pole.
  const EreSolution s = ere_solve({1.0, 0.5}, Masses::equal(), kCot);
  EXPECT_NEAR(s.omega2, isosceles_f(0.5), 1e-12 * s.omega2);
  EXPECT_NEAR(s.omega2, 13.697, 1e-3);
  EXPECT_LT(s.relative_residual, 1e-12);
}

TEST(EreOmega, EquilateralUnequalMasses) {
  const EreSolution s = ere_solve({2 * pi / 3, -2 * pi / 3}, Masses(1, 2, 3), kCot);
  EXPECT_EQ(s.s, -1);
  EXPECT_NEAR(s.omega2, 16.0 / 3.0, 1e-12);
  EXPECT_LT(s.relative_residual, 1e-12);
}

TEST(EreOmega, InconsistentShapeIsRejected) {
  EXPECT_EQ(code_of([] { ere_omega2({1.0, 0.4}, Masses::equal(), kCot); }),
            ErrorCode::inconsistent_ratios);
}

TEST(EreSolve, DegenerateIsoscelesUsesDirectSolver) {
  const EreSolution s = ere_solve({2 * pi / 3, pi / 3}, Masses::equal(), kCot);
  EXPECT_TRUE(s.degenerate);
  EXPECT_NEAR(s.theta[0], -pi / 3, 1e-12);
  EXPECT_NEAR(s.theta[1], pi / 3, 1e-12);
  EXPECT_NEAR(s.theta[2], 0.0, 1e-12);
  const double derived = 32.0 / (3.0 * kSqrt3);
  EXPECT_NEAR(s.omega2, derived, 1e-12);
  EXPECT_NEAR(s.omega2, isosceles_f(pi / 3), 1e-12);
  const double printed = 16.0 / (3.0 * kSqrt3);
  ::testing::Test::RecordProperty("ratio_to_printed_rate", std::to_string(s.omega2 / printed));
  EXPECT_NEAR(s.omega2 / printed, 2.0, 1e-12);
}

TEST(EreSolve, EquilateralFixedPoint) {
  const EreSolution s = ere_solve({2 * pi / 3, -2 * pi / 3}, Masses::equal(), kCot);
  EXPECT_TRUE(s.fixed_point);
  EXPECT_EQ(s.omega2, 0.0);
  for (double r : s.residuals) EXPECT_NEAR(r, 0.0, 1e-12);
}

TEST(EreSolve, OffCurveShapeFails) {
  EXPECT_THROW(ere_solve({1.0, 0.4}, Masses::equal(), kCot), Error);
  EXPECT_EQ(code_of([] { ere_solve({0.0, 0.4}, Masses::equal(), kCot); }),
            ErrorCode::invalid_argument);
}

TEST(CriticalAngle, ClosedForm) {
  const double ac = critical_angle_ac();
  EXPECT_NEAR(std::cos(ac), -0.2393101466, 1e-10);
  EXPECT_NEAR(ac, bisect_ac(), 1e-9);
  const auto c2y = scalene_curve_cos2y(ac);
  ASSERT_TRUE(c2y);
  EXPECT_NEAR(*c2y, 1.0, 1e-9);
}

TEST(CriticalAngle, BranchRange) {
  EXPECT_FALSE(scalene_curve_cos2y(pi / 2));
  EXPECT_FALSE(scalene_curve_cos2y(1.0));
  EXPECT_FALSE(scalene_curve_cos2y(critical_angle_ac() + 1e-3));
  EXPECT_TRUE(scalene_curve_cos2y(pi / 2 + 1e-3));
}

TEST(Isosceles, PoleBranch) {
  const IsoscelesEre r = isosceles_ere_classify(pi / 3);
  EXPECT_EQ(r.branch, IsoscelesBranch::pole);
  EXPECT_NEAR(r.omega2, 32.0 / (3.0 * kSqrt3), 1e-12);
  const auto res = meridian_re_residual(r.theta, Masses::equal(), r.omega2, kCot);
  for (double v : res) EXPECT_NEAR(v, 0.0, 1e-12);
}

TEST(Isosceles, FixedPoint) {
  const IsoscelesEre r = isosceles_ere_classify(2 * pi / 3);
  EXPECT_EQ(r.branch, IsoscelesBranch::fixed_point);
  EXPECT_EQ(r.omega2, 0.0);
}

TEST(Isosceles, EquatorBranch) {
  const IsoscelesEre r = isosceles_ere_classify(3 * pi / 4);
  EXPECT_EQ(r.branch, IsoscelesBranch::equator);
  EXPECT_NEAR(std::abs(r.theta3), pi / 2, 1e-15);
  // sin 2theta = -1 and sin^2 theta = 1/2 give -f = 2.
  EXPECT_NEAR(r.omega2, 2.0, 1e-12);
  const auto res = meridian_re_residual(r.theta, Masses::equal(), r.omega2, kCot);
  for (double v : res) EXPECT_NEAR(v, 0.0, 1e-12);
}

TEST(Isosceles, RightAngleIsExcluded) {
  EXPECT_EQ(code_of([] { isosceles_ere_classify(pi / 2); }), ErrorCode::excluded_angle);
}

TEST(Isosceles, FValueAtHalf) {
  const double s1 = std::sin(1.0), s = std::sin(0.5);
  EXPECT_NEAR(isosceles_f(0.5), 2 * (1 / (s1 * s1 * s1) + 1 / (s * s * s1)), 1e-12);
}

TEST(RepulsiveMirror, IsoscelesHalf) {
  const EreSolution e = ere_solve({1.0, 0.5}, Masses::equal(), kCot);
  const EreSolution r = repulsive_mirror(e);
  EXPECT_EQ(r.s, -e.s);
  const auto res = meridian_re_residual(r.theta, Masses::equal(), r.omega2, kCot.negated());
  const double scale = meridian_force_scale(r.theta, Masses::equal(), r.omega2, kCot.negated());
  for (double v : res) EXPECT_LT(std::abs(v), 1e-10 * scale);
}

TEST(RepulsiveMirror, FixedPointUnchanged) {
  const EreSolution e = ere_solve({2 * pi / 3, -2 * pi / 3}, Masses::equal(), kCot);
  const EreSolution r = repulsive_mirror(e);
  for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(r.theta[k], e.theta[k]);
}

TEST(RepulsiveMirror, InvolutionModPi) {
  const EreSolution e = ere_solve({1.0, 0.5}, Masses::equal(), kCot);
  const EreSolution r = repulsive_mirror(repulsive_mirror(e));
  for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(std::sin(r.theta[k] - e.theta[k]), 0.0, 1e-14);
}

// Properties.

TEST(EulerProperty, EqualMassNumeratorsCoincide) {
  testing::Gen gen(54);
  for (int i = 0; i < 2000; ++i) {
    const double a = gen.uniform(0, pi), x = gen.uniform(-pi, pi);
    EXPECT_NEAR(g_general({0, a, x}, Masses::equal()), g_equal_mass(a, x), 1e-14);
  }
}

TEST(EulerProperty, ZeroSetSymmetries) {
  testing::Gen gen(55);
  for (int i = 0; i < 2000; ++i) {
    const double a = gen.uniform(0, pi), x = gen.uniform(-pi, pi);
    const double g = g_equal_mass(a, x);
    EXPECT_NEAR(g_equal_mass(x, a), g, 1e-13);
    EXPECT_NEAR(g_equal_mass(-a, x - a), g, 1e-13);
  }
}

TEST(EulerProperty, QuinticLimitIsSecondOrder) {
  testing::Gen gen(56);
  for (int i = 0; i < 100; ++i) {
    const Masses m = gen.masses(0.2, 3.0);
    const double L = gen.uniform(0.5, 1.5), x = gen.uniform(0.2, 3.0);
    const double target = 2 * std::pow(L, 5) * euler_quintic(x, m);
    auto err = [&](double e) {
      return std::abs(g_general({0, e * L, e * L * (1 + x)}, m) / std::pow(e, 5) - target);
    };
    const double e1 = err(1e-2), e2 = err(5e-3);
    const double scale = std::max(1.0, std::abs(target));
    EXPECT_LT(e2, 1e-3 * scale);
    if (e1 > 1e-9 * scale) EXPECT_GT(std::log2(e1 / e2), 1.8);
  }
}

TEST(EulerProperty, ScanHitsSolveTheMeridianEquations) {
  const Masses m = Masses::equal();
  EreScanOptions opt;
  opt.grid = 90;
  const EreScanResult res = ere_scan(m, kCot, opt);
  std::size_t solved = 0;
  for (const EreHit& h : res.hits) {
    if (h.kind == EreHitKind::singular) continue;
    const EreSolution s = ere_solve(h.shape, m, kCot);
    EXPECT_LT(s.relative_residual, 1e-10) << h.shape.a << "," << h.shape.x;
    ++solved;
    if (h.kind == EreHitKind::scalene) {
      const Shape3 arcs = meridian_arc_angles(s.theta);
      EXPECT_GT(std::max({arcs.sigma12, arcs.sigma23, arcs.sigma31}), pi / 2);
    }
  }
  EXPECT_GT(solved, 300u);
  EXPECT_GT(res.count(EreHitKind::scalene), 0u);
  EXPECT_GT(res.count(EreHitKind::isosceles), 0u);
}

TEST(EulerProperty, PerturbationLeavesTheCurve) {
  const Masses m = Masses::equal();
  testing::Gen gen(57);
  for (int i = 0; i < 200; ++i) {
    const auto p = scalene_curve_point(gen.uniform(pi / 2 + 0.02, critical_angle_ac() - 0.02));
    ASSERT_TRUE(p);
    const double t = gen.uniform(-pi, pi);
    const MeridianShape3 q{p->a + 1e-3 * std::cos(t), p->x + 1e-3 * std::sin(t)};
    // At most one of two orthogonal steps can follow the curve.
    const MeridianShape3 r{p->a - 1e-3 * std::sin(t), p->x + 1e-3 * std::cos(t)};
    const auto dq = ere_shape_det(q, m, kCot), dr = ere_shape_det(r, m, kCot);
    EXPECT_GT(std::max(std::abs(dq.det) / dq.scale, std::abs(dr.det) / dr.scale), 1e-6);
  }
}

TEST(EulerProperty, ScanClassesAreConsistent) {
  // Isosceles hits are mirror symmetric; degenerate hits have A = 0.
  const Masses m = Masses::equal();
  EreScanOptions opt;
  opt.grid = 60;
  for (const EreHit& h : ere_scan(m, kCot, opt).hits) {
    if (h.kind == EreHitKind::degenerate) EXPECT_LT(discriminant(h.shape, m).A, 1e-8 * 3);
    EXPECT_EQ(classify_meridian_shape(h.shape, m), h.kind);
  }
}

}  // namespace
}  // namespace sphere_re
