#include <gtest/gtest.h>

#include <cmath>

#include "sphere_re/dynamics.hpp"
#include "sphere_re/error.hpp"
#include "sphere_re/inertia.hpp"
#include "sphere_re/lagrange_re.hpp"
#include "sphere_re/lagrange_scan.hpp"
#include "support/generators.hpp"

namespace sphere_re {
namespace {

const Potential kCot = Potential::cotangent();
const Shape3 kRight{pi / 2, pi / 2, pi / 2};
const Shape3 kFig6{pi / 3, 1.33240, 1.33240};

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::internal_error;
}

double rigid_eom_residual(const LreCandidate& c, const Masses& m) {
  const Accelerations a = eom_accelerations(PhaseState::rigid(c.config(), std::sqrt(c.omega2)), m, kCot);
  double worst = 0.0;
  for (std::size_t k = 0; k < 3; ++k)
    worst = std::max({worst, std::abs(a.theta_ddot[k]), std::abs(a.phi_ddot[k])});
  return worst;
}

TEST(EigvecTarget, RightAngledEqualMasses) {
  const Vec3 p = lre_eigvec_target(kRight, Masses::equal(), kCot);
  for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(p[k], 1.0 / std::sqrt(3.0), 1e-15);
}

TEST(EigvecTarget, EquilateralEqualMasses) {
  for (double s : {0.3, 1.0, 2.0}) {
    const Vec3 p = lre_eigvec_target({s, s, s}, Masses::equal(), kCot);
    for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(p[k], 1.0 / std::sqrt(3.0), 1e-15);
  }
}

TEST(EigvecTarget, RepulsiveHasNoLre) {
  EXPECT_EQ(code_of([] { lre_eigvec_target(kRight, Masses::equal(), kCot.negated()); }),
            ErrorCode::no_lre_for_repulsive);
  EXPECT_EQ(code_of([] { no_fixed_point_lre_check(kRight, Masses::equal(), kCot.negated()); }),
            ErrorCode::no_lre_for_repulsive);
}

TEST(ConditionResidual, Examples) {
  const Shape3 eq{pi / 3, pi / 3, pi / 3};
  EXPECT_LT(norm(lre_condition_residual(eq, Masses::equal(), kCot)), 1e-15);
  EXPECT_GT(norm(lre_condition_residual(eq, Masses(1, 1, 2), kCot)), 1e-3);
  EXPECT_LT(norm(lre_condition_residual(kFig6, Masses::equal(), kCot)), 1e-4);
  const double s = polish_isosceles_lre(1.33240, pi / 3);
  EXPECT_LT(norm(lre_condition_residual({pi / 3, s, s}, Masses::equal(), kCot)), 1e-10);
}

TEST(Reconstruct, RightAngledEqualMasses) {
  const LreCandidate c = lre_reconstruct(kRight, Masses::equal(), kCot);
  for (double v : c.cos_theta) EXPECT_NEAR(v, 1.0 / std::sqrt(3.0), 1e-14);
  for (double d : c.phi_diffs) EXPECT_NEAR(d, -2 * pi / 3, 1e-14);
  EXPECT_NEAR(c.omega2, 3.0, 1e-14);
  EXPECT_LT(rigid_eom_residual(c, Masses::equal()), 1e-12);
}

TEST(Reconstruct, Figure6Rate) {
  const LreCandidate c = lre_reconstruct(kFig6, Masses::equal(), kCot);
  EXPECT_NEAR(c.omega2, 3.85072, 1e-4);
}

TEST(Reconstruct, FourOrientations) {
  const double s = polish_isosceles_lre(1.33240, pi / 3);
  const Shape3 shape{pi / 3, s, s};
  const double w2 = lre_omega2(shape, Masses::equal(), kCot);
  for (bool north : {true, false}) {
    for (bool neg : {true, false}) {
      const LreCandidate c = lre_reconstruct(shape, Masses::equal(), kCot, {north, neg});
      EXPECT_EQ(c.omega2, w2);
      EXPECT_LT(rigid_eom_residual(c, Masses::equal()), 1e-10);
      for (double v : c.cos_theta) EXPECT_EQ(v > 0, north);
      for (double d : c.phi_diffs) EXPECT_EQ(std::sin(d) < 0, neg);
    }
  }
}

TEST(Reconstruct, UnrealizableShape) {
  EXPECT_EQ(code_of([] { lre_reconstruct({2.0, 0.5, 1.0}, Masses::equal(), kCot); }),
            ErrorCode::unrealizable_shape);
}

TEST(Omega2, MirroredShapeHasSameRate) {
  testing::Gen gen(61);
  for (int i = 0; i < 500; ++i) {
    const Masses m = gen.masses();
    const Shape3 s = gen.shape(0.1);
    const Shape3 r{pi - s.sigma12, pi - s.sigma23, pi - s.sigma31};
    const double a = lre_omega2(s, m, kCot), b = lre_omega2(r, m, kCot);
    EXPECT_NEAR(a, b, 1e-12 * a);
  }
}

TEST(Omega2, RightAngledIsThree) {
  EXPECT_DOUBLE_EQ(lre_omega2(kRight, Masses::equal(), kCot), 3.0);
}

TEST(EqualMassResiduals, Examples) {
  for (double v : equal_mass_lre_residuals({1.1, 1.1, 1.1})) EXPECT_NEAR(v, 0.0, 1e-15);
  for (double v : equal_mass_lre_residuals(kFig6)) EXPECT_LT(std::abs(v), 1e-4);
  double worst = 0.0;
  for (double v : equal_mass_lre_residuals({1.0, 1.2, 1.4})) worst = std::max(worst, std::abs(v));
  EXPECT_GT(worst, 1e-2);
}

TEST(IsoscelesQ, EquilateralLineIsARoot) {
  for (int i = 1; i < 100; ++i) {
    const double s = pi * i / 100;
    EXPECT_NEAR(isosceles_lre_q(s, s), 0.0, 1e-15);
  }
}

TEST(IsoscelesQ, Figure6And7Roots) {
  EXPECT_LT(std::abs(isosceles_lre_q(1.33240, pi / 3)), 1e-4);
  const auto r = isosceles_lre_roots(pi / 6);
  ASSERT_EQ(r.size(), 3u);
  EXPECT_NEAR(r[0], pi / 6, 1e-12);
  EXPECT_NEAR(r[1], 1.51596, 1e-4);
  EXPECT_NEAR(r[2], 2.73083, 1e-4);
}

TEST(IsoscelesQ, DerivativeMatchesFiniteDifference) {
  testing::Gen gen(62);
  for (int i = 0; i < 500; ++i) {
    const double s = gen.uniform(0.05, pi - 0.05), s12 = gen.uniform(0.05, pi - 0.05);
    const double h = 1e-6;
    const double fd = (isosceles_lre_q(s + h, s12) - isosceles_lre_q(s - h, s12)) / (2 * h);
    EXPECT_NEAR(isosceles_lre_dq(s, s12), fd, 1e-7);
  }
}

TEST(IsoscelesScan, MirrorPairAndRightAngle) {
  const auto a = isosceles_lre_roots(pi / 3);
  const auto b = isosceles_lre_roots(2 * pi / 3);
  double s1 = 0, s2 = 0;
  for (double r : a)
    if (std::abs(r - 1.33240) < 1e-3) s1 = r;
  for (double r : b)
    if (std::abs(r - 1.80918) < 1e-3) s2 = r;
  ASSERT_GT(s1, 0);
  ASSERT_GT(s2, 0);
  EXPECT_NEAR(s1 + s2, pi, 1e-10);

  bool right = false;
  for (double r : isosceles_lre_roots(pi / 2)) right = right || std::abs(r - pi / 2) < 1e-12;
  EXPECT_TRUE(right);
}

TEST(IsoscelesScan, EveryHitSatisfiesTheCondition) {
  IsoscelesScanOptions opt;
  opt.sigma12_grid = 128;
  opt.sigma_grid = 1024;
  const auto res = isosceles_lre_scan(opt);
  EXPECT_GT(res.points.size(), 200u);
  EXPECT_LT(res.max_residual, 1e-10);
  EXPECT_LT(res.max_symmetry_q, 1e-12);
  EXPECT_LT(res.max_pairing_mismatch, 1e-9);
  std::size_t eq = 0;
  for (const auto& p : res.points) eq += p.equilateral ? 1 : 0;
  // Equilateral triangles exist only for sigma <= 2 pi / 3: rows 1..85 of 128.
  EXPECT_EQ(eq, 85u);
}

TEST(ScaleneSearch, CoarseGridFindsNothingOffLocus) {
  ScaleneSearchOptions opt;
  opt.resolution = 40;
  opt.polish_starts = 16;
  const auto r = scalene_lre_search(opt);
  EXPECT_FALSE(r.found_below_floor);
  EXPECT_GT(r.shapes_scanned, 0u);
  EXPECT_NE(r.note.find("not a proof"), std::string::npos);
}

TEST(NoFixedPoint, RateMustBePositive) {
  EXPECT_TRUE(no_fixed_point_lre_check(3.0));
  EXPECT_FALSE(no_fixed_point_lre_check(0.0));
  EXPECT_FALSE(no_fixed_point_lre_check(-1.0));
}

// Properties.

TEST(LagrangeProperty, EquilateralRequiresEqualMasses) {
  testing::Gen gen(63);
  int checked = 0;
  while (checked < 300) {
    const Masses m = gen.masses(0.5, 2.0);
    const double gap = std::max({std::abs(m[0] - m[1]), std::abs(m[1] - m[2]), std::abs(m[2] - m[0])});
    if (gap < 1e-3) continue;
    const double s = gen.uniform(0.1, 2 * pi / 3 - 0.01);
    EXPECT_GT(norm(lre_condition_residual({s, s, s}, m, kCot)), 1e-6) << s;
    ++checked;
  }
  for (int i = 1; i < 50; ++i) {
    const double s = (2 * pi / 3) * i / 50;
    EXPECT_LT(norm(lre_condition_residual({s, s, s}, Masses::equal(), kCot)), 1e-15);
  }
}

TEST(LagrangeProperty, IsoscelesFamilyReconstructs) {
  testing::Gen gen(64);
  for (int i = 0; i < 100; ++i) {
    const double s12 = gen.uniform(0.1, pi - 0.1);
    for (double s : isosceles_lre_roots(s12)) {
      const Shape3 shape{s12, s, s};
      if (!is_realizable(shape, 1e-6)) continue;
      LreCandidate c;
      try {
        c = lre_reconstruct(shape, Masses::equal(), kCot);
      } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::reconstruction_out_of_range);
        continue;
      }
      EXPECT_LT(c.shape_mismatch, 1e-10);
      EXPECT_LT(c.winding_mismatch, 1e-10);
      for (double v : c.cos_theta) EXPECT_GT(v, 0.0);
      const double w2 = lre_omega2_from_config(c.config(), Masses::equal(), kCot);
      EXPECT_NEAR(w2, c.omega2, 1e-10 * c.omega2);
      EXPECT_LT(lre_axis_balance(c.config(), Masses::equal(), kCot), 1e-10);
      EXPECT_LT(rigid_eom_residual(c, Masses::equal()), 1e-10 * std::max(1.0, c.omega2));
    }
  }
}

TEST(LagrangeProperty, EigenvalueMatchesQuadraticForm) {
  testing::Gen gen(65);
  for (int i = 0; i < 500; ++i) {
    const Masses m = gen.masses();
    const Shape3 s = gen.shape(0.1);
    const Vec3 psi = lre_eigvec_target(s, m, kCot);
    const Vec3 r = lre_condition_residual(s, m, kCot);
    EXPECT_NEAR(norm(psi), 1.0, 1e-15);
    EXPECT_NEAR(dot(psi, r), 0.0, 1e-12 * m.total());
  }
}

}  // namespace
}  // namespace sphere_re
