#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "sphere_re/error.hpp"
#include "sphere_re/euler_re.hpp"
#include "sphere_re/euler_scan.hpp"
#include "sphere_re/kernels.hpp"
#include "sphere_re/lagrange_re.hpp"
#include "sphere_re/lagrange_scan.hpp"
#include "support/generators.hpp"

namespace sphere_re {
namespace {

using kernels::Isa;

struct Axis {
  std::vector<double> t, s, c;
};

Axis axis(testing::Gen& gen, std::size_t n, double lo, double hi) {
  Axis a;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = gen.uniform(lo, hi);
    a.t.push_back(t);
    a.s.push_back(std::sin(t));
    a.c.push_back(std::cos(t));
  }
  return a;
}

// Lengths that exercise empty rows, pure tails and mixed body + tail.
const std::size_t kLengths[] = {0, 1, 3, 4, 5, 7, 8, 17, 64, 1001};

double scale_of(const std::vector<double>& v) {
  double s = 1.0;
  for (double x : v) s = std::max(s, std::abs(x));
  return s;
}

TEST(Kernels, ScalarIsAlwaysSupported) {
  EXPECT_TRUE(kernels::isa_supported(Isa::scalar));
  EXPECT_EQ(kernels::supported_isas().front(), Isa::scalar);
  EXPECT_TRUE(kernels::isa_supported(kernels::active_isa()));
  EXPECT_EQ(kernels::isa_name(Isa::avx2), "avx2");
}

TEST(Kernels, UnsupportedIsaThrows) {
  if (kernels::isa_supported(Isa::avx2)) GTEST_SKIP() << "avx2 available";
  double s = 0, c = 1, out = 0;
  EXPECT_THROW(kernels::ere_g_row(Isa::avx2, {}, &s, &c, &out, 1), Error);
}

// Scalar kernels against the closed-form evaluators they vectorize.

TEST(ScalarKernel, EreRowMatchesGeneralNumerator) {
  testing::Gen gen(71);
  for (int trial = 0; trial < 20; ++trial) {
    const Masses m = gen.masses();
    const double a = gen.uniform(0.0, pi);
    const Axis x = axis(gen, 257, -pi, pi);
    std::vector<double> out(x.t.size());
    kernels::ere_g_row(Isa::scalar, {m[0], m[1], m[2], std::sin(a), std::cos(a)}, x.s.data(),
                       x.c.data(), out.data(), out.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
      const double want = g_general({0.0, a, x.t[i]}, m);
      EXPECT_NEAR(out[i], want, 1e-12 * m.total() * m.total() * m.total());
    }
  }
}

TEST(ScalarKernel, QRowMatchesIsoscelesQ) {
  testing::Gen gen(72);
  for (int trial = 0; trial < 20; ++trial) {
    const double s12 = gen.uniform(0.01, pi - 0.01);
    const Axis s = axis(gen, 257, 0.01, pi - 0.01);
    std::vector<double> out(s.t.size());
    kernels::lre_q_row(Isa::scalar, {std::sin(s12), std::cos(s12)}, s.s.data(), s.c.data(),
                       out.data(), out.size());
    for (std::size_t i = 0; i < out.size(); ++i)
      EXPECT_NEAR(out[i], isosceles_lre_q(s.t[i], s12), 1e-13);
  }
}

TEST(ScalarKernel, ResidualRowMatchesConditionResidual) {
  testing::Gen gen(73);
  const Potential u = Potential::cotangent();
  for (int trial = 0; trial < 20; ++trial) {
    const double s12 = gen.uniform(0.05, pi - 0.05), s23 = gen.uniform(0.05, pi - 0.05);
    const Axis s31 = axis(gen, 257, 0.05, pi - 0.05);
    std::vector<double> out(s31.t.size());
    kernels::lre_residual_row(
        Isa::scalar, {std::sin(s12), std::cos(s12), std::sin(s23), std::cos(s23)},
        s31.s.data(), s31.c.data(), out.data(), out.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
      const double want = norm(lre_condition_residual({s12, s23, s31.t[i]}, Masses::equal(), u));
      EXPECT_NEAR(out[i], want, 1e-12 * std::max(1.0, want));
    }
  }
}

// Vector kernels against the scalar reference.

class VectorKernel : public ::testing::TestWithParam<Isa> {};

TEST_P(VectorKernel, EreRowMatchesScalar) {
  const Isa isa = GetParam();
  testing::Gen gen(74);
  for (std::size_t n : kLengths) {
    for (int trial = 0; trial < 10; ++trial) {
      const Masses m = gen.masses();
      const double a = gen.uniform(0.0, pi);
      const Axis x = axis(gen, n, -pi, pi);
      const kernels::EreRow row{m[0], m[1], m[2], std::sin(a), std::cos(a)};
      std::vector<double> ref(n + 1, -7.0), got(n + 1, -7.0);
      kernels::ere_g_row(Isa::scalar, row, x.s.data(), x.c.data(), ref.data(), n);
      kernels::ere_g_row(isa, row, x.s.data(), x.c.data(), got.data(), n);
      const double tol = 1e-13 * scale_of(ref) * m.total() * m.total();
      for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(got[i], ref[i], tol) << n << ":" << i;
      EXPECT_EQ(got[n], -7.0);  // no write past the row
    }
  }
}

TEST_P(VectorKernel, QRowMatchesScalar) {
  const Isa isa = GetParam();
  testing::Gen gen(75);
  for (std::size_t n : kLengths) {
    for (int trial = 0; trial < 10; ++trial) {
      const double s12 = gen.uniform(0.01, pi - 0.01);
      const Axis s = axis(gen, n, 0.01, pi - 0.01);
      const kernels::QRow row{std::sin(s12), std::cos(s12)};
      std::vector<double> ref(n + 1, -7.0), got(n + 1, -7.0);
      kernels::lre_q_row(Isa::scalar, row, s.s.data(), s.c.data(), ref.data(), n);
      kernels::lre_q_row(isa, row, s.s.data(), s.c.data(), got.data(), n);
      for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(got[i], ref[i], 1e-14) << n << ":" << i;
      EXPECT_EQ(got[n], -7.0);
    }
  }
}

TEST_P(VectorKernel, ResidualRowMatchesScalar) {
  const Isa isa = GetParam();
  testing::Gen gen(76);
  for (std::size_t n : kLengths) {
    for (int trial = 0; trial < 10; ++trial) {
      const double s12 = gen.uniform(0.05, pi - 0.05), s23 = gen.uniform(0.05, pi - 0.05);
      const Axis s31 = axis(gen, n, 0.05, pi - 0.05);
      const kernels::LreResidualRow row{std::sin(s12), std::cos(s12), std::sin(s23),
                                        std::cos(s23)};
      std::vector<double> ref(n + 1, -7.0), got(n + 1, -7.0);
      kernels::lre_residual_row(Isa::scalar, row, s31.s.data(), s31.c.data(), ref.data(), n);
      kernels::lre_residual_row(isa, row, s31.s.data(), s31.c.data(), got.data(), n);
      for (std::size_t i = 0; i < n; ++i)
        EXPECT_NEAR(got[i], ref[i], 1e-12 * std::max(1.0, ref[i])) << n << ":" << i;
      EXPECT_EQ(got[n], -7.0);
    }
  }
}

TEST_P(VectorKernel, EreScanHitsAgree) {
  const Isa isa = GetParam();
  for (const Masses& m : {Masses::equal(), Masses(1, 2, 3)}) {
    const EreScanResult a = ere_scan(m, Potential::cotangent(), {120, Isa::scalar});
    const EreScanResult b = ere_scan(m, Potential::cotangent(), {120, isa});
    EXPECT_EQ(b.isa, isa);
    ASSERT_EQ(a.hits.size(), b.hits.size());
    for (std::size_t i = 0; i < a.hits.size(); ++i) {
      EXPECT_EQ(a.hits[i].kind, b.hits[i].kind);
      EXPECT_NEAR(a.hits[i].shape.a, b.hits[i].shape.a, 1e-12);
      EXPECT_NEAR(a.hits[i].shape.x, b.hits[i].shape.x, 1e-10);
    }
  }
}

TEST_P(VectorKernel, LreScansAgree) {
  const Isa isa = GetParam();
  IsoscelesScanOptions o;
  o.sigma12_grid = 64;
  o.sigma_grid = 512;
  o.isa = Isa::scalar;
  const IsoscelesScanResult a = isosceles_lre_scan(o);
  o.isa = isa;
  const IsoscelesScanResult b = isosceles_lre_scan(o);
  ASSERT_EQ(a.points.size(), b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i)
    EXPECT_NEAR(a.points[i].sigma, b.points[i].sigma, 1e-12);

  ScaleneSearchOptions so;
  so.resolution = 30;
  so.polish_starts = 4;
  so.isa = Isa::scalar;
  const ScaleneSearchReport ra = scalene_lre_search(so);
  so.isa = isa;
  const ScaleneSearchReport rb = scalene_lre_search(so);
  EXPECT_EQ(ra.shapes_scanned, rb.shapes_scanned);
  EXPECT_NEAR(ra.grid_min_residual, rb.grid_min_residual, 1e-12);
  EXPECT_EQ(ra.found_below_floor, rb.found_below_floor);
}

std::vector<Isa> vector_isas() {
  std::vector<Isa> out;
  for (Isa isa : kernels::supported_isas())
    if (isa != Isa::scalar) out.push_back(isa);
  return out;
}

INSTANTIATE_TEST_SUITE_P(Supported, VectorKernel, ::testing::ValuesIn(vector_isas()),
                         [](const auto& info) { return std::string(kernels::isa_name(info.param)); });
GTEST_ALLOW_UNINSTANTIATED_PARAMETERIZED_TEST(VectorKernel);

}  // namespace
}  // namespace sphere_re
