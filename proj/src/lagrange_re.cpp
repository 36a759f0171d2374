#include "sphere_re/lagrange_re.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sphere_re/error.hpp"
#include "sphere_re/inertia.hpp"

namespace sphere_re {
namespace {

// U' opposite to body k: U'23, U'31, U'12.
std::array<double, 3> opposite_derivatives(const Shape3& s, const Potential& u) {
  return {u.derivative(std::cos(s.sigma23)), u.derivative(std::cos(s.sigma31)),
          u.derivative(std::cos(s.sigma12))};
}

std::array<double, 3> attractive_opposite(const Shape3& s, const Potential& u) {
  const auto d = opposite_derivatives(s, u);
  for (double v : d)
    if (!(v > 0.0))
      throw Error(ErrorCode::no_lre_for_repulsive,
                  "no Lagrangian relative equilibrium without attraction (U' <= 0)");
  return d;
}

double sin_cubed(double sigma) {
  const double c = std::cos(sigma);
  const double s2 = 1.0 - c * c;
  if (!(s2 >= kSingularSin2))
    throw Error(ErrorCode::singular_separation, "arc angle is 0 or pi");
  const double s = std::sin(sigma);
  return s * s * s;
}

}  // namespace

Config3 LreCandidate::config() const {
  Config3 c;
  for (std::size_t k = 0; k < 3; ++k) c[k].theta = std::acos(std::clamp(cos_theta[k], -1.0, 1.0));
  c[0].phi = 0.0;
  c[1].phi = wrap_angle(-phi_diffs[0]);
  c[2].phi = wrap_angle(c[1].phi - phi_diffs[1]);
  return c;
}

Vec3 lre_eigvec_target(const Shape3& shape, const Masses& m, const Potential& u) {
  const auto d = attractive_opposite(shape, u);
  return normalized(Vec3{std::sqrt(m[0]) / d[0], std::sqrt(m[1]) / d[1], std::sqrt(m[2]) / d[2]});
}

Vec3 lre_condition_residual(const Shape3& shape, const Masses& m, const Potential& u) {
  const Vec3 psi = lre_eigvec_target(shape, m, u);
  const Mat3 J = shape_matrix(shape, m).m;
  const Vec3 jp = J * psi;
  return jp - dot(psi, jp) * psi;
}

double lre_omega2(const Shape3& shape, const Masses& m, const Potential& u) {
  const auto d = attractive_opposite(shape, u);
  double sum = 0.0;
  for (std::size_t k = 0; k < 3; ++k) sum += m[k] / (d[k] * d[k]);
  return d[0] * d[1] * d[2] * sum;
}

LreCandidate lre_reconstruct(const Shape3& shape, const Masses& m, const Potential& u,
                             Orientation orientation) {
  require_realizable(shape);
  LreCandidate c;
  c.shape = shape;
  c.orientation = orientation;
  c.psi_L = lre_eigvec_target(shape, m, u);
  const Mat3 J = shape_matrix(shape, m).m;
  c.lambda = dot(c.psi_L, J * c.psi_L);

  AxisCandidate axis;
  axis.lambda = c.lambda;
  axis.psi = c.psi_L;
  c.cos_theta = cos_theta_from_eigenpair(axis, m);
  std::array<double, 3> sin_theta{};
  for (std::size_t k = 0; k < 3; ++k) {
    if (!orientation.north) c.cos_theta[k] = -c.cos_theta[k];
    sin_theta[k] = std::sqrt(std::max(0.0, 1.0 - c.cos_theta[k] * c.cos_theta[k]));
    if (!(sin_theta[k] > 1e-12))
      throw Error(ErrorCode::reconstruction_out_of_range,
                  "body " + std::to_string(k + 1) + " lands on the rotation axis");
  }

  constexpr std::array<std::array<std::size_t, 2>, 3> pairs{{{0, 1}, {1, 2}, {2, 0}}};
  for (std::size_t p = 0; p < 3; ++p) {
    const auto [i, j] = pairs[p];
    const double cs = std::cos(shape.between(i, j));
    double cd = (cs - c.cos_theta[i] * c.cos_theta[j]) / (sin_theta[i] * sin_theta[j]);
    if (std::abs(cd) > 1.0 + 1e-10)
      throw Error(ErrorCode::reconstruction_out_of_range,
                  "required |cos(phi_i - phi_j)| = " + std::to_string(std::abs(cd)) + " > 1");
    cd = std::clamp(cd, -1.0, 1.0);
    const double mag = std::acos(cd);
    c.phi_diffs[p] = orientation.negative_dphi ? -mag : mag;
  }
  c.winding_mismatch = std::abs(wrap_angle(c.phi_diffs[0] + c.phi_diffs[1] + c.phi_diffs[2]));

  const Config3 cfg = c.config();
  for (const auto& [i, j] : pairs)
    c.shape_mismatch = std::max(
        c.shape_mismatch, std::abs(cos_arc_angle(cfg[i], cfg[j]) - std::cos(shape.between(i, j))));
  c.omega2 = lre_omega2(shape, m, u);
  return c;
}

double lre_omega2_from_config(const Config3& cfg, const Masses& m, const Potential& u) {
  std::array<double, 3> c{};
  double sum = 0.0;
  for (std::size_t k = 0; k < 3; ++k) {
    c[k] = std::cos(cfg[k].theta);
    sum += m[k] * c[k] * c[k];
  }
  double acc = 0.0;
  constexpr std::array<std::array<std::size_t, 2>, 3> pairs{{{0, 1}, {1, 2}, {2, 0}}};
  for (const auto& [i, j] : pairs) {
    if (c[i] * c[j] == 0.0)
      throw Error(ErrorCode::condition_not_satisfied, "a body sits on the equator");
    acc += u.derivative(cos_arc_angle(cfg[i], cfg[j])) * sum / (c[i] * c[j]);
  }
  return acc / 3.0;
}

double lre_axis_balance(const Config3& cfg, const Masses&, const Potential& u) {
  const std::array<double, 3> v{
      u.derivative(cos_arc_angle(cfg[0], cfg[1])) * std::cos(cfg[2].theta),
      u.derivative(cos_arc_angle(cfg[1], cfg[2])) * std::cos(cfg[0].theta),
      u.derivative(cos_arc_angle(cfg[2], cfg[0])) * std::cos(cfg[1].theta)};
  const auto [lo, hi] = std::minmax({v[0], v[1], v[2]});
  const double mean = (std::abs(v[0]) + std::abs(v[1]) + std::abs(v[2])) / 3.0;
  return mean > 0.0 ? (hi - lo) / mean : 0.0;
}

std::array<double, 3> equal_mass_lre_residuals(const Shape3& s) {
  const double c12 = std::cos(s.sigma12), c23 = std::cos(s.sigma23), c31 = std::cos(s.sigma31);
  const double q12 = sin_cubed(s.sigma12), q23 = sin_cubed(s.sigma23), q31 = sin_cubed(s.sigma31);
  const double r12 = (c23 * q31 + q23 * c31) / q12;
  const double r23 = (c31 * q12 + q31 * c12) / q23;
  const double r31 = (c12 * q23 + q12 * c23) / q31;
  return {r12 - r23, r23 - r31, r31 - r12};
}

double isosceles_lre_q(double sigma, double sigma12) {
  const double s = std::sin(sigma), c = std::cos(sigma);
  const double s12 = std::sin(sigma12), c12 = std::cos(sigma12);
  const double s3 = s * s * s, t3 = s12 * s12 * s12;
  return c * (2.0 * s3 * s3 - t3 * t3) - s3 * c12 * t3;
}

double isosceles_lre_dq(double sigma, double sigma12) {
  const double s = std::sin(sigma), c = std::cos(sigma);
  const double s12 = std::sin(sigma12), c12 = std::cos(sigma12);
  const double s3 = s * s * s, t3 = s12 * s12 * s12;
  const double s5 = s3 * s * s;
  return -s * (2.0 * s3 * s3 - t3 * t3) + 12.0 * c * c * s5 - 3.0 * s * s * c * c12 * t3;
}

double polish_isosceles_lre(double sigma, double sigma12) {
  double x = sigma;
  for (int it = 0; it < 60; ++it) {
    const double d = isosceles_lre_dq(x, sigma12);
    if (d == 0.0) break;
    const double step = isosceles_lre_q(x, sigma12) / d;
    x -= step;
    if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(x))) break;
  }
  if (!(x > 0.0 && x < pi) || std::abs(x - sigma) > 1e-2)
    throw Error(ErrorCode::internal_error, "Newton polish left the root's neighbourhood");
  return x;
}

bool no_fixed_point_lre_check(double omega2) { return omega2 > 0.0 && std::isfinite(omega2); }

bool no_fixed_point_lre_check(const Shape3& shape, const Masses& m, const Potential& u) {
  return no_fixed_point_lre_check(lre_omega2(shape, m, u));
}

}  // namespace sphere_re
