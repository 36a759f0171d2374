#include "sphere_re/inertia.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sphere_re/error.hpp"

namespace sphere_re {

InertiaTensor inertia_of(const Config3& config, const Masses& masses) {
  InertiaTensor t;
  Mat3& I = t.m;
  for (std::size_t k = 0; k < 3; ++k) {
    const double m = masses[k];
    const double st = std::sin(config[k].theta), ct = std::cos(config[k].theta);
    const double sp = std::sin(config[k].phi), cp = std::cos(config[k].phi);
    I(0, 0) += m * (ct * ct + st * st * sp * sp);
    I(1, 1) += m * (ct * ct + st * st * cp * cp);
    I(2, 2) += m * st * st;
    I(0, 1) -= m * st * st * sp * cp;
    I(0, 2) -= m * st * ct * cp;
    I(1, 2) -= m * st * ct * sp;
  }
  I(1, 0) = I(0, 1);
  I(2, 0) = I(0, 2);
  I(2, 1) = I(1, 2);
  return t;
}

ShapeMatrix shape_matrix(const Shape3& s, const Masses& masses) {
  const double m1 = masses[0], m2 = masses[1], m3 = masses[2];
  const double j12 = -std::sqrt(m1 * m2) * std::cos(s.sigma12);
  const double j23 = -std::sqrt(m2 * m3) * std::cos(s.sigma23);
  const double j13 = -std::sqrt(m1 * m3) * std::cos(s.sigma31);
  ShapeMatrix J;
  J.m.a = {{{m2 + m3, j12, j13}, {j12, m3 + m1, j23}, {j13, j23, m1 + m2}}};
  return J;
}

CharPoly char_poly_coeffs(const Mat3& a) {
  const double minors = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0) +
                        a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1) +
                        a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0);
  return {-a.trace(), minors, -a.determinant()};
}

double placement_cos_alpha(const Shape3& s) {
  return (std::cos(s.sigma12) - std::cos(s.sigma31) * std::cos(s.sigma23)) /
         (std::sin(s.sigma31) * std::sin(s.sigma23));
}

Config3 canonical_placement(const Shape3& s) {
  for (double sigma : {s.sigma12, s.sigma23, s.sigma31}) {
    if (!(sigma > 0.0 && sigma < pi))
      throw Error(ErrorCode::degenerate_shape, "arc angles must lie in (0, pi)");
  }
  const double c = placement_cos_alpha(s);
  if (!(std::abs(c) <= 1.0 + 1e-12))
    throw Error(ErrorCode::unrealizable_shape,
                "shape cannot be placed on the sphere (cos alpha = " + std::to_string(c) +
                    ")");
  const double alpha = std::acos(std::clamp(c, -1.0, 1.0));
  return {BodyPosition{s.sigma31, 0.0}, BodyPosition{s.sigma23, alpha},
          BodyPosition{0.0, 0.0}};
}

std::vector<AxisCandidate> principal_axes(const Mat3& symmetric) {
  Mat3 a = symmetric;
  Mat3 v = Mat3::identity();
  const double scale = std::max(
      {std::abs(a(0, 0)), std::abs(a(1, 1)), std::abs(a(2, 2)), std::abs(a(0, 1)),
       std::abs(a(0, 2)), std::abs(a(1, 2)), 1e-300});

  for (int sweep = 0; sweep < 64; ++sweep) {
    const double off = std::abs(a(0, 1)) + std::abs(a(0, 2)) + std::abs(a(1, 2));
    if (off <= 1e-15 * scale) break;
    for (std::size_t p = 0; p < 2; ++p) {
      for (std::size_t q = p + 1; q < 3; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) <= 1e-18 * scale) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < 3; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < 3; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < 3; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::array<std::size_t, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

  const double trace_scale = std::max(std::abs(symmetric.trace()), 1e-300);
  std::vector<AxisCandidate> out;
  out.reserve(3);
  for (std::size_t idx : order) {
    AxisCandidate c;
    c.lambda = a(idx, idx);
    c.psi = normalized(Vec3{v(0, idx), v(1, idx), v(2, idx)});
    std::size_t big = 0;
    for (std::size_t k = 1; k < 3; ++k)
      if (std::abs(c.psi[k]) > std::abs(c.psi[big]) + 1e-12) big = k;
    if (c.psi[big] < 0.0) c.psi = -c.psi;
    out.push_back(c);
  }
  for (auto& c : out) {
    c.multiplicity = static_cast<int>(std::count_if(out.begin(), out.end(), [&](const auto& o) {
      return std::abs(o.lambda - c.lambda) < 1e-9 * trace_scale;
    }));
  }
  return out;
}

Vec3 psi_theta(const Config3& config, const Masses& masses) {
  Vec3 v;
  for (std::size_t k = 0; k < 3; ++k) v[k] = std::sqrt(masses[k]) * std::cos(config[k].theta);
  const double n2 = dot(v, v);
  if (!(n2 > 1e-20 * masses.total()))
    throw Error(ErrorCode::degenerate_normalization,
                "all bodies are on the equator; Psi_theta is undefined");
  return v / std::sqrt(n2);
}

AxisConditions axis_conditions_check(const Config3& config, const Masses& masses) {
  const double M = masses.total();
  const double tol = 1e-10 * M;
  const Vec3 psi = psi_theta(config, masses);

  AxisConditions r;
  const InertiaTensor I = inertia_of(config, masses);

  const Vec3 ez{0.0, 0.0, 1.0};
  const Vec3 Iez = I.m * ez;
  r.residual_s1 = norm(Iez - dot(ez, Iez) * ez);
  r.s1 = r.residual_s1 < tol;

  r.residual_s2 = std::max(std::abs(I.xz()), std::abs(I.yz()));
  r.s2 = r.residual_s2 < tol;

  double lambda = 0.0;
  for (std::size_t k = 0; k < 3; ++k) {
    const double st = std::sin(config[k].theta);
    lambda += masses[k] * st * st;
  }
  const ShapeMatrix J = shape_matrix(raw_shape_of(config), masses);
  r.residual_s3 = norm(J.m * psi - lambda * psi);
  r.s3 = r.residual_s3 < tol;
  return r;
}

std::array<double, 3> cos_theta_from_eigenpair(const AxisCandidate& axis,
                                               const Masses& masses) {
  const double M = masses.total();
  double gap = M - axis.lambda;
  if (gap < 0.0) {
    if (gap < -1e-10 * M)
      throw Error(ErrorCode::reconstruction_out_of_range,
                  "eigenvalue exceeds the total mass; no real polar angles");
    gap = 0.0;
  }
  std::array<double, 3> c{};
  const double root = std::sqrt(gap);
  for (std::size_t k = 0; k < 3; ++k) {
    c[k] = root * axis.psi[k] / std::sqrt(masses[k]);
    if (std::abs(c[k]) > 1.0 + 1e-10)
      throw Error(ErrorCode::reconstruction_out_of_range,
                  "reconstructed |cos theta| exceeds 1 (" + std::to_string(c[k]) + ")");
    c[k] = std::clamp(c[k], -1.0, 1.0);
  }
  return c;
}

}  // namespace sphere_re
