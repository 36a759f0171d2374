#include "sphere_re/geometry.hpp"

#include <algorithm>
#include <string>

#include "sphere_re/error.hpp"

namespace sphere_re {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::degenerate_shape: return "degenerate_shape";
    case ErrorCode::unrealizable_shape: return "unrealizable_shape";
    case ErrorCode::singular_separation: return "singular_separation";
    case ErrorCode::coordinate_singularity: return "coordinate_singularity";
    case ErrorCode::degenerate_normalization: return "degenerate_normalization";
    case ErrorCode::reconstruction_out_of_range: return "reconstruction_out_of_range";
    case ErrorCode::degenerate_discriminant: return "degenerate_discriminant";
    case ErrorCode::inconsistent_ratios: return "inconsistent_ratios";
    case ErrorCode::excluded_angle: return "excluded_angle";
    case ErrorCode::no_lre_for_repulsive: return "no_lre_for_repulsive";
    case ErrorCode::condition_not_satisfied: return "condition_not_satisfied";
    case ErrorCode::internal_error: return "internal_error";
  }
  return "unknown";
}

bool is_validation_error(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument:
    case ErrorCode::degenerate_shape:
    case ErrorCode::unrealizable_shape:
    case ErrorCode::excluded_angle:
      return true;
    default:
      return false;
  }
}

Masses::Masses(double m1, double m2, double m3) : m_{m1, m2, m3} {
  for (double m : m_) {
    if (!(m > 0.0) || !std::isfinite(m))
      throw Error(ErrorCode::invalid_argument, "masses must be positive and finite");
  }
}

double Shape3::between(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  if (i == 0 && j == 1) return sigma12;
  if (i == 1 && j == 2) return sigma23;
  if (i == 0 && j == 2) return sigma31;
  throw Error(ErrorCode::invalid_argument, "Shape3::between needs two distinct bodies");
}

double wrap_angle(double angle) {
  double w = std::remainder(angle, 2.0 * pi);
  if (w <= -pi) w += 2.0 * pi;
  return w;
}

double cos_arc_angle(const BodyPosition& p, const BodyPosition& q) {
  const double c = std::cos(p.theta) * std::cos(q.theta) +
                   std::sin(p.theta) * std::sin(q.theta) * std::cos(p.phi - q.phi);
  return std::clamp(c, -1.0, 1.0);
}

double arc_angle(const BodyPosition& p, const BodyPosition& q) {
  // atan2 of |u x v| and u.v keeps full precision near 0 and pi, where
  // acos of the clamped cosine loses half the digits.
  const Vec3 u = embed(p), v = embed(q);
  const double s = norm(cross(u, v));
  const double c = dot(u, v);
  return std::atan2(s, c);
}

Vec3 embed(const BodyPosition& p) {
  const double st = std::sin(p.theta);
  return {st * std::cos(p.phi), st * std::sin(p.phi), std::cos(p.theta)};
}

BodyPosition from_cartesian(const Vec3& x) {
  const double rho = std::hypot(x[0], x[1]);
  return {std::atan2(rho, x[2]), rho == 0.0 ? 0.0 : std::atan2(x[1], x[0])};
}

double half_chord(const BodyPosition& p, const BodyPosition& q) {
  return norm(embed(p) - embed(q)) / 2.0;
}

Shape3 raw_shape_of(const Config3& config) {
  return {arc_angle(config[0], config[1]), arc_angle(config[1], config[2]),
          arc_angle(config[2], config[0])};
}

Shape3 shape_of(const Config3& config) {
  const Shape3 s = raw_shape_of(config);
  for (double sigma : {s.sigma12, s.sigma23, s.sigma31}) {
    if (sigma < 1e-12 || sigma > pi - 1e-12)
      throw Error(ErrorCode::degenerate_shape,
                  "two bodies coincide or are antipodal (arc angle " +
                      std::to_string(sigma) + ")");
  }
  return s;
}

bool is_realizable(const Shape3& s, double tol) {
  const double a = s.sigma12, b = s.sigma23, c = s.sigma31;
  for (double sigma : {a, b, c}) {
    if (!(sigma > 0.0 && sigma < pi)) return false;
  }
  return a < b + c + tol && b < c + a + tol && c < a + b + tol &&
         a + b + c < 2.0 * pi + tol;
}

void require_realizable(const Shape3& s, double tol) {
  for (double sigma : {s.sigma12, s.sigma23, s.sigma31}) {
    if (!(sigma > 0.0 && sigma < pi))
      throw Error(ErrorCode::degenerate_shape, "arc angles must lie in (0, pi)");
  }
  if (!is_realizable(s, tol))
    throw Error(ErrorCode::unrealizable_shape,
                "arc angles violate the spherical triangle inequalities");
}

Config3 rotate(const Config3& config, const Mat3& rotation) {
  Config3 out;
  for (std::size_t k = 0; k < 3; ++k) out[k] = from_cartesian(rotation * embed(config[k]));
  return out;
}

Shape3 meridian_arc_angles(const std::array<double, 3>& t) {
  return {std::abs(wrap_angle(t[0] - t[1])), std::abs(wrap_angle(t[1] - t[2])),
          std::abs(wrap_angle(t[2] - t[0]))};
}

}  // namespace sphere_re
