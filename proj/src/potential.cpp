#include "sphere_re/potential.hpp"

#include <cmath>

#include "sphere_re/error.hpp"
#include "sphere_re/geometry.hpp"

namespace sphere_re {
namespace {

double guarded_sin2(double cos_sigma) {
  const double s2 = 1.0 - cos_sigma * cos_sigma;
  if (!(s2 >= kSingularSin2))
    throw Error(ErrorCode::singular_separation,
                "pair separation is singular (|cos sigma| = " +
                    std::to_string(std::abs(cos_sigma)) + ")");
  return s2;
}

double cot_value(double c) { return c / std::sqrt(guarded_sin2(c)); }
double cot_derivative(double c) {
  const double s2 = guarded_sin2(c);
  return 1.0 / (s2 * std::sqrt(s2));
}

}  // namespace

Potential::Potential(PotentialKind kind, std::string name, Fn value, Fn derivative,
                     bool attractive)
    : kind_(kind),
      name_(std::move(name)),
      value_(std::move(value)),
      derivative_(std::move(derivative)),
      attractive_(attractive) {}

Potential Potential::cotangent() {
  return {PotentialKind::cotangent, "cotangent", cot_value, cot_derivative, true};
}

Potential Potential::negated_cotangent() {
  return {PotentialKind::negated_cotangent, "negated-cotangent",
          [](double c) { return -cot_value(c); },
          [](double c) { return -cot_derivative(c); }, false};
}

Potential Potential::custom(std::string name, Fn value, Fn derivative, bool attractive) {
  if (!value || !derivative)
    throw Error(ErrorCode::invalid_argument, "custom potential needs U and U'");
  return {PotentialKind::custom, std::move(name), std::move(value), std::move(derivative),
          attractive};
}

Potential Potential::by_name(std::string_view name) {
  if (name == "cotangent") return cotangent();
  if (name == "negated-cotangent") return negated_cotangent();
  throw Error(ErrorCode::invalid_argument, "unknown potential: " + std::string(name));
}

double Potential::value(double cos_sigma) const {
  if (kind_ == PotentialKind::custom) guarded_sin2(cos_sigma);
  return value_(cos_sigma);
}

double Potential::derivative(double cos_sigma) const {
  if (kind_ == PotentialKind::custom) guarded_sin2(cos_sigma);
  return derivative_(cos_sigma);
}

double Potential::derivative_meridian(double theta_diff) const {
  const double s = std::sin(theta_diff);
  const double s2 = s * s;
  if (!(s2 >= kSingularSin2))
    throw Error(ErrorCode::singular_separation,
                "meridian pair separation is singular (theta_ij = " +
                    std::to_string(theta_diff) + ")");
  switch (kind_) {
    case PotentialKind::cotangent: return 1.0 / (s2 * std::abs(s));
    case PotentialKind::negated_cotangent: return -1.0 / (s2 * std::abs(s));
    case PotentialKind::custom: break;
  }
  return derivative_(std::cos(theta_diff));
}

Potential Potential::negated() const {
  switch (kind_) {
    case PotentialKind::cotangent: return negated_cotangent();
    case PotentialKind::negated_cotangent: return cotangent();
    case PotentialKind::custom: break;
  }
  Fn u = value_, du = derivative_;
  return {PotentialKind::custom, "negated-" + name_, [u](double c) { return -u(c); },
          [du](double c) { return -du(c); }, !attractive_};
}

bool Potential::check_sign(int samples) const {
  for (int i = 0; i < samples; ++i) {
    const double sigma = pi * (i + 0.5) / samples;
    const double d = derivative(std::cos(sigma));
    if (!std::isfinite(d) || (attractive_ ? !(d > 0.0) : !(d < 0.0))) return false;
  }
  return true;
}

int Potential::cotangent_sign() const {
  switch (kind_) {
    case PotentialKind::cotangent: return 1;
    case PotentialKind::negated_cotangent: return -1;
    case PotentialKind::custom: break;
  }
  return 0;
}

}  // namespace sphere_re
