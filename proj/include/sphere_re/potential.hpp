#pragma once

#include <functional>
#include <string>
#include <string_view>

namespace sphere_re {

enum class PotentialKind { cotangent, negated_cotangent, custom };

/// Pairwise potential U(cos sigma) and its derivative U'(cos sigma) with
/// respect to cos sigma. U' > 0 is attractive.
///
/// The Lagrangian is L = K + V with V = sum_{i<j} m_i m_j U(cos sigma_ij),
/// so the conserved energy along trajectories is K - V.
class Potential {
 public:
  using Fn = std::function<double(double)>;

  static Potential cotangent();
  static Potential negated_cotangent();
  /// User-supplied potential. `attractive` declares the sign of U'; call
  /// check_sign() to confirm it against sampled values.
  static Potential custom(std::string name, Fn value, Fn derivative, bool attractive);
  /// "cotangent" or "negated-cotangent". Throws invalid_argument otherwise.
  static Potential by_name(std::string_view name);

  PotentialKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  bool attractive() const { return attractive_; }

  /// U(cos sigma). Throws singular_separation when 1 - cos^2 < 1e-14.
  double value(double cos_sigma) const;
  /// U'(cos sigma). Same singularity guard as value().
  double derivative(double cos_sigma) const;
  /// U'(cos theta_ij) for a signed meridian difference theta_ij. For the
  /// cotangent family this is +-1/|sin theta_ij|^3, computed from the sine.
  double derivative_meridian(double theta_diff) const;

  /// The potential -U.
  Potential negated() const;

  /// Samples U' on sigma in (0, pi) and reports whether every sample has the
  /// declared sign.
  bool check_sign(int samples = 512) const;

  /// +1 for cotangent, -1 for negated cotangent, 0 for custom potentials.
  int cotangent_sign() const;

 private:
  Potential(PotentialKind kind, std::string name, Fn value, Fn derivative, bool attractive);

  PotentialKind kind_;
  std::string name_;
  Fn value_;
  Fn derivative_;
  bool attractive_;
};

/// Separation guard: pairs with 1 - cos^2 sigma below this are singular.
inline constexpr double kSingularSin2 = 1e-14;

}  // namespace sphere_re
