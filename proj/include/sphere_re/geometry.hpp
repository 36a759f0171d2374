#pragma once

// Coordinates, arc angles and rotations on the unit sphere (R = 1).

#include <array>
#include <cmath>
#include <numbers>

#include "sphere_re/vec3.hpp"

namespace sphere_re {

inline constexpr double pi = std::numbers::pi;

/// Spherical coordinates of one body. In the standard mode theta is the
/// polar angle in [0, pi]; in meridian mode theta is the signed angle from
/// the north pole along the rotating meridian, in [-pi, pi], with phi = 0.
struct BodyPosition {
  double theta = 0.0;
  double phi = 0.0;
};

using Config3 = std::array<BodyPosition, 3>;

/// Positive body masses.
class Masses {
 public:
  Masses() : m_{1.0, 1.0, 1.0} {}
  Masses(double m1, double m2, double m3);

  static Masses equal(double m = 1.0) { return {m, m, m}; }

  double operator[](std::size_t i) const { return m_[i]; }
  double total() const { return m_[0] + m_[1] + m_[2]; }
  const std::array<double, 3>& values() const { return m_; }

 private:
  std::array<double, 3> m_;
};

/// Rotation-invariant triangle description: the three mutual arc angles.
struct Shape3 {
  double sigma12 = 0.0;
  double sigma23 = 0.0;
  double sigma31 = 0.0;

  /// Arc angle opposite body k (k = 0,1,2), i.e. sigma23, sigma31, sigma12.
  double opposite(std::size_t k) const {
    return k == 0 ? sigma23 : (k == 1 ? sigma31 : sigma12);
  }
  /// Arc angle between bodies i and j (0-based, i != j).
  double between(std::size_t i, std::size_t j) const;
};

/// Collinear shape on a rotating meridian: a = theta2 - theta1,
/// x = theta3 - theta1, with 0 < a < pi and -pi < x < pi.
struct MeridianShape3 {
  double a = 0.0;
  double x = 0.0;

  /// Offset of body 3 from the midpoint of bodies 1 and 2.
  double y() const { return x - a / 2.0; }

  /// theta_k - theta_1 for k = 1,2,3.
  std::array<double, 3> offsets() const { return {0.0, a, x}; }
};

/// Wrap an angle into (-pi, pi].
double wrap_angle(double angle);

/// Arc angle in [0, pi] between two bodies.
double arc_angle(const BodyPosition& p, const BodyPosition& q);

/// Cosine of the arc angle, clamped to [-1, 1].
double cos_arc_angle(const BodyPosition& p, const BodyPosition& q);

/// Embedding (sin t cos p, sin t sin p, cos t) in R^3.
Vec3 embed(const BodyPosition& p);

/// Spherical coordinates of a (not necessarily unit) nonzero vector.
BodyPosition from_cartesian(const Vec3& x);

/// Half the Euclidean chord between two bodies; equals sin(sigma/2).
double half_chord(const BodyPosition& p, const BodyPosition& q);

/// Pairwise arc angles. Throws degenerate_shape if two bodies coincide or
/// are antipodal (to 1e-12).
Shape3 shape_of(const Config3& config);

/// Pairwise arc angles without the degeneracy check.
Shape3 raw_shape_of(const Config3& config);

/// Strict triangle inequalities and perimeter < 2 pi, with slack `tol`.
bool is_realizable(const Shape3& shape, double tol = 1e-12);

/// Throws unrealizable_shape when the shape fails is_realizable, or
/// degenerate_shape when an arc angle is outside (0, pi).
void require_realizable(const Shape3& shape, double tol = 1e-12);

/// Apply a rotation to every body of a configuration.
Config3 rotate(const Config3& config, const Mat3& rotation);

/// Arc angles of a meridian configuration (phi = 0 for all bodies).
Shape3 meridian_arc_angles(const std::array<double, 3>& thetas);

}  // namespace sphere_re
