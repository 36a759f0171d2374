#pragma once

// Inertia tensor of a configuration, the coordinate-free shape matrix J,
// and the principal-axis tests that pick candidate rotation axes.

#include <array>
#include <vector>

#include "sphere_re/geometry.hpp"
#include "sphere_re/vec3.hpp"

namespace sphere_re {

/// Symmetric inertia tensor I of three unit-sphere bodies.
struct InertiaTensor {
  Mat3 m;
  double xx() const { return m(0, 0); }
  double yy() const { return m(1, 1); }
  double zz() const { return m(2, 2); }
  double xy() const { return m(0, 1); }
  double xz() const { return m(0, 2); }
  double yz() const { return m(1, 2); }
};

/// Shape matrix J: diagonal (m2+m3, m3+m1, m1+m2), off-diagonal
/// -sqrt(m_i m_j) cos sigma_ij. Similar to I for the same shape.
struct ShapeMatrix {
  Mat3 m;
};

struct AxisCandidate {
  double lambda = 0.0;
  Vec3 psi;               ///< unit eigenvector
  int multiplicity = 1;   ///< eigenvalues within 1e-9 * trace, counting itself
  bool degenerate() const { return multiplicity > 1; }
};

/// Coefficients of lambda^3 + c2 lambda^2 + c1 lambda + c0.
struct CharPoly {
  double c2 = 0.0;
  double c1 = 0.0;
  double c0 = 0.0;
};

InertiaTensor inertia_of(const Config3& config, const Masses& masses);

ShapeMatrix shape_matrix(const Shape3& shape, const Masses& masses);

CharPoly char_poly_coeffs(const Mat3& matrix);

/// Body 3 at the pole, body 1 at (sigma31, 0), body 2 at (sigma23, alpha)
/// with alpha in [0, pi]. Throws unrealizable_shape if |cos alpha| > 1 + 1e-12.
Config3 canonical_placement(const Shape3& shape);

/// Cosine of the placement angle alpha (unclamped).
double placement_cos_alpha(const Shape3& shape);

/// Eigenpairs of a symmetric 3x3 matrix by cyclic Jacobi, ascending.
/// Eigenvectors are orthonormal; each is signed so that its largest
/// component is positive. Degenerate subspaces get a deterministic basis.
std::vector<AxisCandidate> principal_axes(const Mat3& symmetric);

struct AxisConditions {
  bool s1 = false;  ///< z-axis is an eigenvector of I
  bool s2 = false;  ///< I_xz = I_yz = 0
  bool s3 = false;  ///< Psi_theta is an eigenvector of J for sum m sin^2
  double residual_s1 = 0.0;
  double residual_s2 = 0.0;
  double residual_s3 = 0.0;
  bool agree() const { return s1 == s2 && s2 == s3; }
};

/// Evaluates the three equivalent statements on a configuration. Zero
/// means below 1e-10 * M. Throws degenerate_normalization when every body
/// sits on the equator.
AxisConditions axis_conditions_check(const Config3& config, const Masses& masses);

/// Psi_theta = (sqrt(m_k) cos theta_k) / norm. Throws
/// degenerate_normalization when sum m cos^2 vanishes.
Vec3 psi_theta(const Config3& config, const Masses& masses);

/// cos theta_k = sqrt(M - lambda) psi_k / sqrt(m_k). Values within 1e-10
/// of +-1 are clamped; beyond that reconstruction_out_of_range.
std::array<double, 3> cos_theta_from_eigenpair(const AxisCandidate& axis,
                                               const Masses& masses);

}  // namespace sphere_re
