#pragma once

// Collinear relative equilibria on a meridian rotating about the z-axis.
//
// Shapes are (a, x) = (theta_2 - theta_1, theta_3 - theta_1). Configurations
// are signed polar angles along the meridian with phi = 0.

#include <array>
#include <optional>
#include <vector>

#include "sphere_re/geometry.hpp"
#include "sphere_re/potential.hpp"

namespace sphere_re {

struct MeridianDiagnostics {
  double D = 0.0;
  double A = 0.0;         ///< sqrt(max(D, 0))
  int s = 0;              ///< branch sign, 0 when undetermined
  std::optional<double> omega2;
};

/// F_ij = m_i m_j sin(theta_ij) U'(cos theta_ij), G_ij = m_i m_j sin 2 theta_ij.
struct FGPair {
  double f12 = 0.0, f23 = 0.0, f31 = 0.0;
  double g12 = 0.0, g23 = 0.0, g31 = 0.0;
};

/// D = sum m^2 + 2 sum m_i m_j cos 2 theta_ij. Throws internal_error when D
/// is negative beyond rounding (it is a sum of two squares).
MeridianDiagnostics discriminant(const MeridianShape3& shape, const Masses& masses);

struct DegenerateShape {
  MeridianShape3 shape;
  bool singular = false;  ///< a pair coincides or is antipodal
};

struct DegenerateConstraints {
  bool attainable = false;  ///< m_k <= m_i + m_j for every k
  bool boundary = false;    ///< one of those holds with equality
  std::vector<DegenerateShape> shapes;  ///< every (a, x) with D = 0
};

/// Solves m1 + m2 e^{2i theta_12} + m3 e^{2i theta_13} = 0.
DegenerateConstraints degenerate_shape_constraints(const Masses& masses);

/// Configuration for branch s = +-1 with sum m sin 2 theta = 0. Throws
/// degenerate_discriminant when A <= 1e-10 M.
std::array<double, 3> reconstruct_meridian(const MeridianShape3& shape, const Masses& masses,
                                           int s);

struct ShapeDet {
  double det = 0.0;
  FGPair fg;
  double scale = 0.0;  ///< magnitude of the products entering det
};

FGPair fg_pair(const MeridianShape3& shape, const Masses& masses, const Potential& u);

/// det = (G12 - G23)(F31 - F12) - (G31 - G12)(F12 - F23).
ShapeDet ere_shape_det(const MeridianShape3& shape, const Masses& masses, const Potential& u);

enum class OmegaKind { rotating, fixed_point, undetermined };

struct EreOmega {
  OmegaKind kind = OmegaKind::undetermined;
  int s = 0;
  double omega2 = 0.0;
  double ratio = 0.0;  ///< s omega^2 / (2A)
};

/// Branch and rate from s omega^2/(2A) (G_ij - G_jk) = F_ij - F_jk. Throws
/// inconsistent_ratios when the usable pairs disagree beyond 1e-8.
EreOmega ere_omega2(const MeridianShape3& shape, const Masses& masses, const Potential& u);

struct EreSolution {
  MeridianShape3 shape;
  std::array<double, 3> theta{};
  int s = 0;                 ///< 0 on the degenerate path
  double omega2 = 0.0;
  bool fixed_point = false;
  bool degenerate = false;   ///< solved directly because A = 0
  std::array<double, 3> residuals{};
  double relative_residual = 0.0;  ///< max |residual| / force scale
};

/// Full solve for an ERE shape. Nondegenerate shapes go through the
/// discriminant branch; A = 0 shapes solve the meridian equations directly.
EreSolution ere_solve(const MeridianShape3& shape, const Masses& masses, const Potential& u);

/// Least-squares solve of m_k (v cos 2d_k + u sin 2d_k) = R_k for
/// (u, v) = (omega^2/2)(cos 2theta_1, sin 2theta_1). Throws
/// condition_not_satisfied when the shape is not an ERE.
EreSolution solve_meridian_direct(const MeridianShape3& shape, const Masses& masses,
                                  const Potential& u);

/// Equal-mass scalene branch: cos 2y as a function of a, or nullopt outside
/// pi/2 < a <= a_c.
std::optional<double> scalene_curve_cos2y(double a);

/// Point (a, a/2 + y) on the scalene branch with y >= 0.
std::optional<MeridianShape3> scalene_curve_point(double a);

/// Closed-form upper end of the scalene branch.
double critical_angle_ac();

/// f(theta) = 2 (1/|sin 2theta|^3 + 1/(sin^2 theta sin 2theta)).
double isosceles_f(double theta);

enum class IsoscelesBranch { pole, fixed_point, equator };

struct IsoscelesEre {
  IsoscelesBranch branch = IsoscelesBranch::pole;
  double theta3 = 0.0;
  double omega2 = 0.0;
  std::array<double, 3> theta{};
};

/// Equal-mass isosceles ERE with equal arcs theta. Throws excluded_angle at
/// theta = pi/2 and invalid_argument outside (0, pi) or for custom potentials.
IsoscelesEre isosceles_ere_classify(double theta, const Potential& u = Potential::cotangent());

/// The ERE of -U with the same shape: theta_k + pi/2, s negated.
EreSolution repulsive_mirror(const EreSolution& ere);

/// Cotangent numerator g with det = m1 m2 m3 g / (S12 S23 S31), S = sin|sin|.
double g_general(const std::array<double, 3>& thetas, const Masses& masses);

/// Equal-mass numerator written in (a, x).
double g_equal_mass(double a, double x);

/// Classical collinear quintic for planar positions 0, 1, 1 + x.
double euler_quintic(double x, const Masses& masses);

}  // namespace sphere_re
