#pragma once

// Non-collinear relative equilibria: the eigenvector condition on J, the
// rotation rate, and reconstruction of the rotating configuration.

#include <array>

#include "sphere_re/geometry.hpp"
#include "sphere_re/potential.hpp"
#include "sphere_re/vec3.hpp"

namespace sphere_re {

/// One of the four copies sharing the same arc angles.
struct Orientation {
  bool north = true;          ///< cos theta_k > 0
  bool negative_dphi = true;  ///< sin(phi_i - phi_j) < 0 for (1,2), (2,3), (3,1)
};

struct LreCandidate {
  Shape3 shape;
  Vec3 psi_L;
  double lambda = 0.0;
  std::array<double, 3> cos_theta{};
  std::array<double, 3> phi_diffs{};  ///< (phi1 - phi2, phi2 - phi3, phi3 - phi1)
  double omega2 = 0.0;
  Orientation orientation;
  /// Largest deviation of cos sigma_ij recomputed from (theta, dphi).
  double shape_mismatch = 0.0;
  /// |sum of phi_diffs| reduced mod 2 pi.
  double winding_mismatch = 0.0;

  /// phi_1 = 0, phi_2 = -(phi1 - phi2), phi_3 = phi_2 - (phi2 - phi3).
  Config3 config() const;
};

/// Psi_L proportional to (sqrt(m1)/U'23, sqrt(m2)/U'31, sqrt(m3)/U'12), unit
/// norm. Throws no_lre_for_repulsive unless every U' is positive.
Vec3 lre_eigvec_target(const Shape3& shape, const Masses& masses, const Potential& u);

/// J Psi_L - (Psi_L^T J Psi_L) Psi_L; zero iff the shape rotates rigidly.
Vec3 lre_condition_residual(const Shape3& shape, const Masses& masses, const Potential& u);

/// omega^2 = U'12 U'23 U'31 sum_k m_k / U'_opp(k)^2.
double lre_omega2(const Shape3& shape, const Masses& masses, const Potential& u);

/// Builds the rotating configuration. Throws reconstruction_out_of_range if
/// a required |cos| exceeds 1, unrealizable_shape for impossible triangles.
LreCandidate lre_reconstruct(const Shape3& shape, const Masses& masses, const Potential& u,
                             Orientation orientation = {});

/// omega^2 = U'(cos sigma_ij) sum m cos^2 theta / (cos theta_i cos theta_j),
/// averaged over the three pairs of a placed configuration.
double lre_omega2_from_config(const Config3& config, const Masses& masses, const Potential& u);

/// Spread of U'12 cos theta_3, U'23 cos theta_1, U'31 cos theta_2 relative
/// to their mean magnitude.
double lre_axis_balance(const Config3& config, const Masses& masses, const Potential& u);

/// Equal-mass cotangent condition: with
/// R_ij = (cos s_jk sin^3 s_ki + sin^3 s_jk cos s_ki) / sin^3 s_ij, returns
/// (R12 - R23, R23 - R31, R31 - R12).
std::array<double, 3> equal_mass_lre_residuals(const Shape3& shape);

/// q = cos s (2 sin^6 s - sin^6 s12) - sin^3 s cos s12 sin^3 s12.
double isosceles_lre_q(double sigma, double sigma12);

double isosceles_lre_dq(double sigma, double sigma12);

/// Newton refinement of a root of q(., sigma12) to 1e-14 from a nearby guess.
double polish_isosceles_lre(double sigma, double sigma12);

/// Rejects omega^2 <= 0: no LRE is a fixed point.
bool no_fixed_point_lre_check(double omega2);

/// Same check on a shape; throws no_lre_for_repulsive for repulsive U.
bool no_fixed_point_lre_check(const Shape3& shape, const Masses& masses, const Potential& u);

}  // namespace sphere_re
