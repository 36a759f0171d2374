#pragma once

// Lagrangian mechanics of three bodies on the unit sphere.
//
// Sign convention: L = K + V with V = sum_{i<j} m_i m_j U(cos sigma_ij).
// The conserved energy is therefore E = K - V, not K + V.

#include <array>

#include "sphere_re/geometry.hpp"
#include "sphere_re/potential.hpp"
#include "sphere_re/vec3.hpp"

namespace sphere_re {

struct PhaseState {
  std::array<double, 3> theta{};
  std::array<double, 3> phi{};
  std::array<double, 3> theta_dot{};
  std::array<double, 3> phi_dot{};

  Config3 config() const {
    return {BodyPosition{theta[0], phi[0]}, BodyPosition{theta[1], phi[1]},
            BodyPosition{theta[2], phi[2]}};
  }
  /// Rigid rotation about z at rate omega from the given configuration.
  static PhaseState rigid(const Config3& config, double omega);
};

struct AngularMomentum {
  double cx = 0.0;
  double cy = 0.0;
  double cz = 0.0;
  Vec3 vec() const { return {cx, cy, cz}; }
};

struct Accelerations {
  std::array<double, 3> theta_ddot{};
  std::array<double, 3> phi_ddot{};
};

/// dV/dtheta_k and dV/dphi_k.
struct PotentialGradient {
  std::array<double, 3> d_theta{};
  std::array<double, 3> d_phi{};
};

double kinetic_energy(const PhaseState& s, const Masses& masses);
double potential_energy(const Config3& config, const Masses& masses, const Potential& u);
/// E = K - V.
double energy(const PhaseState& s, const Masses& masses, const Potential& u);

AngularMomentum angular_momentum(const PhaseState& s, const Masses& masses);

/// Closed form of the angular momentum for theta_dot = 0, phi_dot = omega.
AngularMomentum rigid_rotation_momentum(const Config3& config, const Masses& masses,
                                        double omega);

PotentialGradient potential_gradient(const Config3& config, const Masses& masses,
                                     const Potential& u);

/// Euler-Lagrange accelerations. Throws coordinate_singularity when a body
/// is at a pole (phi_ddot undefined) and singular_separation from U'.
Accelerations eom_accelerations(const PhaseState& s, const Masses& masses,
                                const Potential& u);

/// Reduced system on a meridian rotating at a fixed rate:
/// theta_ddot_k = (omega^2/2) sin 2 theta_k - sum_j m_j sin(theta_kj) U'(cos theta_kj).
std::array<double, 3> meridian_accelerations(const std::array<double, 3>& thetas,
                                             double omega2, const Masses& masses,
                                             const Potential& u);

/// Residuals (omega^2/2) m_k sin 2 theta_k - m_k sum_j m_j sin(theta_kj) U'.
std::array<double, 3> meridian_re_residual(const std::array<double, 3>& thetas,
                                           const Masses& masses, double omega2,
                                           const Potential& u);

/// Largest magnitude among the individual terms of meridian_re_residual.
/// Dividing by it gives a scale-free residual.
double meridian_force_scale(const std::array<double, 3>& thetas, const Masses& masses,
                            double omega2, const Potential& u);

/// Potential energy of a meridian configuration (phi = 0, signed thetas).
double meridian_potential_energy(const std::array<double, 3>& thetas, const Masses& masses,
                                 const Potential& u);

/// Conserved quantity of the reduced meridian system:
/// sum m theta_dot^2 / 2 - (omega^2/2) sum m sin^2 theta - V.
double meridian_jacobi_integral(const std::array<double, 3>& thetas,
                                const std::array<double, 3>& theta_dots, double omega2,
                                const Masses& masses, const Potential& u);

/// Position and velocity of each body in R^3.
struct CartesianState {
  std::array<Vec3, 3> x{};
  std::array<Vec3, 3> v{};
};

CartesianState to_cartesian(const PhaseState& s);
/// Inverse of to_cartesian. Throws coordinate_singularity at a pole.
PhaseState from_cartesian(const CartesianState& c);

/// Apply a rigid rotation of R^3 to positions and velocities.
PhaseState rotate_state(const PhaseState& s, const Mat3& rotation);

/// Planar state in polar coordinates on the tangent plane at the north pole.
struct PlanarState {
  std::array<double, 3> r{};
  std::array<double, 3> phi{};
  std::array<double, 3> r_dot{};
  std::array<double, 3> phi_dot{};
};

struct EuclideanLimitReport {
  double epsilon = 0.0;
  Vec3 spherical;  ///< (c_x/R, c_y/R, c_z) on a sphere of radius R = 1/epsilon
  Vec3 planar;     ///< (-p_y, p_x, C_z)
  double deviation = 0.0;  ///< max component difference
};

/// Places the planar state on a sphere of radius 1/epsilon (theta = epsilon r)
/// and compares the rescaled angular momentum with the planar integrals.
EuclideanLimitReport euclidean_limit_check(const PlanarState& planar, const Masses& masses,
                                           double epsilon);

}  // namespace sphere_re
