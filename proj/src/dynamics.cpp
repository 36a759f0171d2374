#include "sphere_re/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sphere_re/error.hpp"

namespace sphere_re {
namespace {

constexpr std::array<std::array<std::size_t, 2>, 3> kPairs{{{0, 1}, {1, 2}, {2, 0}}};

double pair_cos(const PhaseState& s, std::size_t i, std::size_t j) {
  const double c = std::cos(s.theta[i]) * std::cos(s.theta[j]) +
                   std::sin(s.theta[i]) * std::sin(s.theta[j]) * std::cos(s.phi[i] - s.phi[j]);
  return std::clamp(c, -1.0, 1.0);
}

}  // namespace

PhaseState PhaseState::rigid(const Config3& config, double omega) {
  PhaseState s;
  for (std::size_t k = 0; k < 3; ++k) {
    s.theta[k] = config[k].theta;
    s.phi[k] = config[k].phi;
    s.phi_dot[k] = omega;
  }
  return s;
}

double kinetic_energy(const PhaseState& s, const Masses& masses) {
  double k = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    const double st = std::sin(s.theta[i]);
    k += 0.5 * masses[i] *
         (s.theta_dot[i] * s.theta_dot[i] + st * st * s.phi_dot[i] * s.phi_dot[i]);
  }
  return k;
}

double potential_energy(const Config3& config, const Masses& masses, const Potential& u) {
  double v = 0.0;
  for (auto [i, j] : kPairs) v += masses[i] * masses[j] * u.value(cos_arc_angle(config[i], config[j]));
  return v;
}

double energy(const PhaseState& s, const Masses& masses, const Potential& u) {
  return kinetic_energy(s, masses) - potential_energy(s.config(), masses, u);
}

AngularMomentum angular_momentum(const PhaseState& s, const Masses& masses) {
  AngularMomentum c;
  for (std::size_t k = 0; k < 3; ++k) {
    const double m = masses[k];
    const double st = std::sin(s.theta[k]), ct = std::cos(s.theta[k]);
    const double sp = std::sin(s.phi[k]), cp = std::cos(s.phi[k]);
    c.cx += m * (-sp * s.theta_dot[k] - st * ct * cp * s.phi_dot[k]);
    c.cy += m * (cp * s.theta_dot[k] - st * ct * sp * s.phi_dot[k]);
    c.cz += m * st * st * s.phi_dot[k];
  }
  return c;
}

AngularMomentum rigid_rotation_momentum(const Config3& config, const Masses& masses,
                                        double omega) {
  AngularMomentum c;
  for (std::size_t k = 0; k < 3; ++k) {
    const double st = std::sin(config[k].theta), ct = std::cos(config[k].theta);
    c.cx -= omega * masses[k] * st * ct * std::cos(config[k].phi);
    c.cy -= omega * masses[k] * st * ct * std::sin(config[k].phi);
    c.cz += omega * masses[k] * st * st;
  }
  return c;
}

PotentialGradient potential_gradient(const Config3& config, const Masses& masses,
                                     const Potential& u) {
  PotentialGradient g;
  for (std::size_t k = 0; k < 3; ++k) {
    const double stk = std::sin(config[k].theta), ctk = std::cos(config[k].theta);
    for (std::size_t j = 0; j < 3; ++j) {
      if (j == k) continue;
      const double stj = std::sin(config[j].theta), ctj = std::cos(config[j].theta);
      const double dphi = config[k].phi - config[j].phi;
      const double w = masses[k] * masses[j] * u.derivative(cos_arc_angle(config[k], config[j]));
      g.d_theta[k] += w * (-stk * ctj + ctk * stj * std::cos(dphi));
      g.d_phi[k] += w * (-stk * stj * std::sin(dphi));
    }
  }
  return g;
}

Accelerations eom_accelerations(const PhaseState& s, const Masses& masses,
                                const Potential& u) {
  for (std::size_t k = 0; k < 3; ++k) {
    const double st = std::sin(s.theta[k]);
    if (!(st * st >= kSingularSin2))
      throw Error(ErrorCode::coordinate_singularity,
                  "body " + std::to_string(k + 1) + " is at a pole; phi_ddot is undefined");
  }
  for (auto [i, j] : kPairs) {
    const double c = pair_cos(s, i, j);
    if (!(1.0 - c * c >= kSingularSin2))
      throw Error(ErrorCode::singular_separation, "bodies " + std::to_string(i + 1) + " and " +
                                                      std::to_string(j + 1) +
                                                      " collide or are antipodal");
  }
  const PotentialGradient g = potential_gradient(s.config(), masses, u);
  Accelerations a;
  for (std::size_t k = 0; k < 3; ++k) {
    const double st = std::sin(s.theta[k]), ct = std::cos(s.theta[k]);
    a.theta_ddot[k] = st * ct * s.phi_dot[k] * s.phi_dot[k] + g.d_theta[k] / masses[k];
    a.phi_ddot[k] =
        (g.d_phi[k] / masses[k] - 2.0 * st * ct * s.theta_dot[k] * s.phi_dot[k]) / (st * st);
  }
  return a;
}

std::array<double, 3> meridian_accelerations(const std::array<double, 3>& t, double omega2,
                                             const Masses& masses, const Potential& u) {
  std::array<double, 3> acc{};
  for (std::size_t k = 0; k < 3; ++k) {
    double pull = 0.0;
    for (std::size_t j = 0; j < 3; ++j) {
      if (j == k) continue;
      const double d = t[k] - t[j];
      pull += masses[j] * std::sin(d) * u.derivative_meridian(d);
    }
    acc[k] = 0.5 * omega2 * std::sin(2.0 * t[k]) - pull;
  }
  return acc;
}

std::array<double, 3> meridian_re_residual(const std::array<double, 3>& t,
                                           const Masses& masses, double omega2,
                                           const Potential& u) {
  const auto acc = meridian_accelerations(t, omega2, masses, u);
  return {masses[0] * acc[0], masses[1] * acc[1], masses[2] * acc[2]};
}

double meridian_force_scale(const std::array<double, 3>& t, const Masses& masses,
                            double omega2, const Potential& u) {
  double scale = 0.0;
  for (std::size_t k = 0; k < 3; ++k) {
    scale = std::max(scale, std::abs(0.5 * omega2 * masses[k] * std::sin(2.0 * t[k])));
    for (std::size_t j = 0; j < 3; ++j) {
      if (j == k) continue;
      const double d = t[k] - t[j];
      scale = std::max(scale,
                       std::abs(masses[k] * masses[j] * std::sin(d) * u.derivative_meridian(d)));
    }
  }
  return scale;
}

double meridian_potential_energy(const std::array<double, 3>& t, const Masses& masses,
                                 const Potential& u) {
  double v = 0.0;
  for (auto [i, j] : kPairs) v += masses[i] * masses[j] * u.value(std::cos(t[i] - t[j]));
  return v;
}

double meridian_jacobi_integral(const std::array<double, 3>& t,
                                const std::array<double, 3>& td, double omega2,
                                const Masses& masses, const Potential& u) {
  double e = 0.0;
  for (std::size_t k = 0; k < 3; ++k) {
    const double s = std::sin(t[k]);
    e += 0.5 * masses[k] * (td[k] * td[k] - omega2 * s * s);
  }
  return e - meridian_potential_energy(t, masses, u);
}

CartesianState to_cartesian(const PhaseState& s) {
  CartesianState c;
  for (std::size_t k = 0; k < 3; ++k) {
    const double st = std::sin(s.theta[k]), ct = std::cos(s.theta[k]);
    const double sp = std::sin(s.phi[k]), cp = std::cos(s.phi[k]);
    c.x[k] = {st * cp, st * sp, ct};
    const double td = s.theta_dot[k], pd = s.phi_dot[k];
    c.v[k] = {ct * cp * td - st * sp * pd, ct * sp * td + st * cp * pd, -st * td};
  }
  return c;
}

PhaseState from_cartesian(const CartesianState& c) {
  PhaseState s;
  for (std::size_t k = 0; k < 3; ++k) {
    const Vec3 x = normalized(c.x[k]);
    const Vec3& v = c.v[k];
    const double rho2 = x[0] * x[0] + x[1] * x[1];
    if (!(rho2 >= kSingularSin2))
      throw Error(ErrorCode::coordinate_singularity,
                  "body " + std::to_string(k + 1) + " is at a pole");
    const BodyPosition p = sphere_re::from_cartesian(x);
    s.theta[k] = p.theta;
    s.phi[k] = p.phi;
    s.theta_dot[k] = -v[2] / std::sqrt(rho2);
    s.phi_dot[k] = (x[0] * v[1] - x[1] * v[0]) / rho2;
  }
  return s;
}

PhaseState rotate_state(const PhaseState& s, const Mat3& rotation) {
  CartesianState c = to_cartesian(s);
  for (std::size_t k = 0; k < 3; ++k) {
    c.x[k] = rotation * c.x[k];
    c.v[k] = rotation * c.v[k];
  }
  return from_cartesian(c);
}

EuclideanLimitReport euclidean_limit_check(const PlanarState& p, const Masses& masses,
                                           double epsilon) {
  if (!(epsilon > 0.0))
    throw Error(ErrorCode::invalid_argument, "epsilon must be positive");
  PhaseState s;
  for (std::size_t k = 0; k < 3; ++k) {
    s.theta[k] = epsilon * p.r[k];
    s.phi[k] = p.phi[k];
    s.theta_dot[k] = epsilon * p.r_dot[k];
    s.phi_dot[k] = p.phi_dot[k];
  }
  // With R = 1/epsilon: c(R) = R^2 c(unit sphere), so c_xy/R = c_xy/epsilon
  // and c_z = c_z/epsilon^2.
  const AngularMomentum c = angular_momentum(s, masses);
  EuclideanLimitReport r;
  r.epsilon = epsilon;
  r.spherical = {c.cx / epsilon, c.cy / epsilon, c.cz / (epsilon * epsilon)};

  double px = 0.0, py = 0.0, cz = 0.0;
  for (std::size_t k = 0; k < 3; ++k) {
    const double cp = std::cos(p.phi[k]), sp = std::sin(p.phi[k]);
    px += masses[k] * (p.r_dot[k] * cp - p.r[k] * sp * p.phi_dot[k]);
    py += masses[k] * (p.r_dot[k] * sp + p.r[k] * cp * p.phi_dot[k]);
    cz += masses[k] * p.r[k] * p.r[k] * p.phi_dot[k];
  }
  r.planar = {-py, px, cz};
  for (std::size_t i = 0; i < 3; ++i)
    r.deviation = std::max(r.deviation, std::abs(r.spherical[i] - r.planar[i]));
  return r;
}

}  // namespace sphere_re
