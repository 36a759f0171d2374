#pragma once

// Dynamical verification of candidate relative equilibria by fixed-step
// RK4 integration of the Lagrangian equations of motion.

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sphere_re/dynamics.hpp"
#include "sphere_re/geometry.hpp"
#include "sphere_re/potential.hpp"

namespace sphere_re {

/// A configuration claimed to rotate rigidly about z at rate sqrt(omega2).
/// Meridian candidates carry signed thetas with phi = 0 and are integrated
/// in the reduced theta system.
struct ReCandidate {
  std::string label;
  Config3 config{};
  double omega2 = 0.0;
  bool meridian = false;

  std::array<double, 3> thetas() const {
    return {config[0].theta, config[1].theta, config[2].theta};
  }
};

struct IntegrationOptions {
  double T = 10.0;
  double dt = 1e-3;
  std::size_t record_every = 0;  ///< 0 keeps only the endpoints
};

struct Trajectory {
  std::vector<double> t;
  std::vector<PhaseState> states;
};

using StepObserver = std::function<void(double t, const PhaseState& s)>;

/// RK4 on the full spherical equations. The observer sees every step,
/// including t = 0. Singularities raise IntegrationAborted with the time of
/// the last completed step.
Trajectory integrate(const PhaseState& initial, const Masses& masses, const Potential& u,
                     const IntegrationOptions& options, const StepObserver& observer = {});

struct MeridianState {
  std::array<double, 3> theta{};
  std::array<double, 3> theta_dot{};
};

using MeridianObserver = std::function<void(double t, const MeridianState& s)>;

/// RK4 on the reduced meridian system with fixed omega^2.
MeridianState integrate_meridian(const MeridianState& initial, double omega2,
                                 const Masses& masses, const Potential& u,
                                 const IntegrationOptions& options,
                                 const MeridianObserver& observer = {});

using CartesianObserver = std::function<void(double t, const CartesianState& s)>;

/// RK4 in R^3 with the bodies constrained to the sphere by the centripetal
/// term: a = (F - (F.x) x)/m - |v|^2 x. Has no coordinate singularities.
CartesianState integrate_cartesian(const CartesianState& initial, const Masses& masses,
                                   const Potential& u, const IntegrationOptions& options,
                                   const CartesianObserver& observer = {});

struct FirstIntegralDrift {
  double energy = 0.0;        ///< max |E(t) - E(0)| / max(1, |E(0)|)
  Vec3 momentum;              ///< per-component max |c(t) - c(0)| / max(1, |c(0)|)
  double max_momentum() const;
};

FirstIntegralDrift first_integral_drift(const Trajectory& trajectory, const Masses& masses,
                                        const Potential& u);

struct VerifyTolerances {
  double sigma = 1e-6;
  double energy = 1e-9;
  double momentum = 1e-9;
};

struct VerificationReport {
  std::string label;
  bool meridian = false;
  double omega2 = 0.0;
  double sigma_drift = 0.0;      ///< max |sigma_ij(t) - sigma_ij(0)|
  double theta_drift = 0.0;      ///< max |theta_k(t) - theta_k(0)|
  double rate_drift = 0.0;       ///< max |phi_dot_k(t) - omega|
  double rotating_frame_drift = 0.0;  ///< max |R_z(-omega t) x_k(t) - x_k(0)|
  double energy_drift = 0.0;
  Vec3 momentum_drift;
  double cxy_max = 0.0;          ///< max |c_x|, |c_y| along the trajectory
  std::size_t steps = 0;
  double dt = 0.0;
  double T = 0.0;
  bool aborted = false;
  std::string abort_reason;
  double abort_time = 0.0;
  bool pass = false;
};

/// Integrates the candidate and compares against rigid rotation. Failures
/// are report content, never exceptions.
VerificationReport verify_re(const ReCandidate& candidate, const Masses& masses,
                             const Potential& u, const IntegrationOptions& options = {},
                             const VerifyTolerances& tolerances = {});

/// Full-dynamics cross-check of a meridian candidate in Cartesian form.
VerificationReport verify_re_cartesian(const ReCandidate& candidate, const Masses& masses,
                                       const Potential& u,
                                       const IntegrationOptions& options = {},
                                       const VerifyTolerances& tolerances = {});

}  // namespace sphere_re
