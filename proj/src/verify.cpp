#include "sphere_re/verify.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sphere_re/error.hpp"

namespace sphere_re {
namespace {

constexpr std::array<std::array<std::size_t, 2>, 3> kPairs{{{0, 1}, {1, 2}, {2, 0}}};

std::size_t step_count(const IntegrationOptions& o) {
  if (!(o.dt > 0.0) || !(o.T >= 0.0) || !std::isfinite(o.T) || !std::isfinite(o.dt))
    throw Error(ErrorCode::invalid_argument, "need dt > 0 and T >= 0");
  return static_cast<std::size_t>(std::llround(o.T / o.dt));
}

// Linear combination y + h k over the packed phase state.
PhaseState axpy(const PhaseState& y, double h, const PhaseState& k) {
  PhaseState r;
  for (std::size_t i = 0; i < 3; ++i) {
    r.theta[i] = y.theta[i] + h * k.theta[i];
    r.phi[i] = y.phi[i] + h * k.phi[i];
    r.theta_dot[i] = y.theta_dot[i] + h * k.theta_dot[i];
    r.phi_dot[i] = y.phi_dot[i] + h * k.phi_dot[i];
  }
  return r;
}

PhaseState derivative(const PhaseState& y, const Masses& m, const Potential& u) {
  const Accelerations a = eom_accelerations(y, m, u);
  PhaseState d;
  d.theta = y.theta_dot;
  d.phi = y.phi_dot;
  d.theta_dot = a.theta_ddot;
  d.phi_dot = a.phi_ddot;
  return d;
}

bool finite(const PhaseState& s) {
  for (std::size_t i = 0; i < 3; ++i)
    if (!std::isfinite(s.theta[i]) || !std::isfinite(s.phi[i]) ||
        !std::isfinite(s.theta_dot[i]) || !std::isfinite(s.phi_dot[i]))
      return false;
  return true;
}

[[noreturn]] void abort_at(const Error& e, double t) {
  throw IntegrationAborted(e.code(), t, std::string(e.what()) + " at t = " + std::to_string(t));
}

std::array<Vec3, 3> cartesian_accel(const CartesianState& s, const Masses& m,
                                    const Potential& u) {
  std::array<Vec3, 3> a;
  for (std::size_t k = 0; k < 3; ++k) {
    const Vec3 xk = s.x[k];
    const double rk = norm(xk);
    Vec3 f;
    for (std::size_t j = 0; j < 3; ++j) {
      if (j == k) continue;
      const double c = std::clamp(dot(xk, s.x[j]) / (rk * norm(s.x[j])), -1.0, 1.0);
      f += (m[k] * m[j] * u.derivative(c)) * s.x[j];
    }
    const double r2 = rk * rk;
    a[k] = (f - (dot(f, xk) / r2) * xk) / m[k] - (dot(s.v[k], s.v[k]) / r2) * xk;
  }
  return a;
}

CartesianState cart_axpy(const CartesianState& y, double h, const std::array<Vec3, 3>& dx,
                         const std::array<Vec3, 3>& dv) {
  CartesianState r;
  for (std::size_t k = 0; k < 3; ++k) {
    r.x[k] = y.x[k] + h * dx[k];
    r.v[k] = y.v[k] + h * dv[k];
  }
  return r;
}

Vec3 rotate_z(const Vec3& v, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {c * v[0] - s * v[1], s * v[0] + c * v[1], v[2]};
}

double arc_between(const Vec3& p, const Vec3& q) { return std::atan2(norm(cross(p, q)), dot(p, q)); }

double cartesian_energy(const CartesianState& s, const Masses& m, const Potential& u) {
  double k = 0.0, v = 0.0;
  for (std::size_t i = 0; i < 3; ++i) k += 0.5 * m[i] * dot(s.v[i], s.v[i]);
  for (auto [i, j] : kPairs)
    v += m[i] * m[j] *
         u.value(std::clamp(dot(s.x[i], s.x[j]) / (norm(s.x[i]) * norm(s.x[j])), -1.0, 1.0));
  return k - v;
}

Vec3 cartesian_momentum(const CartesianState& s, const Masses& m) {
  Vec3 c;
  for (std::size_t i = 0; i < 3; ++i) c += m[i] * cross(s.x[i], s.v[i]);
  return c;
}

bool within(const VerificationReport& r, const VerifyTolerances& tol) {
  const double mom = std::max({r.momentum_drift[0], r.momentum_drift[1], r.momentum_drift[2]});
  return !r.aborted && r.sigma_drift < tol.sigma && r.energy_drift < tol.energy &&
         mom < tol.momentum && r.cxy_max < tol.momentum;
}

VerificationReport base_report(const ReCandidate& c, const IntegrationOptions& o) {
  VerificationReport r;
  r.label = c.label;
  r.meridian = c.meridian;
  r.omega2 = c.omega2;
  r.dt = o.dt;
  r.T = o.T;
  r.steps = step_count(o);
  return r;
}

// Tracks max |c(t) - c(0)| / max(1, |c(0)|) per component and max |c_x|, |c_y|.
struct MomentumTracker {
  Vec3 c0;
  double scale = 1.0;
  Vec3 drift;
  double cxy = 0.0;
  bool started = false;
  void observe(const Vec3& c) {
    if (!started) {
      c0 = c;
      scale = std::max(1.0, norm(c));
      started = true;
    }
    for (std::size_t i = 0; i < 3; ++i)
      drift[i] = std::max(drift[i], std::abs(c[i] - c0[i]) / scale);
    cxy = std::max({cxy, std::abs(c[0]), std::abs(c[1])});
  }
};

}  // namespace

double FirstIntegralDrift::max_momentum() const {
  return std::max({momentum[0], momentum[1], momentum[2]});
}

Trajectory integrate(const PhaseState& initial, const Masses& m, const Potential& u,
                     const IntegrationOptions& o, const StepObserver& observer) {
  const std::size_t n = step_count(o);
  Trajectory tr;
  PhaseState y = initial;
  auto record = [&](std::size_t i, double t) {
    const bool keep = i == 0 || i == n || (o.record_every > 0 && i % o.record_every == 0);
    if (keep) {
      tr.t.push_back(t);
      tr.states.push_back(y);
    }
    if (observer) observer(t, y);
  };
  record(0, 0.0);
  const double h = o.dt;
  for (std::size_t i = 1; i <= n; ++i) {
    const double t_prev = static_cast<double>(i - 1) * h;
    try {
      const PhaseState k1 = derivative(y, m, u);
      const PhaseState k2 = derivative(axpy(y, h / 2, k1), m, u);
      const PhaseState k3 = derivative(axpy(y, h / 2, k2), m, u);
      const PhaseState k4 = derivative(axpy(y, h, k3), m, u);
      PhaseState next = y;
      for (std::size_t b = 0; b < 3; ++b) {
        next.theta[b] += h / 6 * (k1.theta[b] + 2 * k2.theta[b] + 2 * k3.theta[b] + k4.theta[b]);
        next.phi[b] += h / 6 * (k1.phi[b] + 2 * k2.phi[b] + 2 * k3.phi[b] + k4.phi[b]);
        next.theta_dot[b] += h / 6 * (k1.theta_dot[b] + 2 * k2.theta_dot[b] +
                                      2 * k3.theta_dot[b] + k4.theta_dot[b]);
        next.phi_dot[b] += h / 6 * (k1.phi_dot[b] + 2 * k2.phi_dot[b] + 2 * k3.phi_dot[b] +
                                    k4.phi_dot[b]);
      }
      if (!finite(next)) throw Error(ErrorCode::singular_separation, "state became non-finite");
      y = next;
    } catch (const IntegrationAborted&) {
      throw;
    } catch (const Error& e) {
      abort_at(e, t_prev);
    }
    record(i, static_cast<double>(i) * h);
  }
  return tr;
}

MeridianState integrate_meridian(const MeridianState& initial, double omega2, const Masses& m,
                                 const Potential& u, const IntegrationOptions& o,
                                 const MeridianObserver& observer) {
  const std::size_t n = step_count(o);
  MeridianState y = initial;
  if (observer) observer(0.0, y);
  const double h = o.dt;
  auto f = [&](const MeridianState& s) {
    MeridianState d;
    d.theta = s.theta_dot;
    d.theta_dot = meridian_accelerations(s.theta, omega2, m, u);
    return d;
  };
  auto add = [](const MeridianState& s, double k, const MeridianState& d) {
    MeridianState r;
    for (std::size_t b = 0; b < 3; ++b) {
      r.theta[b] = s.theta[b] + k * d.theta[b];
      r.theta_dot[b] = s.theta_dot[b] + k * d.theta_dot[b];
    }
    return r;
  };
  for (std::size_t i = 1; i <= n; ++i) {
    const double t_prev = static_cast<double>(i - 1) * h;
    try {
      const MeridianState k1 = f(y), k2 = f(add(y, h / 2, k1)), k3 = f(add(y, h / 2, k2)),
                          k4 = f(add(y, h, k3));
      for (std::size_t b = 0; b < 3; ++b) {
        y.theta[b] += h / 6 * (k1.theta[b] + 2 * k2.theta[b] + 2 * k3.theta[b] + k4.theta[b]);
        y.theta_dot[b] += h / 6 * (k1.theta_dot[b] + 2 * k2.theta_dot[b] +
                                   2 * k3.theta_dot[b] + k4.theta_dot[b]);
        if (!std::isfinite(y.theta[b]) || !std::isfinite(y.theta_dot[b]))
          throw Error(ErrorCode::singular_separation, "state became non-finite");
      }
    } catch (const Error& e) {
      abort_at(e, t_prev);
    }
    if (observer) observer(static_cast<double>(i) * h, y);
  }
  return y;
}

CartesianState integrate_cartesian(const CartesianState& initial, const Masses& m,
                                   const Potential& u, const IntegrationOptions& o,
                                   const CartesianObserver& observer) {
  const std::size_t n = step_count(o);
  CartesianState y = initial;
  if (observer) observer(0.0, y);
  const double h = o.dt;
  for (std::size_t i = 1; i <= n; ++i) {
    const double t_prev = static_cast<double>(i - 1) * h;
    try {
      const auto a1 = cartesian_accel(y, m, u);
      const CartesianState y2 = cart_axpy(y, h / 2, y.v, a1);
      const auto a2 = cartesian_accel(y2, m, u);
      const CartesianState y3 = cart_axpy(y, h / 2, y2.v, a2);
      const auto a3 = cartesian_accel(y3, m, u);
      const CartesianState y4 = cart_axpy(y, h, y3.v, a3);
      const auto a4 = cartesian_accel(y4, m, u);
      for (std::size_t k = 0; k < 3; ++k) {
        y.x[k] += (h / 6) * (y.v[k] + 2.0 * y2.v[k] + 2.0 * y3.v[k] + y4.v[k]);
        y.v[k] += (h / 6) * (a1[k] + 2.0 * a2[k] + 2.0 * a3[k] + a4[k]);
        for (std::size_t d = 0; d < 3; ++d)
          if (!std::isfinite(y.x[k][d]) || !std::isfinite(y.v[k][d]))
            throw Error(ErrorCode::singular_separation, "state became non-finite");
      }
    } catch (const Error& e) {
      abort_at(e, t_prev);
    }
    if (observer) observer(static_cast<double>(i) * h, y);
  }
  return y;
}

FirstIntegralDrift first_integral_drift(const Trajectory& tr, const Masses& m,
                                        const Potential& u) {
  FirstIntegralDrift d;
  if (tr.states.empty()) return d;
  const double e0 = energy(tr.states.front(), m, u);
  const double escale = std::max(1.0, std::abs(e0));
  MomentumTracker mt;
  for (const auto& s : tr.states) {
    d.energy = std::max(d.energy, std::abs(energy(s, m, u) - e0) / escale);
    mt.observe(angular_momentum(s, m).vec());
  }
  d.momentum = mt.drift;
  return d;
}

VerificationReport verify_re(const ReCandidate& c, const Masses& m, const Potential& u,
                             const IntegrationOptions& o, const VerifyTolerances& tol) {
  VerificationReport r = base_report(c, o);
  if (!(c.omega2 >= 0.0) || !std::isfinite(c.omega2)) {
    r.aborted = true;
    r.abort_reason = "omega^2 must be finite and non-negative";
    return r;
  }
  const double omega = std::sqrt(c.omega2);
  MomentumTracker mt;
  double e0 = 0.0, escale = 1.0;
  bool first = true;

  try {
    if (c.meridian) {
      const auto th0 = c.thetas();
      const Shape3 s0 = meridian_arc_angles(th0);
      MeridianState init;
      init.theta = th0;
      integrate_meridian(init, c.omega2, m, u, o, [&](double t, const MeridianState& s) {
        const double ej = meridian_jacobi_integral(s.theta, s.theta_dot, c.omega2, m, u);
        if (first) {
          e0 = ej;
          escale = std::max(1.0, std::abs(ej));
          first = false;
        }
        r.energy_drift = std::max(r.energy_drift, std::abs(ej - e0) / escale);
        const Shape3 st = meridian_arc_angles(s.theta);
        r.sigma_drift = std::max({r.sigma_drift, std::abs(st.sigma12 - s0.sigma12),
                                  std::abs(st.sigma23 - s0.sigma23),
                                  std::abs(st.sigma31 - s0.sigma31)});
        for (std::size_t k = 0; k < 3; ++k) {
          const double dth = s.theta[k] - th0[k];
          r.theta_drift = std::max(r.theta_drift, std::abs(dth));
          r.rotating_frame_drift =
              std::max(r.rotating_frame_drift, 2.0 * std::abs(std::sin(dth / 2.0)));
        }
        PhaseState full;
        for (std::size_t k = 0; k < 3; ++k) {
          full.theta[k] = s.theta[k];
          full.theta_dot[k] = s.theta_dot[k];
          full.phi[k] = omega * t;
          full.phi_dot[k] = omega;
        }
        mt.observe(angular_momentum(full, m).vec());
      });
    } else {
      const PhaseState init = PhaseState::rigid(c.config, omega);
      const Config3 c0 = c.config;
      const Shape3 s0 = raw_shape_of(c0);
      integrate(init, m, u, o, [&](double t, const PhaseState& s) {
        const double e = energy(s, m, u);
        if (first) {
          e0 = e;
          escale = std::max(1.0, std::abs(e));
          first = false;
        }
        r.energy_drift = std::max(r.energy_drift, std::abs(e - e0) / escale);
        const Shape3 st = raw_shape_of(s.config());
        r.sigma_drift = std::max({r.sigma_drift, std::abs(st.sigma12 - s0.sigma12),
                                  std::abs(st.sigma23 - s0.sigma23),
                                  std::abs(st.sigma31 - s0.sigma31)});
        for (std::size_t k = 0; k < 3; ++k) {
          r.theta_drift = std::max(r.theta_drift, std::abs(s.theta[k] - c0[k].theta));
          r.rate_drift = std::max(r.rate_drift, std::abs(s.phi_dot[k] - omega));
          const Vec3 back = embed(BodyPosition{s.theta[k], s.phi[k] - omega * t});
          r.rotating_frame_drift = std::max(r.rotating_frame_drift, norm(back - embed(c0[k])));
        }
        mt.observe(angular_momentum(s, m).vec());
      });
    }
  } catch (const IntegrationAborted& e) {
    r.aborted = true;
    r.abort_reason = std::string(to_string(e.code())) + ": " + e.what();
    r.abort_time = e.time();
  } catch (const Error& e) {
    r.aborted = true;
    r.abort_reason = std::string(to_string(e.code())) + ": " + e.what();
  }
  r.momentum_drift = mt.drift;
  r.cxy_max = mt.cxy;
  r.pass = within(r, tol);
  return r;
}

VerificationReport verify_re_cartesian(const ReCandidate& c, const Masses& m,
                                       const Potential& u, const IntegrationOptions& o,
                                       const VerifyTolerances& tol) {
  VerificationReport r = base_report(c, o);
  if (!(c.omega2 >= 0.0) || !std::isfinite(c.omega2)) {
    r.aborted = true;
    r.abort_reason = "omega^2 must be finite and non-negative";
    return r;
  }
  const double omega = std::sqrt(c.omega2);
  const CartesianState init = to_cartesian(PhaseState::rigid(c.config, omega));
  std::array<double, 3> sig0{};
  for (std::size_t p = 0; p < 3; ++p)
    sig0[p] = arc_between(init.x[kPairs[p][0]], init.x[kPairs[p][1]]);
  MomentumTracker mt;
  double e0 = 0.0, escale = 1.0;
  bool first = true;
  try {
    integrate_cartesian(init, m, u, o, [&](double t, const CartesianState& s) {
      const double e = cartesian_energy(s, m, u);
      if (first) {
        e0 = e;
        escale = std::max(1.0, std::abs(e));
        first = false;
      }
      r.energy_drift = std::max(r.energy_drift, std::abs(e - e0) / escale);
      for (std::size_t p = 0; p < 3; ++p)
        r.sigma_drift = std::max(
            r.sigma_drift, std::abs(arc_between(s.x[kPairs[p][0]], s.x[kPairs[p][1]]) - sig0[p]));
      for (std::size_t k = 0; k < 3; ++k) {
        const Vec3 x = normalized(s.x[k]);
        const Vec3 x0 = init.x[k];
        r.theta_drift = std::max(
            r.theta_drift, std::abs(std::acos(std::clamp(x[2], -1.0, 1.0)) -
                                    std::acos(std::clamp(x0[2], -1.0, 1.0))));
        const double rho2 = x[0] * x[0] + x[1] * x[1];
        if (rho2 > 1e-12) {
          const Vec3 v = s.v[k];
          r.rate_drift = std::max(r.rate_drift, std::abs((x[0] * v[1] - x[1] * v[0]) / rho2 - omega));
        }
        r.rotating_frame_drift = std::max(r.rotating_frame_drift, norm(rotate_z(x, -omega * t) - x0));
      }
      mt.observe(cartesian_momentum(s, m));
    });
  } catch (const IntegrationAborted& e) {
    r.aborted = true;
    r.abort_reason = std::string(to_string(e.code())) + ": " + e.what();
    r.abort_time = e.time();
  } catch (const Error& e) {
    r.aborted = true;
    r.abort_reason = std::string(to_string(e.code())) + ": " + e.what();
  }
  r.momentum_drift = mt.drift;
  r.cxy_max = mt.cxy;
  r.pass = within(r, tol);
  return r;
}

}  // namespace sphere_re
