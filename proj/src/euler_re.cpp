#include "sphere_re/euler_re.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sphere_re/dynamics.hpp"
#include "sphere_re/error.hpp"

namespace sphere_re {
namespace {

double signed_square_sin(double t) {
  const double s = std::sin(t);
  return s * std::abs(s);
}

double wrap_meridian(double t) { return wrap_angle(t); }

std::array<double, 3> offsets_plus(double theta1, const MeridianShape3& shape) {
  const auto d = shape.offsets();
  return {wrap_meridian(theta1 + d[0]), wrap_meridian(theta1 + d[1]),
          wrap_meridian(theta1 + d[2])};
}

// P and Q with (cos 2theta_1, sin 2theta_1) = s (P, Q) / A.
std::pair<double, double> branch_vector(const MeridianShape3& shape, const Masses& m) {
  const double p = m[0] + m[1] * std::cos(2.0 * shape.a) + m[2] * std::cos(2.0 * shape.x);
  const double q = -(m[1] * std::sin(2.0 * shape.a) + m[2] * std::sin(2.0 * shape.x));
  return {p, q};
}

void fill_residuals(EreSolution& sol, const Masses& masses, const Potential& u) {
  sol.residuals = meridian_re_residual(sol.theta, masses, sol.omega2, u);
  const double scale = meridian_force_scale(sol.theta, masses, sol.omega2, u);
  double worst = 0.0;
  for (double r : sol.residuals) worst = std::max(worst, std::abs(r));
  sol.relative_residual = scale > 0.0 ? worst / scale : worst;
}

}  // namespace

MeridianDiagnostics discriminant(const MeridianShape3& shape, const Masses& m) {
  const double t12 = -shape.a, t23 = shape.a - shape.x, t31 = shape.x;
  MeridianDiagnostics d;
  d.D = m[0] * m[0] + m[1] * m[1] + m[2] * m[2] +
        2.0 * (m[0] * m[1] * std::cos(2.0 * t12) + m[1] * m[2] * std::cos(2.0 * t23) +
               m[2] * m[0] * std::cos(2.0 * t31));
  const double M = m.total();
  if (d.D < -1e-12 * M * M)
    throw Error(ErrorCode::internal_error,
                "negative discriminant " + std::to_string(d.D) + " for a sum of squares");
  const auto [p, q] = branch_vector(shape, m);
  d.A = std::hypot(p, q);
  return d;
}

DegenerateConstraints degenerate_shape_constraints(const Masses& m) {
  DegenerateConstraints r;
  const double cos_u = (m[2] * m[2] - m[0] * m[0] - m[1] * m[1]) / (2.0 * m[0] * m[1]);
  if (std::abs(cos_u) > 1.0 + 1e-12) return r;
  r.attainable = true;
  r.boundary = std::abs(std::abs(cos_u) - 1.0) <= 1e-12;
  const double u0 = std::acos(std::clamp(cos_u, -1.0, 1.0));

  auto mod_pi = [](double t) {
    double v = std::fmod(t, pi);
    if (v < 0.0) v += pi;
    return v;
  };
  for (double u : {u0, -u0}) {
    // e^{iw} = -(m1 + m2 e^{iu}) / m3
    const double w = std::atan2(-m[1] * std::sin(u), -m[0] - m[1] * std::cos(u));
    const double a = mod_pi(-u / 2.0);
    const double x0 = mod_pi(-w / 2.0);
    for (double x : {x0, x0 - pi}) {
      DegenerateShape ds;
      ds.shape = {a, x};
      const auto th = ds.shape.offsets();
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j)
          if (std::abs(std::sin(th[i] - th[j])) < 1e-9) ds.singular = true;
      if (!ds.singular && !(a > 0.0)) ds.singular = true;
      const bool dup = std::any_of(r.shapes.begin(), r.shapes.end(), [&](const auto& o) {
        return std::abs(o.shape.a - a) < 1e-12 && std::abs(o.shape.x - x) < 1e-12;
      });
      if (!dup) r.shapes.push_back(ds);
    }
    if (u0 == 0.0) break;
  }
  return r;
}

std::array<double, 3> reconstruct_meridian(const MeridianShape3& shape, const Masses& m,
                                           int s) {
  if (s != 1 && s != -1) throw Error(ErrorCode::invalid_argument, "branch sign must be +-1");
  const auto [p, q] = branch_vector(shape, m);
  const double A = std::hypot(p, q);
  if (!(A > 1e-10 * m.total()))
    throw Error(ErrorCode::degenerate_discriminant,
                "A = " + std::to_string(A) + "; the branch is undetermined");
  const double theta1 = 0.5 * std::atan2(s * q, s * p);
  return offsets_plus(theta1, shape);
}

FGPair fg_pair(const MeridianShape3& shape, const Masses& m, const Potential& u) {
  const double t12 = -shape.a, t23 = shape.a - shape.x, t31 = shape.x;
  FGPair fg;
  fg.f12 = m[0] * m[1] * std::sin(t12) * u.derivative_meridian(t12);
  fg.f23 = m[1] * m[2] * std::sin(t23) * u.derivative_meridian(t23);
  fg.f31 = m[2] * m[0] * std::sin(t31) * u.derivative_meridian(t31);
  fg.g12 = m[0] * m[1] * std::sin(2.0 * t12);
  fg.g23 = m[1] * m[2] * std::sin(2.0 * t23);
  fg.g31 = m[2] * m[0] * std::sin(2.0 * t31);
  return fg;
}

ShapeDet ere_shape_det(const MeridianShape3& shape, const Masses& m, const Potential& u) {
  const auto diag = discriminant(shape, m);
  if (!(diag.A > 1e-10 * m.total()))
    throw Error(ErrorCode::degenerate_discriminant, "A = 0; det is not defined");
  ShapeDet r;
  r.fg = fg_pair(shape, m, u);
  const FGPair& f = r.fg;
  r.det = (f.g12 - f.g23) * (f.f31 - f.f12) - (f.g31 - f.g12) * (f.f12 - f.f23);
  r.scale = (std::abs(f.g12) + std::abs(f.g23)) * (std::abs(f.f31) + std::abs(f.f12)) +
            (std::abs(f.g31) + std::abs(f.g12)) * (std::abs(f.f12) + std::abs(f.f23));
  return r;
}

EreOmega ere_omega2(const MeridianShape3& shape, const Masses& m, const Potential& u) {
  const auto diag = discriminant(shape, m);
  if (!(diag.A > 1e-10 * m.total()))
    throw Error(ErrorCode::degenerate_discriminant, "A = 0; use the direct solver");
  const FGPair f = fg_pair(shape, m, u);
  const std::array<double, 3> dg{f.g12 - f.g23, f.g23 - f.g31, f.g31 - f.g12};
  const std::array<double, 3> df{f.f12 - f.f23, f.f23 - f.f31, f.f31 - f.f12};
  const double gs = std::max({std::abs(f.g12), std::abs(f.g23), std::abs(f.g31)});
  const double fs = std::max({std::abs(f.f12), std::abs(f.f23), std::abs(f.f31)});

  EreOmega r;
  const bool forces_vanish = std::all_of(df.begin(), df.end(),
                                         [&](double d) { return std::abs(d) <= 1e-10 * fs; });
  std::size_t best = 0;
  for (std::size_t k = 1; k < 3; ++k)
    if (std::abs(dg[k]) > std::abs(dg[best])) best = k;
  if (std::abs(dg[best]) <= 1e-9 * gs) {
    if (forces_vanish) return r;  // undetermined
    throw Error(ErrorCode::inconsistent_ratios,
                "the centrifugal side vanishes but the forces do not");
  }
  if (forces_vanish) {
    r.kind = OmegaKind::fixed_point;
    return r;
  }
  r.ratio = df[best] / dg[best];
  for (std::size_t k = 0; k < 3; ++k) {
    if (std::abs(df[k] - r.ratio * dg[k]) > 1e-8 * (fs + std::abs(r.ratio) * gs))
      throw Error(ErrorCode::inconsistent_ratios,
                  "pair ratios disagree; the shape does not satisfy det = 0");
  }
  r.kind = OmegaKind::rotating;
  r.s = r.ratio > 0.0 ? 1 : -1;
  r.omega2 = 2.0 * diag.A * std::abs(r.ratio);
  return r;
}

EreSolution solve_meridian_direct(const MeridianShape3& shape, const Masses& m,
                                  const Potential& u) {
  const auto d = shape.offsets();
  std::array<double, 3> rhs{};
  double fscale = 0.0;
  for (std::size_t k = 0; k < 3; ++k) {
    for (std::size_t j = 0; j < 3; ++j) {
      if (j == k) continue;
      const double t = d[k] - d[j];
      const double term = m[k] * m[j] * std::sin(t) * u.derivative_meridian(t);
      rhs[k] += term;
      fscale = std::max(fscale, std::abs(term));
    }
  }

  EreSolution sol;
  sol.shape = shape;
  sol.degenerate = true;
  const bool forces_vanish = std::all_of(rhs.begin(), rhs.end(),
                                         [&](double v) { return std::abs(v) <= 1e-10 * fscale; });
  if (forces_vanish) {
    sol.fixed_point = true;
    sol.theta = offsets_plus(0.0, shape);
    fill_residuals(sol, m, u);
    return sol;
  }

  // Columns (m_k sin 2d_k, m_k cos 2d_k) against unknowns (u, v).
  double n11 = 0.0, n12 = 0.0, n22 = 0.0, b1 = 0.0, b2 = 0.0;
  std::array<std::array<double, 2>, 3> rows{};
  for (std::size_t k = 0; k < 3; ++k) {
    rows[k] = {m[k] * std::sin(2.0 * d[k]), m[k] * std::cos(2.0 * d[k])};
    n11 += rows[k][0] * rows[k][0];
    n12 += rows[k][0] * rows[k][1];
    n22 += rows[k][1] * rows[k][1];
    b1 += rows[k][0] * rhs[k];
    b2 += rows[k][1] * rhs[k];
  }
  const double det = n11 * n22 - n12 * n12;
  if (!(std::abs(det) > 1e-14 * (n11 + n22) * (n11 + n22)))
    throw Error(ErrorCode::degenerate_shape, "meridian system is rank deficient");
  const double uu = (n22 * b1 - n12 * b2) / det;
  const double vv = (n11 * b2 - n12 * b1) / det;

  double misfit = 0.0;
  for (std::size_t k = 0; k < 3; ++k)
    misfit = std::max(misfit, std::abs(rows[k][0] * uu + rows[k][1] * vv - rhs[k]));
  if (misfit > 1e-8 * fscale)
    throw Error(ErrorCode::condition_not_satisfied,
                "shape is not a meridian relative equilibrium (misfit " +
                    std::to_string(misfit / fscale) + ")");

  sol.omega2 = 2.0 * std::hypot(uu, vv);
  sol.theta = offsets_plus(0.5 * std::atan2(vv, uu), shape);
  fill_residuals(sol, m, u);
  return sol;
}

EreSolution ere_solve(const MeridianShape3& shape, const Masses& m, const Potential& u) {
  if (!(shape.a > 0.0 && shape.a < pi && shape.x > -pi && shape.x < pi))
    throw Error(ErrorCode::invalid_argument, "meridian shape needs 0 < a < pi, -pi < x < pi");
  const auto diag = discriminant(shape, m);
  if (!(diag.A > 1e-10 * m.total())) return solve_meridian_direct(shape, m, u);

  const EreOmega w = ere_omega2(shape, m, u);
  if (w.kind == OmegaKind::undetermined) return solve_meridian_direct(shape, m, u);

  EreSolution sol;
  sol.shape = shape;
  if (w.kind == OmegaKind::fixed_point) {
    sol.fixed_point = true;
    sol.theta = reconstruct_meridian(shape, m, 1);
  } else {
    sol.s = w.s;
    sol.omega2 = w.omega2;
    sol.theta = reconstruct_meridian(shape, m, w.s);
  }
  fill_residuals(sol, m, u);
  return sol;
}

std::optional<double> scalene_curve_cos2y(double a) {
  if (!(a > pi / 2.0 && a <= critical_angle_ac() + 1e-12)) return std::nullopt;
  const double c = std::cos(a), c2 = std::cos(2.0 * a), s = std::sin(a);
  double rad = c2 * c2 - 4.0 * c2 - 4.0;
  if (rad < 0.0) {
    if (rad < -1e-14) return std::nullopt;
    rad = 0.0;
  }
  double v = c + (s * s / c) * (c2 + std::sqrt(rad));
  if (std::abs(v) > 1.0) {
    if (std::abs(v) > 1.0 + 1e-12) return std::nullopt;
    v = std::copysign(1.0, v);
  }
  return v;
}

std::optional<MeridianShape3> scalene_curve_point(double a) {
  const auto c2y = scalene_curve_cos2y(a);
  if (!c2y) return std::nullopt;
  return MeridianShape3{a, a / 2.0 + 0.5 * std::acos(*c2y)};
}

double critical_angle_ac() {
  const double r = std::sqrt(78.0) / 9.0;
  return std::acos(-1.0 + (std::cbrt(1.0 + r) + std::cbrt(1.0 - r)) / 2.0);
}

double isosceles_f(double theta) {
  const double s2 = std::sin(2.0 * theta), s = std::sin(theta);
  const double as2 = std::abs(s2);
  return 2.0 * (1.0 / (as2 * as2 * as2) + 1.0 / (s * s * s2));
}

IsoscelesEre isosceles_ere_classify(double theta, const Potential& u) {
  if (!(theta > 0.0 && theta < pi))
    throw Error(ErrorCode::invalid_argument, "isosceles arc must lie in (0, pi)");
  if (u.cotangent_sign() == 0)
    throw Error(ErrorCode::invalid_argument, "isosceles classifier needs a cotangent potential");
  if (std::abs(theta - pi / 2.0) < 1e-12)
    throw Error(ErrorCode::excluded_angle, "theta = pi/2 puts the outer bodies antipodal");

  IsoscelesEre r;
  if (std::abs(theta - 2.0 * pi / 3.0) < 1e-12) {
    r.branch = IsoscelesBranch::fixed_point;
    r.theta3 = 0.0;
  } else if (theta < 2.0 * pi / 3.0) {
    r.branch = IsoscelesBranch::pole;
    r.theta3 = 0.0;
    r.omega2 = isosceles_f(theta);
  } else {
    r.branch = IsoscelesBranch::equator;
    r.theta3 = pi / 2.0;
    r.omega2 = -isosceles_f(theta);
  }
  if (u.cotangent_sign() < 0 && r.branch != IsoscelesBranch::fixed_point)
    r.theta3 += pi / 2.0;
  r.theta3 = wrap_angle(r.theta3);
  r.theta = {wrap_angle(r.theta3 - theta), wrap_angle(r.theta3 + theta), r.theta3};
  return r;
}

EreSolution repulsive_mirror(const EreSolution& ere) {
  if (ere.fixed_point) return ere;
  EreSolution r = ere;
  for (auto& t : r.theta) t = wrap_angle(t + pi / 2.0);
  r.s = -ere.s;
  for (auto& v : r.residuals) v = -v;
  return r;
}

double g_general(const std::array<double, 3>& th, const Masses& m) {
  const double t12 = th[0] - th[1], t23 = th[1] - th[2], t31 = th[2] - th[0];
  const double s12 = signed_square_sin(t12), s23 = signed_square_sin(t23),
               s31 = signed_square_sin(t31);
  const double q12 = s12 * std::sin(2.0 * t12), q23 = s23 * std::sin(2.0 * t23),
               q31 = s31 * std::sin(2.0 * t31);
  return m[2] * s12 * (q31 - q23) + m[0] * s23 * (q12 - q31) + m[1] * s31 * (q23 - q12);
}

double g_equal_mass(double a, double x) {
  const double sx = signed_square_sin(x), sa = signed_square_sin(a),
               sxa = signed_square_sin(x - a);
  return sx * (std::sin(2.0 * x) + std::sin(2.0 * a)) * (sxa - sa) -
         sxa * (std::sin(2.0 * a) - std::sin(2.0 * (x - a))) * (sa + sx);
}

double euler_quintic(double x, const Masses& m) {
  const double m1 = m[0], m2 = m[1], m3 = m[2];
  return ((((m1 + m2) * x + (3 * m1 + 2 * m2)) * x + (3 * m1 + m2)) * x - (m2 + 3 * m3)) * x *
             x -
         (2 * m2 + 3 * m3) * x - (m2 + m3);
}

}  // namespace sphere_re
