#include "sphere_re/lagrange_scan.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "roots.hpp"
#include "sphere_re/error.hpp"
#include "sphere_re/inertia.hpp"
#include "sphere_re/lagrange_re.hpp"
#include "sphere_re/parallel.hpp"

namespace sphere_re {
namespace {

struct AxisTable {
  std::vector<double> t, s, c;
};

AxisTable interior_nodes(int n) {
  AxisTable a;
  for (int j = 1; j < n; ++j) {
    const double t = pi * j / n;
    a.t.push_back(t);
    a.s.push_back(std::sin(t));
    a.c.push_back(std::cos(t));
  }
  return a;
}

double residual_norm(const Shape3& s) {
  return norm(lre_condition_residual(s, Masses::equal(), Potential::cotangent()));
}

bool inside(const Shape3& s, double margin) {
  const double a = s.sigma12, b = s.sigma23, c = s.sigma31;
  for (double v : {a, b, c})
    if (!(v > margin && v < pi - margin)) return false;
  return a < b + c - margin && b < c + a - margin && c < a + b - margin &&
         a + b + c < 2.0 * pi - margin;
}

std::vector<double> roots_on(const AxisTable& ax, double sigma12, kernels::Isa isa) {
  std::vector<double> q(ax.t.size());
  kernels::lre_q_row(isa, kernels::QRow{std::sin(sigma12), std::cos(sigma12)}, ax.s.data(),
                     ax.c.data(), q.data(), q.size());
  auto f = [&](double s) { return isosceles_lre_q(s, sigma12); };
  std::vector<double> roots;
  for (std::size_t j = 0; j < q.size(); ++j) {
    double r;
    if (q[j] == 0.0) {
      r = ax.t[j];
    } else if (j + 1 < q.size() && q[j] * q[j + 1] < 0.0) {
      const double lo = ax.t[j], hi = ax.t[j + 1];
      const double flo = f(lo), fhi = f(hi);
      r = flo * fhi < 0.0 ? detail::refine_root(f, lo, hi, flo, fhi)
                          : (std::abs(flo) <= std::abs(fhi) ? lo : hi);
      r = polish_isosceles_lre(r, sigma12);
    } else {
      continue;
    }
    // Realizable: sigma12 < 2 sigma < 2 pi - sigma12.
    if (2.0 * r > sigma12 + 1e-12 && 2.0 * r < 2.0 * pi - sigma12 - 1e-12) roots.push_back(r);
  }
  return roots;
}

}  // namespace

double isosceles_distance(const Shape3& s) {
  return std::min({std::abs(s.sigma12 - s.sigma23), std::abs(s.sigma23 - s.sigma31),
                   std::abs(s.sigma31 - s.sigma12)});
}

std::vector<double> isosceles_lre_roots(double sigma12, int sigma_grid, kernels::Isa isa) {
  if (!(sigma12 > 0.0 && sigma12 < pi))
    throw Error(ErrorCode::invalid_argument, "sigma12 must lie in (0, pi)");
  if (sigma_grid < 2) throw Error(ErrorCode::invalid_argument, "sigma grid must be at least 2");
  return roots_on(interior_nodes(sigma_grid), sigma12, isa);
}

IsoscelesScanResult isosceles_lre_scan(const IsoscelesScanOptions& opt) {
  if (opt.sigma12_grid < 2 || opt.sigma_grid < 2)
    throw Error(ErrorCode::invalid_argument, "grids must have at least 2 points");
  if (!kernels::isa_supported(opt.isa))
    throw Error(ErrorCode::invalid_argument, "requested kernel ISA is not supported");
  const AxisTable ax = interior_nodes(opt.sigma_grid);
  const std::size_t n = static_cast<std::size_t>(opt.sigma12_grid);
  std::vector<std::vector<double>> rows(n);
  parallel_for(n - 1, [&](std::size_t r) {
    const double s12 = pi * static_cast<double>(r + 1) / static_cast<double>(n);
    rows[r + 1] = roots_on(ax, s12, opt.isa);
  });

  IsoscelesScanResult res;
  const Masses eq = Masses::equal();
  const Potential cot = Potential::cotangent();
  for (std::size_t i = 1; i < n; ++i) {
    const double s12 = pi * static_cast<double>(i) / static_cast<double>(n);
    for (double s : rows[i]) {
      IsoscelesLrePoint p;
      p.sigma12 = s12;
      p.sigma = s;
      const Shape3 shape{s12, s, s};
      p.equilateral = std::abs(s - s12) < 1e-9;
      p.omega2 = lre_omega2(shape, eq, cot);
      const Vec3 psi = lre_eigvec_target(shape, eq, cot);
      p.lambda = dot(psi, shape_matrix(shape, eq).m * psi);
      p.residual = residual_norm(shape);
      res.max_residual = std::max(res.max_residual, p.residual);
      res.max_symmetry_q = std::max(res.max_symmetry_q, std::abs(isosceles_lre_q(pi - s, pi - s12)));
      // The mirror can fall outside the realizable region; pair only when
      // it stays clear of the boundary.
      const double ms = pi - s, ms12 = pi - s12;
      if (2.0 * ms > ms12 + 1e-6 && 2.0 * ms < 2.0 * pi - ms12 - 1e-6) {
        double best = pi;
        for (double t : rows[n - i]) best = std::min(best, std::abs(t - ms));
        res.max_pairing_mismatch = std::max(res.max_pairing_mismatch, best);
      }
      res.points.push_back(p);
    }
  }
  return res;
}

namespace {

struct Start {
  double value;
  std::size_t i, j, k;
  bool operator<(const Start& o) const {
    return std::tie(value, i, j, k) < std::tie(o.value, o.i, o.j, o.k);
  }
};

enum class PolishEnd { off_locus, on_locus, left_region };

// Levenberg-Marquardt on the residual 3-vector with central differences.
std::pair<Shape3, PolishEnd> polish_scalene(Shape3 s, const ScaleneSearchOptions& opt) {
  auto vec = [](const Shape3& x) { return std::array<double, 3>{x.sigma12, x.sigma23, x.sigma31}; };
  auto shp = [](const std::array<double, 3>& v) { return Shape3{v[0], v[1], v[2]}; };
  auto res = [](const Shape3& x) { return lre_condition_residual(x, Masses::equal(), Potential::cotangent()); };

  std::array<double, 3> x = vec(s);
  Vec3 r = res(s);
  double cost = dot(r, r);
  double mu = 1e-3;
  for (int it = 0; it < 200 && cost > 1e-30; ++it) {
    double jac[3][3];
    for (std::size_t c = 0; c < 3; ++c) {
      const double h = 1e-7;
      auto xp = x, xm = x;
      xp[c] += h;
      xm[c] -= h;
      const Vec3 d = (res(shp(xp)) - res(shp(xm))) / (2.0 * h);
      for (std::size_t row = 0; row < 3; ++row) jac[row][c] = d[row];
    }
    Mat3 jtj;
    Vec3 jtr;
    for (std::size_t a = 0; a < 3; ++a) {
      for (std::size_t b = 0; b < 3; ++b)
        for (std::size_t row = 0; row < 3; ++row) jtj(a, b) += jac[row][a] * jac[row][b];
      for (std::size_t row = 0; row < 3; ++row) jtr[a] += jac[row][a] * r[row];
    }
    bool improved = false;
    for (int tries = 0; tries < 30 && !improved; ++tries) {
      Mat3 a = jtj;
      for (std::size_t d = 0; d < 3; ++d) a(d, d) += mu * std::max(jtj(d, d), 1e-12);
      const double det = a.determinant();
      if (!(std::abs(det) > 0.0)) {
        mu *= 10.0;
        continue;
      }
      // Cramer's rule on the 3x3 damped normal equations.
      std::array<double, 3> step{};
      for (std::size_t c = 0; c < 3; ++c) {
        Mat3 ac = a;
        for (std::size_t row = 0; row < 3; ++row) ac(row, c) = -jtr[row];
        step[c] = ac.determinant() / det;
      }
      std::array<double, 3> xn{x[0] + step[0], x[1] + step[1], x[2] + step[2]};
      const Shape3 sn = shp(xn);
      if (!inside(sn, 0.5 * opt.edge_margin)) {
        mu *= 10.0;
        continue;
      }
      const Vec3 rn = res(sn);
      const double cn = dot(rn, rn);
      if (cn < cost) {
        const double moved = std::abs(step[0]) + std::abs(step[1]) + std::abs(step[2]);
        x = xn;
        r = rn;
        cost = cn;
        mu = std::max(mu / 10.0, 1e-12);
        improved = true;
        if (moved < 1e-15) it = 200;
      } else {
        mu *= 10.0;
      }
    }
    if (!improved) break;
  }
  const Shape3 out = shp(x);
  if (isosceles_distance(out) < opt.locus_distance) return {out, PolishEnd::on_locus};
  if (!inside(out, opt.edge_margin)) return {out, PolishEnd::left_region};
  return {out, PolishEnd::off_locus};
}

}  // namespace

ScaleneSearchReport scalene_lre_search(const ScaleneSearchOptions& opt) {
  if (opt.resolution < 8) throw Error(ErrorCode::invalid_argument, "resolution must be >= 8");
  if (!kernels::isa_supported(opt.isa))
    throw Error(ErrorCode::invalid_argument, "requested kernel ISA is not supported");
  const std::size_t n = static_cast<std::size_t>(opt.resolution);
  const std::size_t gap = static_cast<std::size_t>(std::max(1, opt.locus_exclusion));
  std::vector<double> t(n), s(n), c(n);
  for (std::size_t i = 0; i < n; ++i) {
    t[i] = pi * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    s[i] = std::sin(t[i]);
    c[i] = std::cos(t[i]);
  }
  const std::size_t keep = static_cast<std::size_t>(std::max(1, opt.polish_starts));

  struct Slab {
    std::size_t scanned = 0;
    Start best{1e300, 0, 0, 0};
    std::vector<Start> starts;
  };
  std::vector<Slab> slabs(n);
  parallel_for(n, [&](std::size_t i) {
    Slab& sl = slabs[i];
    std::vector<double> vals(n);
    for (std::size_t j = i + gap; j < n; ++j) {
      const std::size_t k0 = j + gap;
      if (k0 >= n) break;
      kernels::lre_residual_row(opt.isa, kernels::LreResidualRow{s[i], c[i], s[j], c[j]},
                                s.data() + k0, c.data() + k0, vals.data(), n - k0);
      auto ok = [&](std::size_t k) { return inside(Shape3{t[i], t[j], t[k]}, opt.edge_margin); };
      for (std::size_t k = k0; k < n; ++k) {
        if (!ok(k)) continue;
        ++sl.scanned;
        const double v = vals[k - k0];
        if (Start{v, i, j, k} < sl.best) sl.best = {v, i, j, k};
        const bool left_min = k == k0 || !ok(k - 1) || vals[k - 1 - k0] >= v;
        const bool right_min = k + 1 >= n || !ok(k + 1) || vals[k + 1 - k0] >= v;
        if (left_min && right_min) sl.starts.push_back({v, i, j, k});
      }
    }
    std::sort(sl.starts.begin(), sl.starts.end());
    if (sl.starts.size() > keep) sl.starts.resize(keep);
  });

  ScaleneSearchReport rep;
  rep.resolution = opt.resolution;
  rep.floor = opt.floor;
  rep.note = "numerical evidence from a finite search, not a proof of nonexistence";
  Start best{1e300, 0, 0, 0};
  std::vector<Start> starts;
  for (const auto& sl : slabs) {
    rep.shapes_scanned += sl.scanned;
    if (sl.scanned > 0 && sl.best < best) best = sl.best;
    starts.insert(starts.end(), sl.starts.begin(), sl.starts.end());
  }
  if (rep.shapes_scanned == 0) return rep;
  rep.grid_min_residual = best.value;
  rep.grid_min_shape = {t[best.i], t[best.j], t[best.k]};
  std::sort(starts.begin(), starts.end());
  if (starts.size() > keep) starts.resize(keep);

  std::vector<std::pair<Shape3, PolishEnd>> polished(starts.size());
  parallel_for(starts.size(), [&](std::size_t q) {
    const Start& st = starts[q];
    polished[q] = polish_scalene(Shape3{t[st.i], t[st.j], t[st.k]}, opt);
  });

  rep.starts_polished = starts.size();
  rep.off_locus_min_residual = 1e300;
  for (const auto& [shape, end] : polished) {
    switch (end) {
      case PolishEnd::on_locus: ++rep.converged_to_locus; break;
      case PolishEnd::left_region: ++rep.left_region; break;
      case PolishEnd::off_locus: {
        ++rep.stayed_off_locus;
        const double v = residual_norm(shape);
        if (v < rep.off_locus_min_residual) {
          rep.off_locus_min_residual = v;
          rep.off_locus_min_shape = shape;
        }
        break;
      }
    }
  }
  // The grid itself is off-locus by construction.
  if (rep.grid_min_residual < rep.off_locus_min_residual) {
    rep.off_locus_min_residual = rep.grid_min_residual;
    rep.off_locus_min_shape = rep.grid_min_shape;
  }
  rep.found_below_floor = rep.off_locus_min_residual < opt.floor;
  return rep;
}

}  // namespace sphere_re
