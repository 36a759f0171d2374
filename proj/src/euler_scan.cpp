#include "sphere_re/euler_scan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "roots.hpp"
#include "sphere_re/error.hpp"
#include "sphere_re/euler_re.hpp"
#include "sphere_re/parallel.hpp"

namespace sphere_re {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
// Relative size below which a grid value is treated as an exact zero.
constexpr double kSnap = 1e-12;

}  // namespace

std::string_view to_string(EreHitKind kind) {
  switch (kind) {
    case EreHitKind::scalene: return "scalene";
    case EreHitKind::isosceles: return "isosceles";
    case EreHitKind::degenerate: return "degenerate";
    case EreHitKind::singular: return "singular";
  }
  return "unknown";
}

std::size_t EreScanResult::count(EreHitKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(hits.begin(), hits.end(), [&](const EreHit& h) { return h.kind == kind; }));
}

EreHitKind classify_meridian_shape(const MeridianShape3& shape, const Masses& masses) {
  const auto th = shape.offsets();
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j)
      if (std::abs(std::sin(th[i] - th[j])) < 1e-6) return EreHitKind::singular;
  if (discriminant(shape, masses).A < 1e-8 * masses.total()) return EreHitKind::degenerate;
  // Mirror symmetry about the apex k up to an antipodal flip:
  // (theta_i - theta_k) + (theta_j - theta_k) = 0 mod pi.
  double d = 1.0;
  for (std::size_t k = 0; k < 3; ++k) {
    const std::size_t i = (k + 1) % 3, j = (k + 2) % 3;
    d = std::min(d, std::abs(std::sin(th[i] + th[j] - 2.0 * th[k])));
  }
  return d < 1e-9 ? EreHitKind::isosceles : EreHitKind::scalene;
}

EreScanResult ere_scan(const Masses& masses, const Potential& u, const EreScanOptions& opt) {
  if (opt.grid < 2) throw Error(ErrorCode::invalid_argument, "grid must be at least 2");
  if (!kernels::isa_supported(opt.isa))
    throw Error(ErrorCode::invalid_argument, "requested kernel ISA is not supported");

  const std::size_t n = static_cast<std::size_t>(opt.grid);
  EreScanResult res;
  res.grid = opt.grid;
  res.rows = n + 1;
  res.cols = 2 * n + 1;
  res.isa = opt.isa;

  std::vector<double> xs(res.cols), sx(res.cols), cx(res.cols);
  for (std::size_t j = 0; j < res.cols; ++j) {
    xs[j] = -pi + pi * static_cast<double>(j) / static_cast<double>(n);
    sx[j] = std::sin(xs[j]);
    cx[j] = std::cos(xs[j]);
  }

  const int sign = u.cotangent_sign();
  // Cotangent family: g up to the constant sign; otherwise det itself.
  auto scalar_fn = [&](double a, double x) -> double {
    if (sign != 0) return sign * g_general({0.0, a, x}, masses);
    try {
      const MeridianShape3 sh{a, x};
      const FGPair f = fg_pair(sh, masses, u);
      return (f.g12 - f.g23) * (f.f31 - f.f12) - (f.g31 - f.g12) * (f.f12 - f.f23);
    } catch (const Error&) {
      return kNaN;
    }
  };

  std::vector<std::vector<EreHit>> per_row(res.rows);
  // Rows a = 0 and a = pi put bodies 1 and 2 on a singular pair.
  parallel_for(res.rows - 2, [&](std::size_t r) {
    const std::size_t i = r + 1;
    const double a = pi * static_cast<double>(i) / static_cast<double>(n);
    std::vector<double> vals(res.cols);
    if (sign != 0) {
      kernels::EreRow row{masses[0], masses[1], masses[2], std::sin(a), std::cos(a)};
      kernels::ere_g_row(opt.isa, row, sx.data(), cx.data(), vals.data(), res.cols);
      if (sign < 0)
        for (double& v : vals) v = -v;
    } else {
      for (std::size_t j = 0; j < res.cols; ++j) vals[j] = scalar_fn(a, xs[j]);
    }
    // Nodes on curves where the function vanishes identically carry pure
    // rounding noise whose sign differs between kernels. Snap them to zero
    // so the hit set does not depend on the ISA.
    double row_scale = 0.0;
    for (double v : vals)
      if (std::isfinite(v)) row_scale = std::max(row_scale, std::abs(v));
    for (double& v : vals)
      if (std::abs(v) <= kSnap * row_scale) v = 0.0;

    auto& out = per_row[i];
    auto emit = [&](double x) {
      EreHit h;
      h.shape = {a, x};
      h.value = scalar_fn(a, x);
      h.kind = classify_meridian_shape(h.shape, masses);
      out.push_back(h);
    };
    for (std::size_t j = 0; j + 1 < res.cols; ++j) {
      const double v0 = vals[j], v1 = vals[j + 1];
      if (!std::isfinite(v0) || !std::isfinite(v1)) continue;
      if (v0 == 0.0) {
        emit(xs[j]);
        continue;
      }
      if (!(v0 * v1 < 0.0)) continue;
      const double lo = xs[j], hi = xs[j + 1];
      const double flo = scalar_fn(a, lo), fhi = scalar_fn(a, hi);
      double root;
      if (flo * fhi < 0.0)
        root = detail::refine_root([&](double x) { return scalar_fn(a, x); }, lo, hi, flo, fhi);
      else
        root = std::abs(flo) <= std::abs(fhi) ? lo : hi;
      emit(root);
    }
  });

  for (auto& row : per_row) res.hits.insert(res.hits.end(), row.begin(), row.end());
  return res;
}

}  // namespace sphere_re
