#pragma once

// Zero set of the ERE shape condition over the (a, x) plane.

#include <cstddef>
#include <string_view>
#include <vector>

#include "sphere_re/geometry.hpp"
#include "sphere_re/kernels.hpp"
#include "sphere_re/potential.hpp"

namespace sphere_re {

enum class EreHitKind { scalene, isosceles, degenerate, singular };

std::string_view to_string(EreHitKind kind);

struct EreHit {
  MeridianShape3 shape;
  double value = 0.0;  ///< scanned function at the refined root
  EreHitKind kind = EreHitKind::scalene;
};

struct EreScanOptions {
  int grid = 720;  ///< a has grid + 1 nodes on [0, pi], x has 2 grid + 1 on [-pi, pi]
  kernels::Isa isa = kernels::active_isa();
};

struct EreScanResult {
  int grid = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  kernels::Isa isa = kernels::Isa::scalar;
  std::vector<EreHit> hits;  ///< row-major order of the bracketing cell

  std::size_t count(EreHitKind kind) const;
};

/// Scans each row of constant a for sign changes in x and refines them.
/// Cotangent-family potentials scan the pole-free numerator g through the
/// row kernels; other potentials scan det directly.
EreScanResult ere_scan(const Masses& masses, const Potential& u,
                       const EreScanOptions& options = {});

/// Label a meridian shape: singular when some |sin theta_ij| < 1e-6,
/// degenerate when A < 1e-8 M, isosceles when mirror-symmetric about some body
/// modulo an antipodal flip (covers the pole and equator branches).
EreHitKind classify_meridian_shape(const MeridianShape3& shape, const Masses& masses);

}  // namespace sphere_re
