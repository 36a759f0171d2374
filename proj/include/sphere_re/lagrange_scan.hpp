#pragma once

// Equal-mass cotangent LRE scans: the isosceles family over sigma12 and a
// grid-plus-polish search of the scalene region.

#include <cstddef>
#include <string>
#include <vector>

#include "sphere_re/geometry.hpp"
#include "sphere_re/kernels.hpp"

namespace sphere_re {

struct IsoscelesLrePoint {
  double sigma12 = 0.0;
  double sigma = 0.0;  ///< sigma23 = sigma31
  double omega2 = 0.0;
  double lambda = 0.0;
  double residual = 0.0;  ///< |J Psi_L - lambda Psi_L|
  bool equilateral = false;
};

struct IsoscelesScanOptions {
  int sigma12_grid = 512;  ///< sigma12 = pi i / grid for 0 < i < grid
  int sigma_grid = 4096;   ///< bracketing nodes for q along sigma
  kernels::Isa isa = kernels::active_isa();
};

struct IsoscelesScanResult {
  std::vector<IsoscelesLrePoint> points;  ///< ordered by sigma12, then sigma
  double max_residual = 0.0;
  /// max |q(pi - sigma, pi - sigma12)| over the hits.
  double max_symmetry_q = 0.0;
  /// Largest distance from a hit's mirror (pi - sigma12, pi - sigma) to
  /// the nearest hit on the mirrored row, over mirrors that are realizable.
  double max_pairing_mismatch = 0.0;
};

/// Realizable roots of q(., sigma12), polished to 1e-14, ascending.
std::vector<double> isosceles_lre_roots(double sigma12, int sigma_grid = 4096,
                                        kernels::Isa isa = kernels::active_isa());

IsoscelesScanResult isosceles_lre_scan(const IsoscelesScanOptions& options = {});

struct ScaleneSearchOptions {
  int resolution = 200;        ///< nodes pi (i + 1/2) / resolution per axis
  double edge_margin = 0.02;   ///< slack on every realizability inequality
  int locus_exclusion = 2;     ///< minimum index gap between sorted arcs
  int polish_starts = 64;
  double locus_distance = 1e-3;
  double floor = 1e-8;
  kernels::Isa isa = kernels::active_isa();
};

struct ScaleneSearchReport {
  int resolution = 0;
  std::size_t shapes_scanned = 0;
  double grid_min_residual = 0.0;
  Shape3 grid_min_shape;
  std::size_t starts_polished = 0;
  std::size_t converged_to_locus = 0;
  std::size_t left_region = 0;
  std::size_t stayed_off_locus = 0;
  double off_locus_min_residual = 0.0;  ///< over starts that stayed off-locus
  Shape3 off_locus_min_shape;
  double floor = 0.0;
  bool found_below_floor = false;
  std::string note;
};

/// Searches sigma12 < sigma23 < sigma31 (all orderings are equivalent for
/// equal masses) away from the isosceles loci. Evidence only.
ScaleneSearchReport scalene_lre_search(const ScaleneSearchOptions& options = {});

/// Smallest |sigma_i - sigma_j| over the three pairs.
double isosceles_distance(const Shape3& shape);

}  // namespace sphere_re
