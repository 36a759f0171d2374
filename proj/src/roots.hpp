#pragma once

// Bracketed root refinement shared by the scans.

#include <cstdint>
#include <utility>

#include <boost/math/tools/roots.hpp>

namespace sphere_re::detail {

/// Root of f in [lo, hi] given f(lo) and f(hi) of opposite sign, refined by
/// TOMS 748 until the bracket is a few ulps wide.
template <class F>
double refine_root(F&& f, double lo, double hi, double flo, double fhi) {
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  std::uintmax_t iters = 200;
  const auto r = boost::math::tools::toms748_solve(
      f, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(50), iters);
  return 0.5 * (r.first + r.second);
}

}  // namespace sphere_re::detail
