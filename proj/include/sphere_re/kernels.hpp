#pragma once

// Row kernels for the grid scans. Each kernel evaluates one grid row with
// the per-axis sines and cosines precomputed, so the inner loops are pure
// arithmetic. The scalar variant is the reference; vector variants must
// agree with it to rounding.

#include <cstddef>
#include <string_view>
#include <vector>

namespace sphere_re::kernels {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);

/// Compiled in and supported by the running CPU.
bool isa_supported(Isa isa);

std::vector<Isa> supported_isas();

/// Best supported ISA, unless SPHERE_RE_SIMD names another supported one
/// ("scalar" or "avx2"). Resolved once per process.
Isa active_isa();

/// Row of the cotangent ERE numerator g at fixed a = theta_2 - theta_1,
/// over x = theta_3 - theta_1.
struct EreRow {
  double m1 = 1.0, m2 = 1.0, m3 = 1.0;
  double sin_a = 0.0, cos_a = 1.0;
};

void ere_g_row(Isa isa, const EreRow& row, const double* sin_x, const double* cos_x,
               double* out, std::size_t n);

/// Row of the equal-mass isosceles LRE polynomial q(sigma, sigma12) at
/// fixed sigma12, over sigma.
struct QRow {
  double sin12 = 0.0, cos12 = 1.0;
};

void lre_q_row(Isa isa, const QRow& row, const double* sin_s, const double* cos_s,
               double* out, std::size_t n);

/// Row of the equal-mass cotangent LRE residual |J Psi_L - lambda Psi_L| at
/// fixed (sigma12, sigma23), over sigma31. Inputs must have positive sines.
struct LreResidualRow {
  double sin12 = 0.0, cos12 = 1.0;
  double sin23 = 0.0, cos23 = 1.0;
};

void lre_residual_row(Isa isa, const LreResidualRow& row, const double* sin31,
                      const double* cos31, double* out, std::size_t n);

namespace detail {
void ere_g_row_scalar(const EreRow&, const double*, const double*, double*, std::size_t);
void lre_q_row_scalar(const QRow&, const double*, const double*, double*, std::size_t);
void lre_residual_row_scalar(const LreResidualRow&, const double*, const double*, double*,
                             std::size_t);
#if SPHERE_RE_HAVE_AVX2
void ere_g_row_avx2(const EreRow&, const double*, const double*, double*, std::size_t);
void lre_q_row_avx2(const QRow&, const double*, const double*, double*, std::size_t);
void lre_residual_row_avx2(const LreResidualRow&, const double*, const double*, double*,
                           std::size_t);
#endif
}  // namespace detail

}  // namespace sphere_re::kernels
