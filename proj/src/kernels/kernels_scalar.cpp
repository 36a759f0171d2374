#include <cmath>

#include "sphere_re/kernels.hpp"

namespace sphere_re::kernels::detail {

// g = m3 S12 (T31 - T23) + m1 S23 (T12 - T31) + m2 S31 (T23 - T12),
// S = sin|sin|, T = S sin 2theta, on offsets (0, a, x).
void ere_g_row_scalar(const EreRow& r, const double* sx, const double* cx, double* out,
                      std::size_t n) {
  const double s12 = -r.sin_a * std::abs(r.sin_a);
  const double t12 = s12 * (-2.0 * r.sin_a * r.cos_a);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = r.sin_a * cx[i] - r.cos_a * sx[i];
    const double cd = r.cos_a * cx[i] + r.sin_a * sx[i];
    const double s23 = d * std::abs(d);
    const double t23 = s23 * (2.0 * d * cd);
    const double s31 = sx[i] * std::abs(sx[i]);
    const double t31 = s31 * (2.0 * sx[i] * cx[i]);
    out[i] = r.m3 * s12 * (t31 - t23) + r.m1 * s23 * (t12 - t31) + r.m2 * s31 * (t23 - t12);
  }
}

void lre_q_row_scalar(const QRow& r, const double* ss, const double* cs, double* out,
                      std::size_t n) {
  const double s12_3 = r.sin12 * r.sin12 * r.sin12;
  const double k = s12_3 * s12_3;
  const double h = r.cos12 * s12_3;
  for (std::size_t i = 0; i < n; ++i) {
    const double s3 = ss[i] * ss[i] * ss[i];
    out[i] = cs[i] * (2.0 * s3 * s3 - k) - s3 * h;
  }
}

void lre_residual_row_scalar(const LreResidualRow& r, const double* s31, const double* c31,
                             double* out, std::size_t n) {
  const double p0 = r.sin23 * r.sin23 * r.sin23;
  const double p2 = r.sin12 * r.sin12 * r.sin12;
  for (std::size_t i = 0; i < n; ++i) {
    const double p1 = s31[i] * s31[i] * s31[i];
    const double inv = 1.0 / std::sqrt(p0 * p0 + p1 * p1 + p2 * p2);
    const double v0 = p0 * inv, v1 = p1 * inv, v2 = p2 * inv;
    const double j0 = 2.0 * v0 - r.cos12 * v1 - c31[i] * v2;
    const double j1 = -r.cos12 * v0 + 2.0 * v1 - r.cos23 * v2;
    const double j2 = -c31[i] * v0 - r.cos23 * v1 + 2.0 * v2;
    const double lambda = v0 * j0 + v1 * j1 + v2 * j2;
    const double e0 = j0 - lambda * v0, e1 = j1 - lambda * v1, e2 = j2 - lambda * v2;
    out[i] = std::sqrt(e0 * e0 + e1 * e1 + e2 * e2);
  }
}

}  // namespace sphere_re::kernels::detail
