// Built with -mavx2 -mfma; only called after a runtime CPU check.

#include <immintrin.h>

#include "sphere_re/kernels.hpp"

namespace sphere_re::kernels::detail {
namespace {

inline __m256d vabs(__m256d v) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v); }

}  // namespace

void ere_g_row_avx2(const EreRow& r, const double* sx, const double* cx, double* out,
                    std::size_t n) {
  const double s12s = -r.sin_a * (r.sin_a < 0 ? -r.sin_a : r.sin_a);
  const double t12s = s12s * (-2.0 * r.sin_a * r.cos_a);
  const __m256d sa = _mm256_set1_pd(r.sin_a), ca = _mm256_set1_pd(r.cos_a);
  const __m256d s12 = _mm256_set1_pd(s12s), t12 = _mm256_set1_pd(t12s);
  const __m256d m1 = _mm256_set1_pd(r.m1), m2 = _mm256_set1_pd(r.m2), m3 = _mm256_set1_pd(r.m3);
  const __m256d two = _mm256_set1_pd(2.0);

  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d s = _mm256_loadu_pd(sx + i);
    const __m256d c = _mm256_loadu_pd(cx + i);
    const __m256d d = _mm256_fmsub_pd(sa, c, _mm256_mul_pd(ca, s));
    const __m256d cd = _mm256_fmadd_pd(ca, c, _mm256_mul_pd(sa, s));
    const __m256d s23 = _mm256_mul_pd(d, vabs(d));
    const __m256d t23 = _mm256_mul_pd(s23, _mm256_mul_pd(two, _mm256_mul_pd(d, cd)));
    const __m256d s31 = _mm256_mul_pd(s, vabs(s));
    const __m256d t31 = _mm256_mul_pd(s31, _mm256_mul_pd(two, _mm256_mul_pd(s, c)));
    __m256d g = _mm256_mul_pd(_mm256_mul_pd(m3, s12), _mm256_sub_pd(t31, t23));
    g = _mm256_fmadd_pd(_mm256_mul_pd(m1, s23), _mm256_sub_pd(t12, t31), g);
    g = _mm256_fmadd_pd(_mm256_mul_pd(m2, s31), _mm256_sub_pd(t23, t12), g);
    _mm256_storeu_pd(out + i, g);
  }
  if (i < n) ere_g_row_scalar(r, sx + i, cx + i, out + i, n - i);
}

void lre_q_row_avx2(const QRow& r, const double* ss, const double* cs, double* out,
                    std::size_t n) {
  const double s12_3 = r.sin12 * r.sin12 * r.sin12;
  const __m256d k = _mm256_set1_pd(s12_3 * s12_3);
  const __m256d h = _mm256_set1_pd(r.cos12 * s12_3);
  const __m256d two = _mm256_set1_pd(2.0);

  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d s = _mm256_loadu_pd(ss + i);
    const __m256d c = _mm256_loadu_pd(cs + i);
    const __m256d s3 = _mm256_mul_pd(_mm256_mul_pd(s, s), s);
    const __m256d inner = _mm256_fmsub_pd(two, _mm256_mul_pd(s3, s3), k);
    _mm256_storeu_pd(out + i, _mm256_fmsub_pd(c, inner, _mm256_mul_pd(s3, h)));
  }
  if (i < n) lre_q_row_scalar(r, ss + i, cs + i, out + i, n - i);
}

void lre_residual_row_avx2(const LreResidualRow& r, const double* s31, const double* c31,
                           double* out, std::size_t n) {
  const double p0s = r.sin23 * r.sin23 * r.sin23;
  const double p2s = r.sin12 * r.sin12 * r.sin12;
  const __m256d p0 = _mm256_set1_pd(p0s), p2 = _mm256_set1_pd(p2s);
  const __m256d base = _mm256_set1_pd(p0s * p0s + p2s * p2s);
  const __m256d c12 = _mm256_set1_pd(r.cos12), c23 = _mm256_set1_pd(r.cos23);
  const __m256d two = _mm256_set1_pd(2.0), one = _mm256_set1_pd(1.0);

  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d s = _mm256_loadu_pd(s31 + i);
    const __m256d c = _mm256_loadu_pd(c31 + i);
    const __m256d p1 = _mm256_mul_pd(_mm256_mul_pd(s, s), s);
    const __m256d inv = _mm256_div_pd(one, _mm256_sqrt_pd(_mm256_fmadd_pd(p1, p1, base)));
    const __m256d v0 = _mm256_mul_pd(p0, inv);
    const __m256d v1 = _mm256_mul_pd(p1, inv);
    const __m256d v2 = _mm256_mul_pd(p2, inv);
    const __m256d j0 = _mm256_sub_pd(_mm256_fmsub_pd(two, v0, _mm256_mul_pd(c12, v1)),
                                     _mm256_mul_pd(c, v2));
    const __m256d j1 = _mm256_sub_pd(_mm256_fmsub_pd(two, v1, _mm256_mul_pd(c12, v0)),
                                     _mm256_mul_pd(c23, v2));
    const __m256d j2 = _mm256_sub_pd(_mm256_fmsub_pd(two, v2, _mm256_mul_pd(c, v0)),
                                     _mm256_mul_pd(c23, v1));
    const __m256d lambda =
        _mm256_fmadd_pd(v2, j2, _mm256_fmadd_pd(v1, j1, _mm256_mul_pd(v0, j0)));
    const __m256d e0 = _mm256_fnmadd_pd(lambda, v0, j0);
    const __m256d e1 = _mm256_fnmadd_pd(lambda, v1, j1);
    const __m256d e2 = _mm256_fnmadd_pd(lambda, v2, j2);
    const __m256d sq =
        _mm256_fmadd_pd(e2, e2, _mm256_fmadd_pd(e1, e1, _mm256_mul_pd(e0, e0)));
    _mm256_storeu_pd(out + i, _mm256_sqrt_pd(sq));
  }
  if (i < n) lre_residual_row_scalar(r, s31 + i, c31 + i, out + i, n - i);
}

}  // namespace sphere_re::kernels::detail
