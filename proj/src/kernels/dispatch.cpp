#include <cstdlib>
#include <string>

#include "sphere_re/error.hpp"
#include "sphere_re/kernels.hpp"

namespace sphere_re::kernels {
namespace {

Isa resolve_isa() {
  if (const char* env = std::getenv("SPHERE_RE_SIMD")) {
    const std::string want(env);
    for (Isa isa : supported_isas())
      if (want == isa_name(isa)) return isa;
  }
  return supported_isas().back();
}

[[noreturn]] void unsupported(Isa isa) {
  throw Error(ErrorCode::invalid_argument,
              "kernel ISA not supported here: " + std::string(isa_name(isa)));
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
  }
  return "unknown";
}

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2:
#if SPHERE_RE_HAVE_AVX2
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

std::vector<Isa> supported_isas() {
  std::vector<Isa> out{Isa::scalar};
  if (isa_supported(Isa::avx2)) out.push_back(Isa::avx2);
  return out;
}

Isa active_isa() {
  static const Isa isa = resolve_isa();
  return isa;
}

void ere_g_row(Isa isa, const EreRow& row, const double* sx, const double* cx, double* out,
               std::size_t n) {
  switch (isa) {
    case Isa::scalar: return detail::ere_g_row_scalar(row, sx, cx, out, n);
    case Isa::avx2:
#if SPHERE_RE_HAVE_AVX2
      if (isa_supported(isa)) return detail::ere_g_row_avx2(row, sx, cx, out, n);
#endif
      break;
  }
  unsupported(isa);
}

void lre_q_row(Isa isa, const QRow& row, const double* ss, const double* cs, double* out,
               std::size_t n) {
  switch (isa) {
    case Isa::scalar: return detail::lre_q_row_scalar(row, ss, cs, out, n);
    case Isa::avx2:
#if SPHERE_RE_HAVE_AVX2
      if (isa_supported(isa)) return detail::lre_q_row_avx2(row, ss, cs, out, n);
#endif
      break;
  }
  unsupported(isa);
}

void lre_residual_row(Isa isa, const LreResidualRow& row, const double* s31,
                      const double* c31, double* out, std::size_t n) {
  switch (isa) {
    case Isa::scalar: return detail::lre_residual_row_scalar(row, s31, c31, out, n);
    case Isa::avx2:
#if SPHERE_RE_HAVE_AVX2
      if (isa_supported(isa)) return detail::lre_residual_row_avx2(row, s31, c31, out, n);
#endif
      break;
  }
  unsupported(isa);
}

}  // namespace sphere_re::kernels
