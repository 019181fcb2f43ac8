#include <atomic>
#include <cstdlib>
#include <cstring>

#include "fiberres/field.hpp"
#include "fiberres/kernels.hpp"

namespace fiberres::kernels {

namespace {

Isa detect() {
  if (const char* env = std::getenv("FIBERRES_KERNEL"); env && std::strcmp(env, "scalar") == 0)
    return Isa::Scalar;
  return cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<Isa>& selected() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

bool cpu_has_avx2() {
#if defined(FIBERRES_HAVE_AVX2)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa active_isa() { return selected().load(std::memory_order_relaxed); }

void force_isa(Isa isa) {
  if (isa == Isa::Avx2 && !cpu_has_avx2()) throw Error("AVX2 kernels requested on a CPU without AVX2/FMA");
  selected().store(isa, std::memory_order_relaxed);
}

std::string_view isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

void axpy_mod(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src,
              std::uint32_t m, std::uint32_t p) {
  if (m == 0) return;
#if defined(FIBERRES_HAVE_AVX2)
  if (active_isa() == Isa::Avx2 && p < avx2::kMaxModulus && dst.size() >= 8) {
    avx2::axpy_mod(dst, src, m, p);
    return;
  }
#endif
  scalar::axpy_mod(dst, src, m, p);
}

void scale_mod(std::span<std::uint32_t> v, std::uint32_t m, std::uint32_t p) {
#if defined(FIBERRES_HAVE_AVX2)
  if (active_isa() == Isa::Avx2 && p < avx2::kMaxModulus && v.size() >= 8) {
    avx2::scale_mod(v, m, p);
    return;
  }
#endif
  scalar::scale_mod(v, m, p);
}

}  // namespace fiberres::kernels
