// Compiled with -mavx2 -mfma; only reached through the runtime dispatcher.
#include "fiberres/kernels.hpp"

#include <immintrin.h>

namespace fiberres::kernels::avx2 {

namespace {

// x holds exact integers in [0, 2^53); returns x mod p as doubles in [0, p).
inline __m256d reduce(__m256d x, __m256d pd, __m256d pinv) {
  __m256d q = _mm256_floor_pd(_mm256_mul_pd(x, pinv));
  __m256d r = _mm256_fnmadd_pd(q, pd, x);
  // floor(x * (1/p)) can be off by one in either direction.
  __m256d lo = _mm256_cmp_pd(r, _mm256_setzero_pd(), _CMP_LT_OQ);
  r = _mm256_add_pd(r, _mm256_and_pd(lo, pd));
  __m256d hi = _mm256_cmp_pd(r, pd, _CMP_GE_OQ);
  r = _mm256_sub_pd(r, _mm256_and_pd(hi, pd));
  return r;
}

inline __m256d load4(const std::uint32_t* ptr) {
  return _mm256_cvtepi32_pd(_mm_loadu_si128(reinterpret_cast<const __m128i*>(ptr)));
}

inline void store4(std::uint32_t* ptr, __m256d v) {
  _mm_storeu_si128(reinterpret_cast<__m128i*>(ptr), _mm256_cvttpd_epi32(v));
}

}  // namespace

void axpy_mod(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src,
              std::uint32_t m, std::uint32_t p) {
  const std::size_t n = dst.size();
  const __m256d pd = _mm256_set1_pd(static_cast<double>(p));
  const __m256d pinv = _mm256_set1_pd(1.0 / static_cast<double>(p));
  const __m256d md = _mm256_set1_pd(static_cast<double>(m));
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256d a0 = _mm256_fmadd_pd(md, load4(src.data() + i), load4(dst.data() + i));
    __m256d a1 = _mm256_fmadd_pd(md, load4(src.data() + i + 4), load4(dst.data() + i + 4));
    store4(dst.data() + i, reduce(a0, pd, pinv));
    store4(dst.data() + i + 4, reduce(a1, pd, pinv));
  }
  for (; i + 4 <= n; i += 4) {
    __m256d a = _mm256_fmadd_pd(md, load4(src.data() + i), load4(dst.data() + i));
    store4(dst.data() + i, reduce(a, pd, pinv));
  }
  scalar::axpy_mod(dst.subspan(i), src.subspan(i), m, p);
}

void scale_mod(std::span<std::uint32_t> v, std::uint32_t m, std::uint32_t p) {
  const std::size_t n = v.size();
  const __m256d pd = _mm256_set1_pd(static_cast<double>(p));
  const __m256d pinv = _mm256_set1_pd(1.0 / static_cast<double>(p));
  const __m256d md = _mm256_set1_pd(static_cast<double>(m));
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d a = _mm256_mul_pd(md, load4(v.data() + i));
    store4(v.data() + i, reduce(a, pd, pinv));
  }
  scalar::scale_mod(v.subspan(i), m, p);
}

}  // namespace fiberres::kernels::avx2
