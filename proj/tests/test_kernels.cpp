#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "fiberres/kernels.hpp"

using namespace fiberres;

namespace {

std::vector<std::uint32_t> random_vec(std::mt19937_64& rng, std::size_t n, std::uint32_t p) {
  std::uniform_int_distribution<std::uint32_t> dist(0, p - 1);
  std::vector<std::uint32_t> v(n);
  for (auto& x : v) x = dist(rng);
  return v;
}

const std::uint32_t kPrimes[] = {2, 3, 101, 32003, 65521, 1048573, 67108859};

}  // namespace

TEST_CASE("scalar axpy against a 64-bit reference") {
  std::mt19937_64 rng(7);
  for (std::uint32_t p : kPrimes)
    for (std::size_t n : {0u, 1u, 7u, 8u, 33u}) {
      auto dst = random_vec(rng, n, p), src = random_vec(rng, n, p);
      std::uint32_t m = random_vec(rng, 1, p)[0];
      auto expect = dst;
      for (std::size_t i = 0; i < n; ++i) expect[i] = static_cast<std::uint32_t>((expect[i] + std::uint64_t(m) * src[i]) % p);
      kernels::scalar::axpy_mod(dst, src, m, p);
      CHECK(dst == expect);
    }
}

#if defined(FIBERRES_HAVE_AVX2)
TEST_CASE("avx2 kernels match the scalar reference bit for bit") {
  if (!kernels::cpu_has_avx2()) {
    MESSAGE("cpu lacks AVX2/FMA; equivalence not exercised");
    return;
  }
  std::mt19937_64 rng(11);
  for (std::uint32_t p : kPrimes) {
    if (p >= kernels::avx2::kMaxModulus) continue;
    for (std::size_t n = 0; n < 70; ++n)
      for (int rep = 0; rep < 4; ++rep) {
        auto dst = random_vec(rng, n, p), src = random_vec(rng, n, p);
        std::uint32_t m = rep == 0 ? p - 1 : random_vec(rng, 1, p)[0];
        auto a = dst, b = dst;
        kernels::scalar::axpy_mod(a, src, m, p);
        kernels::avx2::axpy_mod(b, src, m, p);
        REQUIRE(a == b);
        kernels::scalar::scale_mod(a, m, p);
        kernels::avx2::scale_mod(b, m, p);
        REQUIRE(a == b);
      }
  }
}

TEST_CASE("extreme operands stay exact in the double path") {
  if (!kernels::cpu_has_avx2()) return;
  const std::uint32_t p = 67108859;
  std::vector<std::uint32_t> dst(40, p - 1), src(40, p - 1), ref = dst;
  kernels::scalar::axpy_mod(ref, src, p - 1, p);
  kernels::avx2::axpy_mod(dst, src, p - 1, p);
  CHECK(dst == ref);
}
#endif

TEST_CASE("dispatch honours forced selection") {
  const auto before = kernels::active_isa();
  kernels::force_isa(kernels::Isa::Scalar);
  CHECK(kernels::active_isa() == kernels::Isa::Scalar);
  std::vector<std::uint32_t> v(20, 5), w(20, 3);
  kernels::axpy_mod(v, w, 2, 7);
  CHECK(v[0] == 4);
  if (kernels::cpu_has_avx2()) {
    kernels::force_isa(kernels::Isa::Avx2);
    std::vector<std::uint32_t> v2(20, 5);
    kernels::axpy_mod(v2, w, 2, 7);
    CHECK(v2 == v);
  } else {
    CHECK_THROWS(kernels::force_isa(kernels::Isa::Avx2));
  }
  kernels::force_isa(before);
  CHECK(kernels::isa_name(kernels::Isa::Scalar) == "scalar");
}
