#pragma once

// Row kernels for Gaussian elimination over Z/p.
//
// Every kernel exists as a portable scalar reference and, where the CPU
// supports it, an AVX2 variant. The active variant is picked once at startup
// (FIBERRES_KERNEL=scalar forces the reference path). All variants must be
// bit-identical; tests/test_kernels.cpp checks this.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace fiberres::kernels {

enum class Isa { Scalar, Avx2 };

namespace scalar {
// dst[i] = (dst[i] + m * src[i]) mod p, all operands in [0, p).
void axpy_mod(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src,
              std::uint32_t m, std::uint32_t p);
// v[i] = (m * v[i]) mod p
void scale_mod(std::span<std::uint32_t> v, std::uint32_t m, std::uint32_t p);
}  // namespace scalar

namespace avx2 {
// Requires p < 2^26 so that m * src + dst is exact in a double.
inline constexpr std::uint32_t kMaxModulus = 1u << 26;
void axpy_mod(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src,
              std::uint32_t m, std::uint32_t p);
void scale_mod(std::span<std::uint32_t> v, std::uint32_t m, std::uint32_t p);
}  // namespace avx2

bool cpu_has_avx2();

/// Variant used by the dispatching entry points below.
Isa active_isa();
/// Overrides the dispatch choice (tests only). Selecting Avx2 on a CPU
/// without it throws.
void force_isa(Isa isa);
std::string_view isa_name(Isa isa);

void axpy_mod(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src,
              std::uint32_t m, std::uint32_t p);
void scale_mod(std::span<std::uint32_t> v, std::uint32_t m, std::uint32_t p);

}  // namespace fiberres::kernels
