#include "fiberres/kernels.hpp"

namespace fiberres::kernels::scalar {

void axpy_mod(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src,
              std::uint32_t m, std::uint32_t p) {
  const std::size_t n = dst.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t x = dst[i] + static_cast<std::uint64_t>(m) * src[i];
    dst[i] = static_cast<std::uint32_t>(x % p);
  }
}

void scale_mod(std::span<std::uint32_t> v, std::uint32_t m, std::uint32_t p) {
  for (auto& x : v) x = static_cast<std::uint32_t>(static_cast<std::uint64_t>(m) * x % p);
}

}  // namespace fiberres::kernels::scalar
