#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fiberres {

using Scalar = std::uint32_t;
using Vec = std::vector<Scalar>;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint32_t kDefaultCharacteristic = 32003;

/// Arithmetic in Z/p for a prime p < 2^31.
class PrimeField {
 public:
  explicit PrimeField(std::uint32_t p = kDefaultCharacteristic);

  std::uint32_t characteristic() const { return p_; }

  Scalar add(Scalar a, Scalar b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Scalar sub(Scalar a, Scalar b) const { return a >= b ? a - b : a + p_ - b; }
  Scalar neg(Scalar a) const { return a == 0 ? 0 : p_ - a; }
  Scalar mul(Scalar a, Scalar b) const {
    return static_cast<Scalar>(static_cast<std::uint64_t>(a) * b % p_);
  }
  Scalar inv(Scalar a) const;

  /// Reduces an arbitrary signed integer into [0, p).
  Scalar from_int(long long v) const {
    long long r = v % static_cast<long long>(p_);
    return static_cast<Scalar>(r < 0 ? r + p_ : r);
  }
  /// Symmetric representative in (-p/2, p/2], used for printing.
  long long to_signed(Scalar a) const {
    return a > p_ / 2 ? static_cast<long long>(a) - p_ : a;
  }

  bool operator==(const PrimeField& o) const { return p_ == o.p_; }

 private:
  std::uint32_t p_;
};

bool is_prime(std::uint32_t n);

/// Characteristic used when an input does not name one: FIBERRES_CHAR if set,
/// else 32003.
std::uint32_t default_characteristic();

inline bool is_zero(std::span<const Scalar> v) {
  for (Scalar x : v)
    if (x != 0) return false;
  return true;
}

}  // namespace fiberres
