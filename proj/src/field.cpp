#include "fiberres/field.hpp"

#include <cstdlib>

namespace fiberres {

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (p >= (1u << 31) || !is_prime(p))
    throw Error("characteristic " + std::to_string(p) + " is not a prime below 2^31");
}

Scalar PrimeField::inv(Scalar a) const {
  if (a == 0) throw Error("division by zero in Z/" + std::to_string(p_));
  // Fermat: a^(p-2)
  std::uint64_t result = 1, base = a, e = p_ - 2;
  while (e) {
    if (e & 1) result = result * base % p_;
    base = base * base % p_;
    e >>= 1;
  }
  return static_cast<Scalar>(result);
}

std::uint32_t default_characteristic() {
  if (const char* env = std::getenv("FIBERRES_CHAR")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end == env || *end != '\0') throw Error(std::string("FIBERRES_CHAR is not an integer: ") + env);
    return static_cast<std::uint32_t>(v);
  }
  return kDefaultCharacteristic;
}

}  // namespace fiberres
