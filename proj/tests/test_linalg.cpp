#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fiberres/linalg.hpp"

using namespace fiberres;

namespace {

Matrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, std::uint32_t p) {
  std::uniform_int_distribution<std::uint32_t> dist(0, p - 1);
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = dist(rng);
  return m;
}

// number of x in F_p^c with m x = 0, by enumeration
std::size_t count_kernel(const PrimeField& F, const Matrix& m) {
  const std::uint32_t p = F.characteristic();
  std::size_t total = 1;
  for (std::size_t i = 0; i < m.cols(); ++i) total *= p;
  std::size_t count = 0;
  Vec x(m.cols(), 0);
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t t = code;
    for (auto& xi : x) {
      xi = static_cast<Scalar>(t % p);
      t /= p;
    }
    if (is_zero(m.apply(F, x))) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("rank agrees with kernel enumeration over F_3") {
  PrimeField F(3);
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 60; ++rep) {
    std::size_t r = 1 + rng() % 4, c = 1 + rng() % 6;
    Matrix m = random_matrix(rng, r, c, 3);
    std::size_t expect = 1;
    for (std::size_t i = 0; i < c - rank(F, m); ++i) expect *= 3;
    CHECK(count_kernel(F, m) == expect);
  }
}

TEST_CASE("null space vectors are killed and independent") {
  PrimeField F(32003);
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 40; ++rep) {
    std::size_t r = 1 + rng() % 9, c = 1 + rng() % 12;
    Matrix m = random_matrix(rng, r, c, 32003);
    // force dependencies
    if (c > 2)
      for (std::size_t i = 0; i < r; ++i) m(i, c - 1) = F.add(m(i, 0), F.mul(3, m(i, 1)));
    NullSpace ns = nullspace(F, m);
    CHECK(ns.dim() + rank(F, m) == c);
    for (const auto& v : ns.basis) CHECK(is_zero(m.apply(F, v)));
    for (std::size_t i = 0; i < ns.dim(); ++i) {
      Vec coords = ns.coordinates(ns.basis[i]);
      for (std::size_t j = 0; j < coords.size(); ++j) CHECK(coords[j] == (i == j ? 1u : 0u));
    }
  }
}

TEST_CASE("solver reproduces right-hand sides in the column space") {
  PrimeField F(101);
  std::mt19937_64 rng(9);
  for (int rep = 0; rep < 40; ++rep) {
    std::size_t r = 1 + rng() % 8, c = 1 + rng() % 8;
    Matrix a = random_matrix(rng, r, c, 101);
    LinearSolver s(F, a);
    Matrix x0 = random_matrix(rng, c, 1, 101);
    Vec x(c);
    for (std::size_t i = 0; i < c; ++i) x[i] = x0(i, 0);
    Vec b = a.apply(F, x);
    auto sol = s.solve(b);
    REQUIRE(sol.has_value());
    CHECK(a.apply(F, *sol) == b);
  }
  Matrix z(2, 1);
  z(0, 0) = 1;
  LinearSolver s(F, z);
  CHECK_FALSE(s.solve(Vec{0, 1}).has_value());
}

TEST_CASE("echelon basis tracks spans") {
  PrimeField F(7);
  EchelonBasis e(F, 3);
  CHECK(e.insert(Vec{0, 1, 2}));
  CHECK(e.insert(Vec{1, 1, 0}));
  CHECK_FALSE(e.insert(Vec{1, 2, 2}));
  CHECK(e.contains(Vec{2, 4, 4}));
  CHECK(e.rank() == 2);
  CHECK(e.pivots() == std::vector<std::size_t>{0, 1});
}

TEST_CASE("large characteristic uses exact accumulation") {
  PrimeField F(2147483647u);
  Matrix m(1, 20);
  Vec x(20, 2147483646u);
  for (std::size_t c = 0; c < 20; ++c) m(0, c) = 2147483646u;
  CHECK(m.apply(F, x)[0] == 20u);
}
