#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fiberres/algebra.hpp"
#include "fiberres/linalg.hpp"

using namespace fiberres;

namespace {

const PrimeField F(32003);

AlgebraPtr quotient(std::vector<std::string> vars, std::vector<std::string> rels, int cap, bool comm = true) {
  MonomialQuotientPresentation p;
  for (auto& v : vars) p.vars.push_back({v, 1});
  p.relations = std::move(rels);
  p.commutative = comm;
  return build_monomial_quotient(p, cap, F);
}

std::vector<long long> dims(const GradedAlgebra& A) {
  std::vector<long long> d;
  for (int n = 0; n <= A.cap(); ++n) d.push_back(static_cast<long long>(A.dim(n)));
  return d;
}

// commutative monomials of degree n in v degree-1 variables avoiding the
// exponent vectors in `bad` (brute force over all exponent vectors)
long long count_standard(int v, int n, const std::vector<std::vector<int>>& bad) {
  long long count = 0;
  std::vector<int> e(v, 0);
  std::function<void(int, int)> rec = [&](int k, int left) {
    if (k == v - 1) {
      e[k] = left;
      for (const auto& b : bad) {
        bool div = true;
        for (int i = 0; i < v; ++i) div = div && e[i] >= b[i];
        if (div) return;
      }
      ++count;
      return;
    }
    for (int x = 0; x <= left; ++x) {
      e[k] = x;
      rec(k + 1, left - x);
    }
  };
  rec(0, n);
  return count;
}

bool same_tables(const GradedAlgebra& a, const GradedAlgebra& b) {
  if (a.cap() != b.cap()) return false;
  for (int m = 0; m <= a.cap(); ++m)
    if (a.dim(m) != b.dim(m)) return false;
  for (int m = 0; m <= a.cap(); ++m)
    for (int n = 0; m + n <= a.cap(); ++n)
      for (std::size_t i = 0; i < a.dim(m); ++i)
        for (std::size_t j = 0; j < a.dim(n); ++j) {
          auto x = a.product(m, i, n, j), y = b.product(m, i, n, j);
          if (!std::equal(x.begin(), x.end(), y.begin(), y.end())) return false;
        }
  return true;
}

}  // namespace

TEST_CASE("monomial quotients have the standard monomial bases") {
  CHECK(dims(*quotient({"x"}, {"x^2"}, 4)) == std::vector<long long>{1, 1, 0, 0, 0});
  CHECK(dims(*quotient({"x", "y"}, {"x^2", "x*y", "y^2"}, 4)) == std::vector<long long>{1, 2, 0, 0, 0});
  CHECK(dims(*quotient({"x", "y"}, {"x*y"}, 3)) == std::vector<long long>{1, 2, 2, 2});
  auto A = quotient({"x", "y", "z"}, {"x^2*y", "z^3", "y*z"}, 7);
  for (int n = 0; n <= 7; ++n)
    CHECK(static_cast<long long>(A->dim(n)) == count_standard(3, n, {{2, 1, 0}, {0, 0, 3}, {0, 1, 1}}));
  CHECK(A->label(1, 0) == "x");
  CHECK(A->find_label("x^2*z^2").has_value());
}

TEST_CASE("weighted and noncommutative presentations") {
  MonomialQuotientPresentation p;
  p.vars = {{"a", 2}, {"b", 3}};
  auto A = build_monomial_quotient(p, 6, F);
  CHECK(dims(*A) == std::vector<long long>{1, 0, 1, 1, 1, 1, 2});
  auto W = quotient({"x", "y"}, {}, 6, false);
  for (int n = 0; n <= 6; ++n) CHECK(W->dim(n) == (std::size_t{1} << n));
  auto xy = parse_element(*W, "x*y"), yx = parse_element(*W, "y*x");
  CHECK(xy.coeffs != yx.coeffs);
  auto E = quotient({"x", "y"}, {"x^2", "y^2"}, 5, false);
  CHECK(dims(*E) == std::vector<long long>{1, 2, 2, 2, 2, 2});
  CHECK_FALSE(E->check_laws().has_value());
  p.vars = {{"a", 0}};
  CHECK_THROWS_AS(build_monomial_quotient(p, 3, F), Error);
  p.vars = {{"a", 1}};
  p.relations = {"q^2"};
  CHECK_THROWS_AS(build_monomial_quotient(p, 3, F), Error);
}

TEST_CASE("global dimension one is read off the presentation") {
  MonomialQuotientPresentation p;
  p.vars = {{"x", 1}};
  CHECK(presentation_has_global_dimension_one(p));
  p.vars.push_back({"y", 1});
  CHECK_FALSE(presentation_has_global_dimension_one(p));
  p.commutative = false;
  CHECK(presentation_has_global_dimension_one(p));
  p.relations = {"x^2"};
  CHECK_FALSE(presentation_has_global_dimension_one(p));
}

TEST_CASE("laws hold exhaustively for constructed algebras") {
  for (auto A : {quotient({"x"}, {"x^3"}, 6), quotient({"x", "y"}, {"x*y"}, 6), quotient({"x", "y", "z"}, {"x*y*z"}, 5),
                 quotient({"x", "y"}, {"x*y*x"}, 5, false)})
    CHECK_FALSE(A->check_laws().has_value());
}

TEST_CASE("broken tables are detected") {
  auto A = std::make_shared<GradedAlgebra>(F, 3, std::vector<std::vector<std::string>>{{"1"}, {"a"}, {"b"}, {"c"}});
  A->set_product(1, 0, 1, 0, Vec{1});
  A->set_product(1, 0, 2, 0, Vec{1});
  // (a a) a = b a = 0 but a (a a) = a b = c
  auto err = A->check_laws();
  REQUIRE(err.has_value());
  CHECK(err->find("associativity") != std::string::npos);
}

TEST_CASE("fiber product of dual numbers is k[x,y]/(x^2,xy,y^2)") {
  auto S = quotient({"x"}, {"x^2"}, 4), T = quotient({"y"}, {"y^2"}, 4);
  auto fp = fiber_product(S, T);
  CHECK(same_tables(*fp.R, *quotient({"x", "y"}, {"x^2", "x*y", "y^2"}, 4)));
  CHECK(fp.R->label(1, 0) == "S:x");
  CHECK(fp.R->label(1, 1) == "T:y");
}

TEST_CASE("fiber product with the field is the other factor") {
  auto S = quotient({"x", "y"}, {"x^2*y"}, 5);
  auto fp = fiber_product(S, trivial_algebra(F, 5));
  CHECK(same_tables(*fp.R, *S));
  CHECK(fp.R->hilbert_series() == S->hilbert_series());
}

TEST_CASE("fiber product series and cross products") {
  auto S = quotient({"x"}, {"x^3"}, 5), T = quotient({"y"}, {"y^2"}, 5);
  auto fp = fiber_product(S, T);
  CHECK(fp.R->hilbert_series() == PowerSeries({1, 2, 1}, 5));
  auto S2 = quotient({"x", "z"}, {"x*z^2"}, 6), T2 = quotient({"y"}, {}, 6);
  auto fp2 = fiber_product(S2, T2);
  CHECK(fp2.R->hilbert_series() == S2->hilbert_series() + T2->hilbert_series() - PowerSeries({1}, 6));
  CHECK_FALSE(fp2.R->check_laws().has_value());
  const auto& R = *fp2.R;
  for (int m = 1; m <= 6; ++m)
    for (int n = 1; m + n <= 6; ++n)
      for (std::size_t i = 0; i < R.dim(m); ++i)
        for (std::size_t j = 0; j < R.dim(n); ++j)
          if (fp2.side_of(m, i) != fp2.side_of(n, j)) CHECK(is_zero(R.product(m, i, n, j)));
  // swapping the factors gives the same series and the relabeled table
  auto sw = fiber_product(T2, S2);
  CHECK(sw.R->hilbert_series() == fp2.R->hilbert_series());
  for (int m = 1; m <= 6; ++m)
    for (int n = 1; m + n <= 6; ++n)
      for (std::size_t i = 0; i < S2->dim(m); ++i)
        for (std::size_t j = 0; j < S2->dim(n); ++j) {
          auto a = fp2.R->product(m, i, n, j);
          auto b = sw.R->product(m, T2->dim(m) + i, n, T2->dim(n) + j);
          CHECK(fp2.project(FiberProductAlgebra::Side::S, m + n, a) == sw.project(FiberProductAlgebra::Side::T, m + n, b));
        }
}

TEST_CASE("fiber product projections are algebra maps") {
  auto S = quotient({"x", "z"}, {"x^2"}, 5), T = quotient({"y"}, {"y^3"}, 5);
  auto fp = fiber_product(S, T);
  using Side = FiberProductAlgebra::Side;
  for (Side side : {Side::S, Side::T})
    for (int m = 1; m <= 5; ++m)
      for (int n = 1; m + n <= 5; ++n)
        for (std::size_t i = 0; i < fp.R->dim(m); ++i)
          for (std::size_t j = 0; j < fp.R->dim(n); ++j) {
            auto lhs = fp.project(side, m + n, fp.R->product(m, i, n, j));
            auto rhs = fp.factor(side).multiply(m, fp.project(side, m, fp.R->unit_vector(m, i)), n,
                                                fp.project(side, n, fp.R->unit_vector(n, j)));
            CHECK(lhs == rhs);
          }
}

TEST_CASE("fiber product input validation") {
  auto S = quotient({"x"}, {"x^2"}, 4);
  CHECK_THROWS_AS(fiber_product(S, quotient({"y"}, {"y^2"}, 5)), Error);
  auto T = build_monomial_quotient({{{"y", 1}}, {"y^2"}, true}, 4, PrimeField(101));
  CHECK_THROWS_AS(fiber_product(S, T), Error);
}

TEST_CASE("hilbert series") {
  CHECK(trivial_algebra(F, 3)->hilbert_series() == PowerSeries({1}, 3));
  CHECK(quotient({"x", "y"}, {"x^2", "x*y", "y^2"}, 3)->hilbert_series() == PowerSeries({1, 2}, 3));
}

TEST_CASE("element parsing and printing") {
  auto A = quotient({"x", "y"}, {"x*y"}, 4);
  auto e = parse_element(*A, "2*x^2 - y^2 + 3 * x^2");
  REQUIRE(e.degree == 2);
  CHECK(format_element(*A, 2, e.coeffs) == "5*x^2 - y^2");
  CHECK(is_zero(parse_element(*A, "x*y").coeffs));
  CHECK(parse_element(*A, "x*x*x").coeffs == parse_element(*A, "x^3").coeffs);
  CHECK(parse_element(*A, "7").degree == 0);
  CHECK_THROWS_AS(parse_element(*A, "x + y^2"), Error);
  CHECK_THROWS_AS(parse_element(*A, "w"), Error);
  CHECK_THROWS_AS(parse_element(*A, "x^5"), Error);
  CHECK_THROWS_AS(parse_element(*A, "x +"), Error);
  auto fp = fiber_product(quotient({"x"}, {"x^2"}, 3), quotient({"y"}, {"y^2"}, 3));
  auto s = parse_element(*fp.R, "x + T:y");
  CHECK(format_element(*fp.R, 1, s.coeffs) == "S:x + T:y");
  CHECK(is_zero(parse_element(*fp.R, "x*y").coeffs));
  CHECK(format_element(*A, 1, Vec{0, 0}) == "0");
}
