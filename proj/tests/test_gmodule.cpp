#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fiberres/gmodule.hpp"

using namespace fiberres;
using Side = FiberProductAlgebra::Side;

namespace {

const PrimeField F(32003);

AlgebraPtr quotient(std::vector<std::string> vars, std::vector<std::string> rels, int cap) {
  MonomialQuotientPresentation p;
  for (auto& v : vars) p.vars.push_back({v, 1});
  p.relations = std::move(rels);
  return build_monomial_quotient(p, cap, F);
}

std::vector<std::size_t> dims(const GradedModule& M) {
  std::vector<std::size_t> d;
  for (int n = 0; n <= M.hi(); ++n) d.push_back(M.dim(n));
  return d;
}

Matrix identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

// rank of r -> r·v for all r in A_{d - e}, as a map A_{d-e} -> M_d
std::size_t orbit_rank(const GradedModule& M, int e, const Vec& v, int d) {
  const GradedAlgebra& A = M.alg();
  Matrix m(M.dim(d), A.dim(d - e));
  for (std::size_t i = 0; i < A.dim(d - e); ++i) m.set_column(i, M.act_basis(d - e, i, e, v));
  return rank(F, m);
}

}  // namespace

TEST_CASE("residue module") {
  auto S = quotient({"x"}, {"x^2"}, 2);
  auto k = residue_module(S, 2);
  CHECK(dims(*k) == std::vector<std::size_t>{1, 0, 0});
  CHECK(k->hilbert_series() == PowerSeries({1}, 2));
  CHECK(k->act_basis(1, 0, 0, Vec{1}).empty());
  CHECK_FALSE(k->check_laws().has_value());
}

TEST_CASE("free modules follow the algebra table") {
  auto A = quotient({"x", "y"}, {"x*y"}, 4);
  auto M = free_module(A, {0, 1}, 4);
  CHECK(dims(*M) == std::vector<std::size_t>{1, 3, 4, 4, 4});
  CHECK_FALSE(M->check_laws().has_value());
  Vec g1 = M->generator(1);
  CHECK(g1 == Vec{0, 0, 1});
  auto xg1 = M->act(1, parse_element(*A, "x").coeffs, 1, g1);
  CHECK(xg1 == Vec{0, 0, 1, 0});
}

TEST_CASE("cokernels") {
  auto S = quotient({"x"}, {"x^3"}, 4);
  auto id = algebra_matrix(S, {{"1"}}, {0}, std::nullopt, 4);
  CHECK(cokernel_module(id)->total_dim() == 0);
  auto zero = algebra_matrix(S, {{}}, {0}, std::vector<int>{}, 4);
  CHECK(dims(*cokernel_module(zero)) == std::vector<std::size_t>{1, 1, 1, 0, 0});
  auto x2 = algebra_matrix(S, {{"x^2"}}, {0}, std::nullopt, 4);
  auto Q = cokernel_module(x2);
  CHECK(dims(*Q) == std::vector<std::size_t>{1, 1, 0, 0, 0});
  CHECK(Q->act_basis(1, 0, 0, Vec{1}) == Vec{1});
  CHECK_FALSE(Q->check_laws().has_value());
  CHECK_THROWS_AS(algebra_matrix(S, {{"x + x^2"}}, {0}, std::nullopt, 4), Error);
  CHECK_THROWS_AS(algebra_matrix(S, {{"x", "x^2"}}, {0, 0}, std::nullopt, 4), Error);
  CHECK_THROWS_AS(algebra_matrix(S, {{"x"}, {"x^2"}}, {0, 0}, std::nullopt, 4), Error);
}

TEST_CASE("restriction along the fiber projections") {
  auto S = quotient({"x"}, {"x^3"}, 4), T = quotient({"y"}, {"y^2"}, 4);
  auto fp = fiber_product(S, T);
  auto kR = restrict_to_fiber(residue_module(S, 4), fp, Side::S);
  CHECK(dims(*kR) == std::vector<std::size_t>{1, 0, 0, 0, 0});
  auto SR = restrict_to_fiber(free_module(S, {0}, 4), fp, Side::S);
  CHECK(SR->hilbert_series() == S->hilbert_series());
  CHECK_FALSE(SR->check_laws().has_value());
  for (int d = 0; d < 4; ++d)
    for (std::size_t j = 0; j < SR->dim(d); ++j) {
      Vec e(SR->dim(d), 0);
      e[j] = 1;
      CHECK(is_zero(SR->act(1, parse_element(*fp.R, "T:y").coeffs, d, e)));
    }
  CHECK_THROWS_AS(restrict_to_fiber(free_module(T, {0}, 4), fp, Side::S), Error);
  auto back = descend_to_factor(SR, fp, Side::S);
  CHECK(back->act_basis(1, 0, 0, Vec{1}) == Vec{1});
  CHECK_THROWS_AS(descend_to_factor(free_module(fp.R, {0}, 4), fp, Side::S), Error);
}

TEST_CASE("submodules") {
  auto S = quotient({"x"}, {"x^3"}, 4);
  auto M = free_module(S, {0}, 4);
  // the ideal (x)
  Submodule sub = submodule(*M, {{}, {Vec{1}}, {Vec{1}}});
  CHECK(dims(*sub.module) == std::vector<std::size_t>{0, 1, 1, 0, 0});
  CHECK(sub.module->act_basis(1, 0, 1, Vec{1}) == Vec{1});
  CHECK_THROWS_AS(submodule(*M, {{Vec{1}}}), Error);
}

TEST_CASE("fiber products of modules") {
  auto S = quotient({"x"}, {"x^2"}, 4), T = quotient({"y"}, {"y^2"}, 4);
  auto fp = fiber_product(S, T);
  SUBCASE("ring case recovers R") {
    auto L = fiber_product_module(fp, free_module(S, {0}, 4), free_module(T, {0}, 4), identity(1), identity(1));
    CHECK(L.L->hilbert_series() == fp.R->hilbert_series());
    CHECK_FALSE(L.L->check_laws().has_value());
    // R -> L, r -> r (1,1) is bijective in every degree
    for (int d = 0; d <= 4; ++d) CHECK(orbit_rank(*L.L, 0, Vec{1}, d) == L.L->dim(d));
  }
  SUBCASE("diagonal") {
    auto L = fiber_product_module(fp, residue_module(S, 4), residue_module(T, 4), identity(1), identity(1));
    CHECK(dims(*L.L) == std::vector<std::size_t>{1, 0, 0, 0, 0});
  }
  SUBCASE("rank two") {
    auto L = fiber_product_module(fp, free_module(S, {0, 0}, 4), free_module(T, {0, 0}, 4), identity(2), identity(2));
    CHECK(dims(*L.L) == std::vector<std::size_t>{2, 4, 0, 0, 0});
    for (int n = 0; n <= 4; ++n) CHECK(L.L->dim(n) + L.V->dim(n) == L.M->dim(n) + L.N->dim(n));
  }
  SUBCASE("kernel conditions") {
    Matrix bad(1, 1);
    CHECK_THROWS_AS(fiber_product_module(fp, residue_module(S, 4), residue_module(T, 4), bad, identity(1)), Error);
    auto shifted = free_module(S, {0, 1}, 4);
    try {
      fiber_product_module(fp, shifted, residue_module(T, 4), identity(1), identity(1));
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("ker") != std::string::npos);
    }
  }
}

TEST_CASE("minimal presentations") {
  auto S = quotient({"x"}, {"x^2"}, 4);
  auto freeS = free_module(S, {0, 2}, 4);
  CHECK(minimal_presentation(freeS).source->rank() == 0);
  auto pk = minimal_presentation(residue_module(S, 4));
  REQUIRE(pk.source->rank() == 1);
  CHECK(pk.source->generator_degrees()[0] == 1);
  CHECK(format_element(*S, 1, pk.entry(0, 0)) == "x");

  auto R = quotient({"x", "y"}, {"x^2", "x*y", "y^2"}, 4);
  auto L = cokernel_module(algebra_matrix(R, {{"x+y"}}, {0}, std::nullopt, 4));
  auto pL = minimal_presentation(L);
  REQUIRE(pL.source->rank() == 1);
  CHECK(format_element(*R, 1, pL.entry(0, 0)) == "x + y");
  CHECK(pL.entries_in_max_ideal());
}

TEST_CASE("presenting a cokernel round-trips") {
  auto A = quotient({"x", "y"}, {"x^3", "y^2"}, 6);
  auto phi = algebra_matrix(A, {{"x^2", "y", "0"}, {"0", "x", "x*y"}}, {0, 0}, std::nullopt, 6);
  auto Q = cokernel_module(phi);
  auto p1 = minimal_presentation(Q);
  auto Q2 = cokernel_module(p1);
  CHECK(Q2->hilbert_series() == Q->hilbert_series());
  auto p2 = minimal_presentation(Q2);
  CHECK(p2.source->generator_degrees() == p1.source->generator_degrees());
  CHECK(p2.target->generator_degrees() == p1.target->generator_degrees());
  for (int d = 0; d <= 6; ++d) CHECK(rank(F, p1.matrix(d)) == rank(F, p2.matrix(d)));
  CHECK(p1.entries_in_max_ideal());
}
