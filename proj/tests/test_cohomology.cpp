#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fiberres/cohomology.hpp"

using namespace fiberres;

namespace {

const PrimeField F(32003);

AlgebraPtr quotient(std::vector<std::string> vars, std::vector<std::string> rels, int cap) {
  MonomialQuotientPresentation p;
  for (auto& v : vars) p.vars.push_back({v, 1});
  p.relations = std::move(rels);
  return build_monomial_quotient(p, cap, F);
}

Matrix identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

std::string failures(const std::vector<Check>& checks) {
  std::string s;
  for (const auto& c : checks)
    if (c.status == Status::Fail) s += c.name + " [" + c.detail + "]; ";
  return s;
}

std::vector<std::size_t> dims(const GradedModule& M) {
  std::vector<std::size_t> d;
  for (int n = 0; n <= M.hi(); ++n) d.push_back(M.dim(n));
  return d;
}

struct DualPair {
  AlgebraPtr S = quotient({"x"}, {"x^2"}, 8), T = quotient({"y"}, {"y^2"}, 8);
  FiberProductAlgebra fp = fiber_product(S, T);
  ModulePtr diagonal() const {  // R/(x + y)
    return cokernel_module(algebra_matrix(fp.R, {{"x + y"}}, {0}, std::nullopt, 8));
  }
};

}  // namespace

TEST_CASE("second syzygy of R/(x+y) splits into one line on each side") {
  DualPair P;
  auto s = syzygy_split(P.fp, P.diagonal(), 6);
  INFO(failures(s.checks));
  CHECK(s.pass);
  CHECK(dims(*s.M) == std::vector<std::size_t>{0, 0, 1, 0, 0, 0, 0});
  CHECK(dims(*s.N) == std::vector<std::size_t>{0, 0, 1, 0, 0, 0, 0});
  CHECK(s.M->algebra() == P.S);
  CHECK(s.N->algebra() == P.T);
}

TEST_CASE("syzygy split of free and residue modules") {
  DualPair P;
  auto free = syzygy_split(P.fp, free_module(P.fp.R, {0}, 6), 6);
  CHECK(free.pass);
  CHECK(free.M->total_dim() == 0);
  CHECK(free.N->total_dim() == 0);

  auto k = syzygy_split(P.fp, residue_module(P.fp.R, 6), 6);
  CHECK(k.pass);
  CHECK(k.M->total_dim() + k.N->total_dim() == 4);
  CHECK(k.M->total_dim() == 2);

  auto cubic = fiber_product(quotient({"x"}, {"x^3"}, 8), quotient({"y"}, {"y^2"}, 8));
  auto kc = syzygy_split(cubic, residue_module(cubic.R, 8), 8);
  INFO(failures(kc.checks));
  CHECK(kc.pass);
  CHECK_THROWS_AS(syzygy_split(P.fp, free_module(P.S, {0}, 6), 6), Error);
}

TEST_CASE("Ext of L splits along the syzygy components") {
  DualPair P;
  SUBCASE("diagonal") {
    auto r = verify_ext_sequence_L(P.fp, P.diagonal(), 5, 8);
    INFO(failures(r.checks));
    CHECK(r.pass);
    REQUIRE(r.dim_L.size() == 6);
    for (int n = 2; n <= 5; ++n) CHECK(r.dim_L[n] == r.from_M[n] + r.from_N[n]);
    CHECK(r.dim_L[0] == 1);
    CHECK(r.dim_L[1] == 1);
    CHECK(r.dim_L[2] == 2);
  }
  SUBCASE("residue field") {
    auto r = verify_ext_sequence_L(P.fp, residue_module(P.fp.R, 8), 5, 8);
    INFO(failures(r.checks));
    CHECK(r.pass);
    CHECK(r.dim_L[5] == 32);
  }
  SUBCASE("free") {
    auto r = verify_ext_sequence_L(P.fp, free_module(P.fp.R, {0, 1}, 8), 4, 8);
    CHECK(r.pass);
    CHECK(r.dim_L[2] == 0);
  }
  SUBCASE("mixed cubic pair") {
    auto fp = fiber_product(quotient({"x"}, {"x^3"}, 10), quotient({"y"}, {"y^2"}, 10));
    auto L = cokernel_module(algebra_matrix(fp.R, {{"x^2"}}, {0}, std::nullopt, 10));
    auto r = verify_ext_sequence_L(fp, L, 5, 10);
    INFO(failures(r.checks));
    CHECK(r.pass);
  }
}

TEST_CASE("fiber products of modules") {
  DualPair P;
  SUBCASE("S and T over k") {
    auto fm = fiber_product_module(P.fp, free_module(P.S, {0}, 8), free_module(P.T, {0}, 8), identity(1), identity(1));
    auto r = verify_fiber_module_ext_sequence(P.fp, fm, 5, 8);
    INFO(failures(r.checks));
    CHECK(r.pass);
    CHECK(r.pL.coeffs()[0] == 1);
    CHECK(r.pL.coeffs()[1] == 0);  // L = R
  }
  SUBCASE("rank two") {
    auto fm = fiber_product_module(P.fp, free_module(P.S, {0, 0}, 8), free_module(P.T, {0, 0}, 8), identity(2),
                                   identity(2));
    auto r = verify_fiber_module_ext_sequence(P.fp, fm, 4, 8);
    INFO(failures(r.checks));
    CHECK(r.pass);
    CHECK(r.rank_V == 2);
  }
  SUBCASE("all residue fields") {
    auto fm =
        fiber_product_module(P.fp, residue_module(P.S, 8), residue_module(P.T, 8), identity(1), identity(1));
    auto r = verify_fiber_module_ext_sequence(P.fp, fm, 4, 8);
    CHECK(r.pass);
    CHECK(r.pL == r.pk);
  }
}

TEST_CASE("depth probe sees the socle of an exterior algebra") {
  auto E = ext_algebra(quotient({"x"}, {}, 8), 4, 8);  // Λ(ς)
  auto K = minimal_resolution(residue_module(E.algebra, 4), 2, 4);
  auto probe = depth_probe(K, free_module(E.algebra, {0}, 4));
  const DepthDegree* d = probe.at(-1);
  REQUIRE(d != nullptr);
  CHECK(d->hom_known);
  CHECK(d->hom == 1);
  CHECK(probe.at(0)->hom == 0);
}

TEST_CASE("depth certificates") {
  SUBCASE("dual pair, M = k") {
    DualPair P;
    auto c = depth_certificate(P.fp, residue_module(P.S, 8), 2, 6, 8);
    INFO(failures(c.checks));
    CHECK(c.pass);
    CHECK_FALSE(c.M_free);  // k is not a free S-module
    CHECK(c.gldim_S_ge2);
    CHECK(c.gldim_T_ge2);
    CHECK(c.depth_lower == 1);
    CHECK(c.depth_upper == 1);
    bool degree_minus_two = false;
    for (const auto& w : c.witnesses)
      if (w.case_name == "gldim T >= 2" && w.j == 1) {
        degree_minus_two = true;
        CHECK(w.degree == -2);
        CHECK(w.status == Status::Pass);
      }
    CHECK(degree_minus_two);
  }
  SUBCASE("M not free") {
    auto fp = fiber_product(quotient({"x"}, {"x^3"}, 10), quotient({"y"}, {"y^2"}, 10));
    auto M = cokernel_module(algebra_matrix(fp.S, {{"x^2"}}, {0}, std::nullopt, 10));
    auto c = depth_certificate(fp, M, 2, 6, 10);
    INFO(failures(c.checks));
    CHECK(c.pass);
    CHECK_FALSE(c.M_free);
    CHECK(c.witnesses.front().case_name == "M not free");
    CHECK(c.witnesses.front().degree == -1);
  }
  SUBCASE("global dimension one, M free") {
    auto S = quotient({"x"}, {}, 8), T = quotient({"y"}, {}, 8);
    auto fp = fiber_product(S, T);
    auto c = depth_certificate(fp, free_module(S, {0}, 8), 1, 6, 8, GldimHint{true, true});
    INFO(failures(c.checks));
    CHECK(c.pass);
    REQUIRE(c.witnesses.size() == 1);
    CHECK(c.witnesses[0].degree == 1);
    CHECK(c.witnesses[0].status == Status::Pass);
    CHECK(c.gldim_one == true);
  }
  SUBCASE("witnesses persist in a larger window") {
    DualPair P;
    auto small = depth_certificate(P.fp, residue_module(P.S, 8), 1, 6, 8);
    auto large = depth_certificate(P.fp, residue_module(P.S, 8), 1, 8, 8);
    REQUIRE(small.witnesses.size() == large.witnesses.size());
    for (std::size_t i = 0; i < small.witnesses.size(); ++i)
      CHECK(small.witnesses[i].status == large.witnesses[i].status);
  }
  SUBCASE("trivial factor is rejected") {
    auto fp = fiber_product(quotient({"x"}, {"x^2"}, 8), trivial_algebra(F, 8));
    CHECK_THROWS_AS(depth_certificate(fp, residue_module(fp.S, 8), 1, 4, 8), Error);
  }
}

TEST_CASE("depth upper bound for Ext_R(L, k)") {
  DualPair P;
  SUBCASE("free L has depth zero") {
    auto b = depth_upper_bound(P.fp, free_module(P.fp.R, {0}, 8), 4, 8);
    INFO(failures(b.checks));
    CHECK(b.pass);
    CHECK(b.finite_pd);
    CHECK(b.depth_upper == 0);
  }
  SUBCASE("R/(x+y)") {
    auto b = depth_upper_bound(P.fp, P.diagonal(), 5, 8);
    INFO(failures(b.checks));
    CHECK(b.pass);
    CHECK_FALSE(b.finite_pd);
    CHECK(b.depth_upper <= 1);
    CHECK(b.depth_upper >= 0);
  }
}
