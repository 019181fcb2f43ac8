#include "fiberres/extalg.hpp"

#include <algorithm>

namespace fiberres {

ChainLift::ChainLift(const FreeResolution& src, int shift, const FreeResolution& tgt, int internal,
                     std::vector<Vec> init, int nmax)
    : src_(src), tgt_(tgt), shift_(shift), internal_(internal) {
  if (src.A != tgt.A) throw Error("chain lift between resolutions over different algebras");
  if (shift < 0 || nmax < 0 || shift + nmax > src.length())
    throw Error("window exhausted: source resolution stops at " + std::to_string(src.length()));
  if (nmax > tgt.length())
    throw Error("window exhausted: target resolution stops at " + std::to_string(tgt.length()));
  const GradedModule& X0 = *src.free[shift];
  if (init.size() != X0.rank()) throw Error("initial map needs one value per generator");
  images_.resize(nmax + 1);
  for (std::size_t g = 0; g < X0.rank(); ++g) {
    const int e = X0.generator_degrees()[g] - internal;
    images_[0].push_back(e < 0 ? Vec{} : solve(0, e, init[g]));
  }
  for (int n = 1; n <= nmax; ++n) {
    const GradedModule& X = *src.free[shift + n];
    for (std::size_t g = 0; g < X.rank(); ++g) {
      const int d = X.generator_degrees()[g];
      if (d - internal < 0) {
        images_[n].emplace_back();
        continue;
      }
      Vec rhs = apply(n - 1, d, src.d[shift + n].images[g]);
      images_[n].push_back(solve(n, d - internal, rhs));
    }
  }
}

Vec ChainLift::solve(int n, int e, std::span<const Scalar> rhs) {
  if (e > tgt_.dmax) throw Error("window exhausted: lift needs internal degree " + std::to_string(e));
  auto key = std::make_pair(n, e);
  auto it = solvers_.find(key);
  if (it == solvers_.end()) it = solvers_.emplace(key, LinearSolver(tgt_.A->field(), tgt_.d[n].matrix(e))).first;
  if (is_zero(rhs)) return Vec(it->second.cols(), 0);
  auto x = it->second.solve(rhs);
  if (!x)
    throw Error("chain lift has no solution at bidegree (" + std::to_string(n) + ", " + std::to_string(e) +
                "): target is not exact there");
  return *x;
}

Vec ChainLift::apply(int n, int d, std::span<const Scalar> v) const {
  const GradedModule& X = *src_.free[shift_ + n];
  const GradedModule& Y = *tgt_.free[n];
  const GradedAlgebra& A = X.alg();
  const int e = d - internal_;
  if (e < 0) return {};
  if (e > Y.hi()) throw Error("window exhausted: lift needs internal degree " + std::to_string(e));
  const PrimeField& F = A.field();
  Vec out(Y.dim(e), 0);
  for (std::size_t g = 0; g < X.rank(); ++g) {
    const int dg = X.generator_degrees()[g];
    const int m = d - dg;
    if (m < 0 || dg - internal_ < 0 || A.dim(m) == 0) continue;
    const Vec& z = images_[n][g];
    if (is_zero(z)) continue;
    for (std::size_t i = 0; i < A.dim(m); ++i) {
      const Scalar c = v[X.offset(d, g) + i];
      if (c != 0) axpy(F, out, Y.act_basis(m, i, dg - internal_, z), c);
    }
  }
  return out;
}

Scalar ChainLift::constant_coefficient(int n, std::size_t g, std::size_t h) const {
  const int e = src_.generator_degrees(shift_ + n)[g] - internal_;
  if (e < 0 || tgt_.generator_degrees(n)[h] != e) return 0;
  return images_[n][g][tgt_.free[n]->offset(e, h)];
}

// ---------------------------------------------------------------------------

namespace {

/// Dual basis vector g^∨ as the initial map on generators of src.free[a].
std::vector<Vec> dual_init(const FreeResolution& src, int a, std::size_t g, const GradedModule& k) {
  const int j = src.generator_degrees(a)[g];
  std::vector<Vec> init;
  for (std::size_t h = 0; h < src.rank(a); ++h) {
    const int e = src.generator_degrees(a)[h] - j;
    Vec v(k.dim(e), 0);
    if (h == g) v.at(0) = 1;
    init.push_back(std::move(v));
  }
  return init;
}

void check_resolves_k(const FreeResolution& res) {
  if (res.module->total_dim() != 1 || res.module->dim(0) != 1 || res.rank(0) != 1)
    throw Error("Ext algebra needs a resolution of the residue field");
  for (int i = 1; i <= res.length(); ++i)
    if (!res.d[i].entries_in_max_ideal()) throw Error("Ext algebra needs a minimal resolution");
}

}  // namespace

std::vector<std::vector<std::string>> dual_labels(const FreeResolution& res, const std::string& prefix) {
  std::vector<std::vector<std::string>> labels(res.length() + 1);
  labels[0] = {"1"};
  for (int i = 1; i <= res.length(); ++i)
    for (std::size_t g = 0; g < res.rank(i); ++g)
      labels[i].push_back(prefix + std::to_string(i) + (res.rank(i) > 1 ? "_" + std::to_string(g) : ""));
  return labels;
}

ExtAlgebra ext_algebra_from(FreeResolution res, std::vector<std::vector<std::string>> labels) {
  check_resolves_k(res);
  ExtAlgebra E;
  E.imax = res.length();
  E.dmax = res.dmax;
  if (labels.size() != static_cast<std::size_t>(E.imax + 1)) throw Error("one label list per degree required");
  for (int i = 0; i <= E.imax; ++i)
    if (labels[i].size() != res.rank(i)) throw Error("label count differs from the resolution rank");
  auto table = std::make_shared<GradedAlgebra>(res.A->field(), E.imax, std::move(labels));
  for (int a = 1; a <= E.imax; ++a)
    for (std::size_t g = 0; g < res.rank(a); ++g) {
      const int j = res.generator_degrees(a)[g];
      ChainLift Z(res, a, res, j, dual_init(res, a, g, *res.module), E.imax - a);
      for (int b = 1; a + b <= E.imax; ++b)
        for (std::size_t h = 0; h < res.rank(b); ++h) {
          Vec v(res.rank(a + b), 0);
          for (std::size_t q = 0; q < v.size(); ++q) v[q] = Z.constant_coefficient(b, q, h);
          table->set_product(b, h, a, g, v);
        }
    }
  std::vector<std::vector<int>> w(E.imax + 1);
  for (int i = 0; i <= E.imax; ++i) w[i] = res.generator_degrees(i);
  table->set_internal_degrees(std::move(w));
  E.algebra = table;
  E.res = std::move(res);
  return E;
}

ExtAlgebra ext_algebra(const AlgebraPtr& A, int imax, int dmax, const std::string& prefix) {
  auto res = minimal_resolution(residue_module(A, dmax), imax, dmax);
  auto labels = dual_labels(res, prefix);
  return ext_algebra_from(std::move(res), std::move(labels));
}

ExtModule ext_module_from(const ExtAlgebra& E, FreeResolution res) {
  if (res.A != E.base()) throw Error("module resolution is over a different algebra");
  if (res.length() > E.imax) throw Error("window exhausted: module resolution is longer than the Ext algebra");
  if (res.dmax > E.dmax) throw Error("window exhausted: module resolution exceeds the Ext algebra's internal window");
  for (int i = 1; i <= res.length(); ++i)
    if (!res.d[i].entries_in_max_ideal()) throw Error("Ext module needs a minimal resolution");
  const int imax = res.length();
  std::vector<std::size_t> dims;
  for (int i = 0; i <= imax; ++i) dims.push_back(res.rank(i));
  auto X = std::make_shared<GradedModule>(E.algebra, dims);
  for (int a = 0; a < imax; ++a)
    for (std::size_t g = 0; g < res.rank(a); ++g) {
      const int j = res.generator_degrees(a)[g];
      ChainLift Z(res, a, E.res, j, dual_init(res, a, g, *E.res.module), imax - a);
      for (int b = 1; a + b <= imax; ++b)
        for (std::size_t h = 0; h < E.res.rank(b); ++h) {
          Vec v(res.rank(a + b), 0);
          for (std::size_t q = 0; q < v.size(); ++q) v[q] = Z.constant_coefficient(b, q, h);
          X->set_action(b, h, a, g, v);
        }
    }
  std::vector<std::vector<int>> w(imax + 1);
  for (int i = 0; i <= imax; ++i) w[i] = res.generator_degrees(i);
  X->set_internal_degrees(std::move(w));
  ExtModule out;
  out.module = X;
  out.res = std::move(res);
  return out;
}

ExtModule ext_module(const ExtAlgebra& E, const ModulePtr& M) {
  const int dmax = std::min(E.dmax, max_valid_dmax(*M));
  return ext_module_from(E, minimal_resolution(M, E.imax, dmax));
}

std::vector<std::vector<Matrix>> induced_ext_map(const FreeResolution& resM, const FreeResolution& resV,
                                                 const Matrix& f0, int imax) {
  const GradedModule& V = *resV.module;
  if (f0.rows() != V.dim(0) || f0.cols() != resM.module->dim(0)) throw Error("degree-0 map has the wrong shape");
  const PrimeField& F = resM.A->field();
  std::vector<Vec> init;
  for (std::size_t g = 0; g < resM.rank(0); ++g) {
    const int d = resM.generator_degrees(0)[g];
    init.push_back(d == 0 ? f0.apply(F, resM.d[0].images[g]) : Vec(V.dim(d), 0));
  }
  ChainLift Z(resM, 0, resV, 0, std::move(init), imax);
  const int dmax = std::min(resM.dmax, resV.dmax);
  std::vector<std::vector<Matrix>> out(imax + 1);
  for (int n = 0; n <= imax; ++n)
    for (int j = 0; j <= dmax; ++j) {
      std::vector<std::size_t> rows, cols;
      for (std::size_t g = 0; g < resM.rank(n); ++g)
        if (resM.generator_degrees(n)[g] == j) rows.push_back(g);
      for (std::size_t h = 0; h < resV.rank(n); ++h)
        if (resV.generator_degrees(n)[h] == j) cols.push_back(h);
      Matrix m(rows.size(), cols.size());
      for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols.size(); ++c) m(r, c) = Z.constant_coefficient(n, rows[r], cols[c]);
      out[n].push_back(std::move(m));
    }
  return out;
}

KoszulReport koszul_check(const AlgebraPtr& A, int imax, int dmax) {
  auto res = minimal_resolution(residue_module(A, dmax), imax, dmax);
  BettiTable b = betti(res);
  KoszulReport r;
  r.imax = imax;
  r.dmax = dmax;
  for (int i = 0; i <= b.hmax; ++i)
    for (int j = 0; j <= b.dmax; ++j)
      if (j != i && b.at(i, j) != 0) r.offending.emplace_back(i, j);
  r.koszul = r.offending.empty();
  return r;
}

KoszulTransfer koszul_transfer(const FiberProductAlgebra& fp, int imax, int dmax) {
  KoszulTransfer t;
  t.S = koszul_check(fp.S, imax, dmax);
  t.T = koszul_check(fp.T, imax, dmax);
  t.R = koszul_check(fp.R, imax, dmax);
  t.equivalence = (t.S.koszul && t.T.koszul) == t.R.koszul;
  t.propagated = true;
  for (const auto* f : {&t.S, &t.T})
    for (const auto& c : f->offending)
      if (std::find(t.R.offending.begin(), t.R.offending.end(), c) == t.R.offending.end()) t.propagated = false;
  return t;
}

}  // namespace fiberres
