#include "fiberres/cohomology.hpp"

#include <algorithm>

namespace fiberres {

namespace {

/// Coordinates of (F_1)_d lying in 𝔭F_1 (side S) or 𝔮F_1 (side T).
std::vector<bool> ideal_coordinates(const FiberProductAlgebra& fp, const GradedModule& X, int d, Side side) {
  std::vector<bool> in(X.dim(d), false);
  for (std::size_t g = 0; g < X.rank(); ++g) {
    const int m = d - X.generator_degrees()[g];
    if (m < 1) continue;
    const std::size_t lo = fp.offset(side, m), n = fp.factor(side).dim(m);
    for (std::size_t k = 0; k < n; ++k) in[X.offset(d, g) + lo + k] = true;
  }
  return in;
}

std::vector<Vec> kernel_in_ideal(const PrimeField& F, const Matrix& f, const std::vector<bool>& in) {
  std::size_t outside = std::count(in.begin(), in.end(), false);
  Matrix m(f.rows() + outside, f.cols());
  for (std::size_t r = 0; r < f.rows(); ++r)
    for (std::size_t c = 0; c < f.cols(); ++c) m(r, c) = f(r, c);
  std::size_t r = f.rows();
  for (std::size_t c = 0; c < in.size(); ++c)
    if (!in[c]) m(r++, c) = 1;
  return nullspace(F, m).basis;
}

/// Checks that the other factor kills the span of `basis` inside X.
bool killed_by(const FiberProductAlgebra& fp, const GradedModule& X, const std::vector<std::vector<Vec>>& basis,
               Side other) {
  for (int d = 0; d <= X.hi(); ++d)
    for (const Vec& v : basis[d])
      for (int m = 1; d + m <= X.hi(); ++m)
        for (std::size_t k = 0; k < fp.factor(other).dim(m); ++k)
          if (!is_zero(X.act_basis(m, fp.offset(other, m) + k, d, v))) return false;
  return true;
}

BigradedSeries count_bigraded(const GradedModule& X, int hmax, int dmax) {
  BigradedSeries s(hmax, dmax);
  for (int n = 0; n <= std::min(hmax, X.hi()); ++n)
    for (std::size_t k = 0; k < X.dim(n); ++k) {
      const int j = X.internal_degree(n, k);
      if (j <= dmax) s.at(n, j) += 1;
    }
  return s;
}

BigradedSeries shift2(const BigradedSeries& s, int hmax) {
  BigradedSeries out(hmax, s.dmax());
  for (int n = 2; n <= hmax; ++n)
    for (std::size_t j = 0; j <= s.dmax(); ++j)
      if (static_cast<std::size_t>(n - 2) <= s.hmax()) out.at(n, j) = s.at(n - 2, j);
  return out;
}

std::size_t count_at_most(const std::vector<int>& degs, int dmax) {
  return std::count_if(degs.begin(), degs.end(), [&](int d) { return d <= dmax; });
}

}  // namespace

SyzygySplit syzygy_split(const FiberProductAlgebra& fp, const ModulePtr& L, int dmax) {
  if (L->algebra() != fp.R) throw Error("syzygy split needs a module over the fiber product");
  SyzygySplit s;
  s.res = minimal_resolution(L, 2, dmax);
  const GradedModule& F1 = *s.res.free[1];
  const PrimeField& F = fp.R->field();
  bool dims_ok = true, span_ok = true;
  std::string where;
  for (int d = 0; d <= dmax; ++d) {
    Matrix f = s.res.d[1].matrix(d);
    s.kernel.push_back(nullspace(F, f).basis);
    s.M_basis.push_back(kernel_in_ideal(F, f, ideal_coordinates(fp, F1, d, Side::S)));
    s.N_basis.push_back(kernel_in_ideal(F, f, ideal_coordinates(fp, F1, d, Side::T)));
    if (s.M_basis[d].size() + s.N_basis[d].size() != s.kernel[d].size()) {
      dims_ok = false;
      if (where.empty()) where = "degree " + std::to_string(d);
    }
    Matrix all(F1.dim(d), s.kernel[d].size() + s.M_basis[d].size() + s.N_basis[d].size());
    std::size_t c = 0;
    for (const auto* list : {&s.kernel[d], &s.M_basis[d], &s.N_basis[d]})
      for (const Vec& v : *list) all.set_column(c++, v);
    if (rank(F, all) != s.kernel[d].size()) span_ok = false;
  }
  s.checks.push_back(make_check("dim M_n + dim N_n = dim (Ω²L)_n", dims_ok, where));
  s.checks.push_back(make_check("M ⊕ N spans Ω²L", span_ok && dims_ok));
  const bool qM = killed_by(fp, F1, s.M_basis, Side::T), pN = killed_by(fp, F1, s.N_basis, Side::S);
  s.checks.push_back(make_check("𝔮M = 0", qM));
  s.checks.push_back(make_check("𝔭N = 0", pN));
  if (qM && pN) {
    s.M = descend_to_factor(submodule(F1, s.M_basis).module, fp, Side::S);
    s.N = descend_to_factor(submodule(F1, s.N_basis).module, fp, Side::T);
  }
  s.pass = all_pass(s.checks);
  return s;
}

ExtSequenceReport verify_ext_sequence_L(const FiberProductAlgebra& fp, const ModulePtr& L, int imax, int dmax) {
  if (imax < 2) throw Error("Ext sequence check needs imax >= 2");
  ExtSequenceReport r;
  r.imax = imax;
  r.dmax = dmax;
  auto resL = minimal_resolution(L, imax, dmax);
  const BigradedSeries bL = betti(resL).bigraded();

  ModuleMap pres = minimal_presentation(L);
  const bool pres_ok = count_at_most(pres.target->generator_degrees(), dmax) == resL.rank(0) &&
                       count_at_most(pres.source->generator_degrees(), dmax) == resL.rank(1);
  r.checks.push_back(make_check("dim ℒ^0, ℒ^1 from the presentation", pres_ok));

  SyzygySplit split = syzygy_split(fp, L, dmax);
  for (const auto& c : split.checks) r.checks.push_back(c);
  if (!split.pass) {
    r.pass = false;
    return r;
  }
  const int h = imax - 2;
  auto S = ext_algebra(fp.S, h, dmax, "e");
  auto T = ext_algebra(fp.T, h, dmax, "f");
  auto MS = ext_module(S, split.M);
  auto NT = ext_module(T, split.N);
  auto XM = free_product_module(free_product(S.algebra, T.algebra, h, dmax), MS.module);
  auto XN = free_product_module(free_product(T.algebra, S.algebra, h, dmax), NT.module);
  const BigradedSeries cM = shift2(count_bigraded(*XM.module, h, dmax), imax);
  const BigradedSeries cN = shift2(count_bigraded(*XN.module, h, dmax), imax);

  bool ok = true;
  std::string where;
  for (int n = 2; n <= imax; ++n)
    for (int j = 0; j <= dmax; ++j)
      if (bL.at(n, j) != cM.at(n, j) + cN.at(n, j) && ok) {
        ok = false;
        where = "bidegree (" + std::to_string(n) + ", " + std::to_string(j) + ")";
      }
  r.checks.push_back(make_check("b_{n,j}(L) = [ℛ⊗ℳ_S]^{n-2}_j + [ℛ⊗𝒩_T]^{n-2}_j", ok, where));

  auto series = coproduct_module_series(S.bigraded(), T.bigraded(), betti(MS.res).bigraded()) +
                coproduct_module_series(T.bigraded(), S.bigraded(), betti(NT.res).bigraded());
  bool series_ok = true;
  const auto shifted = shift2(series, imax);
  for (int n = 2; n <= imax; ++n)
    for (int j = 0; j <= dmax; ++j)
      if (shifted.at(n, j) != bL.at(n, j)) series_ok = false;
  r.checks.push_back(make_check("coproduct-module series of the components", series_ok));

  for (int n = 0; n <= imax; ++n) {
    std::size_t a = 0, b = 0;
    for (int j = 0; j <= dmax; ++j) {
      a += static_cast<std::size_t>(cM.at(n, j));
      b += static_cast<std::size_t>(cN.at(n, j));
    }
    r.dim_L.push_back(resL.rank(n));
    r.from_M.push_back(a);
    r.from_N.push_back(b);
  }
  r.pass = all_pass(r.checks);
  return r;
}

FiberModuleReport verify_fiber_module_ext_sequence(const FiberProductAlgebra& fp, const FiberModule& fm, int imax,
                                                   int dmax) {
  FiberModuleReport r;
  r.imax = imax;
  r.rank_V = static_cast<long long>(fm.V->dim(0));
  int d = dmax;
  for (const auto* X : {&fm.L, &fm.M, &fm.N, &fm.V}) d = std::min(d, max_valid_dmax(**X));
  r.dmax = d;
  auto resL = minimal_resolution(fm.L, imax, d);
  auto resM = minimal_resolution(fm.M, imax, d);
  auto resN = minimal_resolution(fm.N, imax, d);
  auto resV = minimal_resolution(fm.V, imax, d);
  auto resk = minimal_resolution(residue_module(fp.R, d), imax, d);
  r.pL = betti(resL).poincare();
  r.pM = betti(resM).poincare();
  r.pN = betti(resN).poincare();
  r.pk = betti(resk).poincare();
  r.checks.push_back(make_check("P_L + r·P_k = P_M + P_N",
                                fiber_module_poincare_check(r.pL, r.pM, r.pN, r.pk, r.rank_V)));
  BigradedSeries lhs = betti(resL).bigraded(), rhs = betti(resM).bigraded() + betti(resN).bigraded();
  for (long long i = 0; i < r.rank_V; ++i) lhs = lhs + betti(resk).bigraded();
  r.checks.push_back(make_check("same identity per internal degree", lhs == rhs));

  auto mu = induced_ext_map(resM, resV, fm.mu, imax);
  auto nu = induced_ext_map(resN, resV, fm.nu, imax);
  const PrimeField& F = fp.R->field();
  bool inj = true;
  std::string where;
  for (int n = 0; n <= imax && inj; ++n)
    for (std::size_t j = 0; j < mu[n].size(); ++j) {
      const Matrix& a = mu[n][j];
      const Matrix& b = nu[n][j];
      Matrix m(a.rows() + b.rows(), a.cols());
      for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t c = 0; c < a.cols(); ++c) m(i, c) = a(i, c);
      for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t c = 0; c < b.cols(); ++c) m(a.rows() + i, c) = F.neg(b(i, c));
      if (rank(F, m) != a.cols()) {
        inj = false;
        where = "bidegree (" + std::to_string(n) + ", " + std::to_string(j) + ")";
        break;
      }
    }
  r.checks.push_back(make_check("(μ*, −ν*) injective", inj, where));
  r.pass = all_pass(r.checks);
  return r;
}

// ---------------------------------------------------------------------------

namespace {

/// Cochains Hom(F_1, N) of shift t: f(g) ∈ N^{deg g + t}.
struct Cochains {
  int t = 0;
  std::vector<std::size_t> offset;  // start of generator g's component
  std::size_t dim = 0;
  bool c1_known = true, c2_known = true;
  Matrix d0, d1;
};

Cochains cochains(const FreeResolution& K, const GradedModule& N, int t) {
  Cochains c;
  c.t = t;
  const int hi = N.hi();
  const GradedModule& F1 = *K.free[1];
  for (std::size_t g = 0; g < F1.rank(); ++g) {
    const int e = F1.generator_degrees()[g] + t;
    if (e > hi) c.c1_known = false;
    c.offset.push_back(c.dim);
    c.dim += N.dim(e);
  }
  // d0: N^t -> C^1, n ↦ (∂g · n)
  c.d0 = Matrix(c.dim, N.dim(t));
  for (std::size_t q = 0; q < N.dim(t); ++q) {
    Vec e(N.dim(t), 0);
    e[q] = 1;
    for (std::size_t g = 0; g < F1.rank(); ++g) {
      const int m = F1.generator_degrees()[g];
      if (m + t > hi) continue;
      Vec v = N.act(m, K.d[1].images[g], t, e);
      for (std::size_t k = 0; k < v.size(); ++k) c.d0(c.offset[g] + k, q) = v[k];
    }
  }
  if (K.length() < 2) {
    c.d1 = Matrix(0, c.dim);
    return c;
  }
  const GradedModule& F2 = *K.free[2];
  // F_2 generators up to degree hi - t matter; none are assumed above the algebra's cap
  if (K.dmax < std::min(hi - t, K.A->cap())) c.c2_known = false;
  std::vector<std::size_t> off2;
  std::size_t dim2 = 0;
  for (std::size_t h = 0; h < F2.rank(); ++h) {
    const int e = F2.generator_degrees()[h] + t;
    if (e > hi) c.c2_known = false;
    off2.push_back(dim2);
    dim2 += N.dim(e);
  }
  c.d1 = Matrix(dim2, c.dim);
  for (std::size_t h = 0; h < F2.rank(); ++h) {
    const int dh = F2.generator_degrees()[h];
    if (dh + t > hi || dh + t < 0) continue;
    const Vec& img = K.d[2].images[h];
    for (std::size_t g = 0; g < F1.rank(); ++g) {
      const int dg = F1.generator_degrees()[g];
      const int m = dh - dg;
      if (m < 0 || dg + t < 0 || K.A->dim(m) == 0) continue;
      auto a = std::span<const Scalar>(img).subspan(F1.offset(dh, g), K.A->dim(m));
      if (is_zero(a)) continue;
      for (std::size_t q = 0; q < N.dim(dg + t); ++q) {
        Vec e(N.dim(dg + t), 0);
        e[q] = 1;
        Vec v = N.act(m, a, dg + t, e);
        for (std::size_t k = 0; k < v.size(); ++k) c.d1(off2[h] + k, c.offset[g] + q) = v[k];
      }
    }
  }
  return c;
}

int max_degree(const GradedModule& F) {
  int m = 0;
  for (int d : F.generator_degrees()) m = std::max(m, d);
  return m;
}

}  // namespace

const DepthDegree* DepthProbe::at(int degree) const {
  for (const auto& d : degrees)
    if (d.degree == degree) return &d;
  return nullptr;
}

DepthProbe depth_probe(FreeResolution K, const ModulePtr& N) {
  if (K.length() < 1) throw Error("depth probe needs at least F_1 of a resolution of k");
  if (K.A != N->algebra()) throw Error("depth probe: module and resolution over different algebras");
  DepthProbe p;
  const PrimeField& F = K.A->field();
  const int top = max_degree(*K.free[1]);
  for (int t = -top; t <= N->hi(); ++t) {
    Cochains c = cochains(K, *N, t);
    const std::size_t r0 = rank(F, c.d0);
    DepthDegree d{-t};
    d.hom = N->dim(t) - r0;
    d.hom_known = t >= 0 && c.c1_known;
    d.ext1 = (c.dim - rank(F, c.d1)) - r0;
    d.ext1_known = c.c1_known && c.c2_known;
    p.degrees.push_back(d);
  }
  p.K = std::move(K);
  return p;
}

DepthCertificate depth_certificate(const FiberProductAlgebra& fp, const ModulePtr& M, int jmax, int imax, int dmax,
                                   GldimHint hint) {
  if (M->algebra() != fp.S) throw Error("depth certificate needs an S-module");
  if (M->total_dim() == 0) throw Error("depth certificate needs a nonzero module");
  DepthCertificate c;
  c.imax = imax;
  c.dmax = dmax;
  c.jmax = jmax;
  auto S = ext_algebra(fp.S, imax, dmax, "e");
  auto T = ext_algebra(fp.T, imax, dmax, "f");
  if (S.dim(1) == 0 || T.dim(1) == 0) throw Error("depth certificate needs S and T different from k");
  auto MS = ext_module(S, M);
  FreeProduct FP = free_product(S.algebra, T.algebra, imax, dmax);
  FreeProductModule MR = free_product_module(FP, MS.module);
  const GradedModule& N = *MR.module;
  const AlgebraPtr& R = FP.P;
  const PrimeField& F = R->field();

  // resolution of k over ℛ whose F_1 is spanned by algebra generators of 𝒮 and 𝒯
  std::vector<int> degs;
  std::vector<Vec> images;
  std::vector<int> factor;
  for (int f = 0; f < 2; ++f) {
    const GradedAlgebra& X = FP.factor(f);
    for (int n = 1; n <= imax; ++n) {
      EchelonBasis dec(F, X.dim(n));
      for (int a = 1; a < n; ++a)
        for (std::size_t i = 0; i < X.dim(a); ++i)
          for (std::size_t j = 0; j < X.dim(n - a); ++j) dec.insert(X.product(a, i, n - a, j));
      for (std::size_t i = 0; i < X.dim(n); ++i)
        if (dec.insert(X.unit_vector(n, i))) {
          degs.push_back(n);
          images.push_back(R->unit_vector(n, FP.index.at(FpWord{{f, n, i}})));
          factor.push_back(f);
        }
    }
  }
  FreeResolution K;
  K.A = R;
  K.module = residue_module(R, imax);
  K.hmax = 2;
  K.dmax = imax;
  K.free.push_back(free_module(R, {0}, imax, "g0_"));
  K.d.push_back(ModuleMap{K.free[0], K.module, {Vec{1}}});
  K.free.push_back(free_module(R, degs, imax, "g1_"));
  K.d.push_back(ModuleMap{K.free[1], K.free[0], images});
  auto ker = kernel_bases(K.d[1], imax);
  K.d.push_back(free_cover(K.free[1], minimal_generators(*K.free[1], [&](int d) { return ker[d]; }, imax), imax,
                           "g2_"));
  K.free.push_back(K.d.back().source);
  auto kc = verify_complex(K);
  c.checks.push_back(make_check("F_1 on algebra generators resolves k over ℛ", kc.pass, kc.first_failure));

  DepthProbe probe = depth_probe(K, MR.module);
  bool any_known = false, hom_zero = true;
  for (const auto& d : probe.degrees) {
    if (!d.hom_known) continue;
    any_known = true;
    if (d.hom != 0) hom_zero = false;
    if (hom_zero) c.hom_zero_through = -d.degree;
  }
  c.checks.push_back(make_check("Hom_ℛ(k, ℳ_R) = 0 in window", any_known && hom_zero,
                                "cohomological degrees 0.." + std::to_string(c.hom_zero_through)));

  c.varsigma = S.algebra->label(1, 0);
  c.vartheta = T.algebra->label(1, 0);
  c.gldim_S_ge2 = S.dim(2) > 0;
  c.gldim_T_ge2 = T.dim(2) > 0;
  if (c.gldim_S_ge2) c.varsigma2 = S.algebra->label(2, 0);
  if (c.gldim_T_ge2) c.vartheta2 = T.algebra->label(2, 0);
  c.M_free = MS.module->dim(1) == 0;
  c.mu = MS.res.free[0]->generator_labels()[0];
  if (!c.M_free) c.mu2 = MS.res.free[1]->generator_labels()[0];
  if (hint.S_one && hint.T_one) c.gldim_one = *hint.S_one && *hint.T_one;

  auto basis_index = [&](int deg, int mdeg) -> std::optional<std::size_t> {
    for (std::size_t k = 0; k < MR.basis[deg].size(); ++k)
      if (MR.basis[deg][k].word.empty() && MR.basis[deg][k].mdeg == mdeg && MR.basis[deg][k].m == 0) return k;
    return std::nullopt;
  };
  const FpLetter vs{0, 1, 0}, vt{1, 1, 0}, vs2{0, 2, 0}, vt2{1, 2, 0};
  // letters (left to right) applied to 1⊗μ (mdeg 0) or 1⊗μ' (mdeg 1)
  auto element = [&](const std::vector<FpLetter>& letters, int mdeg) -> std::optional<std::pair<int, Vec>> {
    auto k = basis_index(mdeg, mdeg);
    if (!k) return std::nullopt;
    int deg = mdeg;
    Vec x(N.dim(deg), 0);
    x[*k] = 1;
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
      if (deg + it->degree > N.hi()) return std::nullopt;
      x = N.act_basis(it->degree, FP.index.at(FpWord{*it}), deg, x);
      deg += it->degree;
    }
    return std::make_pair(deg, x);
  };
  auto repeat = [](std::vector<FpLetter> unit, int times, std::vector<FpLetter> tail) {
    std::vector<FpLetter> out;
    for (int i = 0; i < times; ++i) out.insert(out.end(), unit.begin(), unit.end());
    out.insert(out.end(), tail.begin(), tail.end());
    return out;
  };

  struct Case {
    std::string name;
    bool applies;
    int offset;  // degree = -(2j + offset)
  };
  const std::vector<Case> cases{{"M not free", !c.M_free, -1}, {"gldim T >= 2", c.gldim_T_ge2, 0},
                                {"gldim S >= 2", c.gldim_S_ge2, 1}};
  for (const Case& cs : cases) {
    if (!cs.applies) continue;
    for (int j = 1; j <= jmax; ++j) {
      DepthWitness w;
      w.case_name = cs.name;
      w.j = j;
      w.degree = -(2 * j + cs.offset);
      std::optional<std::pair<int, Vec>> a, b;
      if (cs.offset == -1) {
        a = element(repeat({vt, vs}, j - 1, {vt}), 0);
        b = element(repeat({vs, vt}, j - 1, {}), 1);
      } else if (cs.offset == 0) {
        a = element(repeat({vt, vs}, j - 1, {vt2}), 0);
        b = element(repeat({vs, vt}, j, {}), 0);
      } else {
        a = element(repeat({vt, vs}, j, {vt}), 0);
        b = element(repeat({vs, vt}, j - 1, {vs2, vt}), 0);
      }
      const int t = 2 * j + cs.offset;
      Cochains co = cochains(K, N, t);
      if (!a || !b || !co.c1_known) {
        w.detail = "outside the window";
        c.witnesses.push_back(w);
        continue;
      }
      Vec f(co.dim, 0);
      for (std::size_t g = 0; g < degs.size(); ++g) {
        const auto& x = factor[g] == 0 ? *a : *b;
        Vec v = N.act(degs[g], images[g], t, x.second);
        std::copy(v.begin(), v.end(), f.begin() + co.offset[g]);
      }
      w.cocycle = is_zero(co.d1.apply(F, f));
      Matrix ext(co.d0.rows(), co.d0.cols() + 1);
      for (std::size_t r = 0; r < co.d0.rows(); ++r) {
        for (std::size_t q = 0; q < co.d0.cols(); ++q) ext(r, q) = co.d0(r, q);
        ext(r, co.d0.cols()) = f[r];
      }
      w.nonzero = rank(F, ext) > rank(F, co.d0);
      if (!co.c2_known && w.cocycle)
        w.status = Status::UnknownWindow, w.detail = "cocycle condition leaves the window";
      else
        w.status = w.cocycle && w.nonzero ? Status::Pass : Status::Fail;
      c.witnesses.push_back(w);
    }
  }
  if (c.M_free && !c.gldim_S_ge2 && !c.gldim_T_ge2) {
    DepthWitness w;
    w.case_name = "gldim 1, M free";
    w.degree = 1;
    const DepthDegree* d = probe.at(1);
    w.cocycle = w.nonzero = d && d->ext1 > 0;
    w.status = !d || !d->ext1_known ? Status::UnknownWindow : d->ext1 > 0 ? Status::Pass : Status::Fail;
    w.detail = d ? "dim Ext^1 in degree 1 = " + std::to_string(d->ext1) : "outside the window";
    if (!c.gldim_one) w.detail += " (global dimension one not certified by a presentation)";
    c.witnesses.push_back(w);
  }

  bool witnessed = false;
  for (const auto& w : c.witnesses) {
    Check ch{w.case_name + (w.j ? ", j = " + std::to_string(w.j) : "") + ": nonzero Ext^1 class in degree " +
                 std::to_string(w.degree),
             w.status, w.detail};
    c.checks.push_back(ch);
    if (w.status == Status::Pass) witnessed = true;
  }
  // independent of the construction: the full Ext^1 computation
  std::optional<int> direct;
  std::size_t direct_dim = 0;
  for (const auto& d : probe.degrees)
    if (d.ext1_known && d.ext1 > 0 && !direct) direct = d.degree, direct_dim = d.ext1;
  c.ext1_direct = direct;
  c.checks.push_back(make_check("Ext^1_ℛ(k, ℳ_R) ≠ 0 by direct computation", direct.has_value(),
                                direct ? "degree " + std::to_string(*direct) + ", dim " + std::to_string(direct_dim)
                                       : ""));
  c.depth_upper = witnessed || direct ? 1 : -1;
  c.depth_lower = hom_zero && any_known ? 1 : 0;
  c.checks.push_back(make_check("depth_ℛ ℳ_R = 1 in window", c.depth_lower == 1 && c.depth_upper == 1));
  c.pass = all_pass(c.checks);
  return c;
}

DepthBound depth_upper_bound(const FiberProductAlgebra& fp, const ModulePtr& L, int imax, int dmax) {
  if (L->algebra() != fp.R) throw Error("depth bound needs a module over the fiber product");
  DepthBound b;
  b.imax = imax;
  b.dmax = dmax;
  auto R = ext_algebra(fp.R, imax, dmax);
  auto resL = minimal_resolution(L, imax, std::min(dmax, max_valid_dmax(*L)));
  for (int n = 0; n <= imax; ++n)
    if (resL.rank(n) == 0) b.finite_pd = true;
  auto ext = ext_module_from(R, resL);
  auto K = minimal_resolution(residue_module(R.algebra, imax), 2, imax);
  DepthProbe probe = depth_probe(std::move(K), ext.module);
  for (const auto& d : probe.degrees) {
    if (d.hom_known && d.hom > 0 && !b.hom_degree) b.hom_degree = d.degree;
    if (d.ext1_known && d.ext1 > 0 && !b.ext1_degree) b.ext1_degree = d.degree;
  }
  if (b.finite_pd) {
    b.checks.push_back(make_check("finite projective dimension: Hom_ℛ(k, ℒ) ≠ 0", b.hom_degree.has_value()));
    b.depth_upper = b.hom_degree ? 0 : -1;
  } else {
    SyzygySplit split = syzygy_split(fp, L, std::min(dmax, max_valid_dmax(*L)));
    b.checks.push_back(make_check("Ω²L splits", split.pass));
    bool component = false;
    if (split.pass) {
      if (split.M->total_dim() > 0) {
        auto cert = depth_certificate(fp, split.M, 1, imax, dmax);
        component = component || cert.depth_upper == 1;
      }
      if (split.N->total_dim() > 0) {
        auto swapped = fiber_product(fp.T, fp.S);
        auto cert = depth_certificate(swapped, split.N, 1, imax, dmax);
        component = component || cert.depth_upper == 1;
      }
    }
    b.checks.push_back(make_check("a syzygy component has Ext^1_ℛ(k, -) ≠ 0", component));
    b.checks.push_back(make_check("Hom_ℛ(k, ℒ) or Ext^1_ℛ(k, ℒ) nonzero", b.hom_degree || b.ext1_degree,
                                  b.ext1_degree ? "Ext^1 in degree " + std::to_string(*b.ext1_degree) : ""));
    b.depth_upper = b.hom_degree ? 0 : b.ext1_degree ? 1 : -1;
  }
  b.pass = all_pass(b.checks);
  return b;
}

}  // namespace fiberres
