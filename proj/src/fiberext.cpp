#include <algorithm>
#include <sstream>

#include "fiberres/extalg.hpp"

namespace fiberres {

namespace {

using Images = std::vector<std::vector<Vec>>;  // [i][g] image of generator g of src.free[i]

/// Checks that psi is a chain map src -> tgt over the projection R -> factor:
/// ψ(r·x) = π(r)·ψ(x), ε_tgt ∘ ψ_0 = ε_src and ψ ∘ ∂ = ∂ ∘ ψ on generators.
Check check_chain_map(const std::string& name, const FiberProductAlgebra& fp, Side side, const FreeResolution& src,
                      const FreeResolution& tgt, const Images& psi) {
  const int top = std::min(src.length(), tgt.length());
  auto map_element = [&](int i, int d, std::span<const Scalar> v) {
    const GradedModule& X = *src.free[i];
    const GradedModule& Y = *tgt.free[i];
    Vec out(Y.dim(d), 0);
    for (std::size_t g = 0; g < X.rank(); ++g) {
      const int m = d - X.generator_degrees()[g];
      if (m < 0 || fp.R->dim(m) == 0) continue;
      auto block = v.subspan(X.offset(d, g), fp.R->dim(m));
      Vec s = fp.project(side, m, block);
      if (is_zero(s)) continue;
      axpy(fp.R->field(), out, Y.act(m, s, X.generator_degrees()[g], psi[i][g]), 1);
    }
    return out;
  };
  for (int i = 0; i <= top; ++i)
    for (std::size_t g = 0; g < src.rank(i); ++g) {
      const int d = src.generator_degrees(i)[g];
      if (d > tgt.dmax) continue;
      Vec lhs = tgt.d[i].apply(d, psi[i][g]);
      Vec rhs = i == 0 ? src.d[0].images[g] : map_element(i - 1, d, src.d[i].images[g]);
      if (lhs != rhs)
        return make_check(name, false,
                          "fails on generator " + src.free[i]->generator_labels()[g] + " at bidegree (" +
                              std::to_string(i) + ", " + std::to_string(d) + ")");
    }
  return make_check(name, true, "checked through homological degree " + std::to_string(top));
}

/// ψ*(h^∨) for every generator h of tgt: coefficient vectors over src generators.
Images dual_of(const FreeResolution& src, const FreeResolution& tgt, const Images& psi, int imax) {
  Images out(imax + 1);
  for (int i = 0; i <= imax; ++i)
    for (std::size_t h = 0; h < tgt.rank(i); ++h) {
      const int e = tgt.generator_degrees(i)[h];
      Vec v(src.rank(i), 0);
      for (std::size_t g = 0; g < src.rank(i); ++g)
        if (src.generator_degrees(i)[g] == e) v[g] = psi[i][g][tgt.free[i]->offset(e, h)];
      out[i].push_back(std::move(v));
    }
  return out;
}

std::size_t find_word(const WordComplex& wc, const Word& w) {
  const auto& list = wc.basis[w.hdeg()];
  auto it = std::find(list.begin(), list.end(), w);
  return it == list.end() ? list.size() : static_cast<std::size_t>(it - list.begin());
}

Vec unit(std::size_t n, std::size_t i) {
  Vec v(n, 0);
  if (i < n) v[i] = 1;
  return v;
}

/// Words of the free product of 𝒮 and 𝒯 mapped to ℛ.
Vec phi_image(const FiberExt& fx, const FpWord& u) {
  if (u.empty()) return Vec{1};
  int deg = 0;
  Vec acc;
  for (const FpLetter& l : u) {
    const Vec& img = (l.factor == 0 ? fx.sigma : fx.tau)[l.degree][l.index];
    acc = deg == 0 ? img : fx.R.algebra->multiply(deg, acc, l.degree, img);
    deg += l.degree;
  }
  return acc;
}

template <class F>
Check multiplicative(const std::string& name, const GradedAlgebra& X, const GradedAlgebra& R, const Images& img,
                     int imax, F&& reason) {
  for (int a = 1; a <= imax; ++a)
    for (int b = 1; a + b <= imax; ++b)
      for (std::size_t i = 0; i < X.dim(a); ++i)
        for (std::size_t j = 0; j < X.dim(b); ++j) {
          Vec lhs = R.multiply(a, img[a][i], b, img[b][j]);
          Vec rhs(R.dim(a + b), 0);
          auto p = X.product(a, i, b, j);
          for (std::size_t k = 0; k < p.size(); ++k)
            if (p[k] != 0) axpy(R.field(), rhs, img[a + b][k], p[k]);
          if (lhs != rhs) return make_check(name, false, reason(a, i, b, j));
        }
  return make_check(name, true);
}

BigradedSeries bigraded_dims(const GradedAlgebra& A, int imax, int dmax) {
  BigradedSeries s(imax, dmax);
  for (int n = 0; n <= imax; ++n)
    for (std::size_t i = 0; i < A.dim(n); ++i) {
      const int j = A.internal_degree(n, i);
      if (j <= dmax) s.at(n, j) += 1;
    }
  return s;
}

std::string dims_text(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::ostringstream os;
  for (std::size_t n = 0; n < a.size(); ++n) os << (n ? " " : "") << a[n] << "/" << b[n];
  return os.str();
}

}  // namespace

FiberExt fiber_ext(const FiberProductAlgebra& fp, int imax, int dmax) {
  FiberExt fx;
  fx.fp = fp;
  fx.imax = imax;
  fx.dmax = dmax;
  fx.D = build_word_resolution(fp, residue_module(fp.S, dmax), Side::S, imax, dmax);
  const WordComplex& D = fx.D;
  fx.S = ext_algebra_from(D.data.E, dual_labels(D.data.E, "e"));
  fx.T = ext_algebra_from(D.data.F, dual_labels(D.data.F, "f"));
  std::vector<std::vector<std::string>> labels(imax + 1);
  for (int i = 0; i <= imax; ++i)
    for (const Word& w : D.basis[i]) labels[i].push_back(word_label(D.data, w));
  labels[0] = {"1"};
  fx.R = ext_algebra_from(D.complex, std::move(labels));

  // ψ: D -> E keeps single P letters; ψ': D -> F sends f.p0 to f and p0 to 1
  Images psiE(imax + 1), psiF(imax + 1);
  for (int i = 0; i <= imax; ++i)
    for (const Word& w : D.basis[i]) {
      const int d = w.idegree();
      Vec e(D.data.E.free[i]->dim(d), 0), f(D.data.F.free[i]->dim(d), 0);
      const Letter l = w.leading();
      if (w.letters.size() == 1) e[D.data.E.free[i]->offset(d, l.index)] = 1;
      if (w.letters.size() == 1 && i == 0) f[D.data.F.free[0]->offset(d, 0)] = 1;
      if (w.letters.size() == 2 && l.tag == Tag::F && w.letters[1].hdeg == 0)
        f[D.data.F.free[i]->offset(d, l.index)] = 1;
      psiE[i].push_back(std::move(e));
      psiF[i].push_back(std::move(f));
    }
  fx.checks.push_back(check_chain_map("chain map D -> E over σ", fp, Side::S, D.complex, D.data.E, psiE));
  fx.checks.push_back(check_chain_map("chain map D -> F over τ", fp, Side::T, D.complex, D.data.F, psiF));
  fx.sigma = dual_of(D.complex, D.data.E, psiE, imax);
  fx.tau = dual_of(D.complex, D.data.F, psiF, imax);
  return fx;
}

PhiReport verify_phi_iso(const FiberExt& fx) {
  PhiReport r;
  r.imax = fx.imax;
  r.dmax = fx.dmax;
  r.checks = fx.checks;
  const GradedAlgebra& R = *fx.R.algebra;
  const GradedAlgebra& S = *fx.S.algebra;
  const GradedAlgebra& T = *fx.T.algebra;
  const WordComplex& D = fx.D;
  const PrimeField& F = R.field();

  FreeProduct FP = free_product(fx.S.algebra, fx.T.algebra, fx.imax, fx.dmax);
  for (int n = 0; n <= fx.imax; ++n) {
    r.dim_R.push_back(R.dim(n));
    r.dim_free.push_back(FP.P->dim(n));
    std::size_t t = 0;
    for (int i = 0; i <= n; ++i) t += S.dim(i) * T.dim(n - i);
    r.dim_tensor.push_back(t);
    if (r.tensor_mismatch < 0 && t != R.dim(n)) r.tensor_mismatch = n;
  }
  const auto bR = bigraded_dims(R, fx.imax, fx.dmax);
  const auto bFP = bigraded_dims(*FP.P, fx.imax, fx.dmax);
  r.checks.push_back(make_check("dim ℛ^n = dim(𝒮⊔𝒯)^n per bidegree", bR == bFP, dims_text(r.dim_R, r.dim_free)));
  r.checks.push_back(make_check("Hilb(𝒮⊔𝒯) = coproduct series",
                                bFP == coproduct_module_series(fx.S.bigraded(), fx.T.bigraded(), fx.S.bigraded())));

  // generator images
  bool images_ok = true;
  std::string where;
  for (int i = 1; i <= fx.imax && images_ok; ++i) {
    for (std::size_t e = 0; e < S.dim(i) && images_ok; ++e) {
      Word w{{{Tag::P, i, e, D.data.E.generator_degrees(i)[e]}}};
      if (fx.sigma[i][e] != unit(R.dim(i), find_word(D, w))) images_ok = false, where = "σ*(" + S.label(i, e) + ")";
    }
    for (std::size_t f = 0; f < T.dim(i) && images_ok; ++f) {
      Word w{{{Tag::F, i, f, D.data.F.generator_degrees(i)[f]}, {Tag::P, 0, 0, 0}}};
      if (fx.tau[i][f] != unit(R.dim(i), find_word(D, w))) images_ok = false, where = "τ*(" + T.label(i, f) + ")";
    }
  }
  r.checks.push_back(make_check("σ*(e^∨) = e^∨ and τ*(f^∨) = f^∨", images_ok, where));

  auto why = [](const GradedAlgebra& X) {
    return [&X](int a, std::size_t i, int b, std::size_t j) {
      return "on " + X.label(a, i) + " * " + X.label(b, j);
    };
  };
  r.checks.push_back(multiplicative("σ* multiplicative", S, R, fx.sigma, fx.imax, why(S)));
  r.checks.push_back(multiplicative("τ* multiplicative", T, R, fx.tau, fx.imax, why(T)));

  // φ is bijective degreewise
  bool bij = true;
  for (int n = 0; n <= fx.imax && bij; ++n) {
    if (FP.P->dim(n) != R.dim(n)) {
      bij = false;
      where = "dimension differs in degree " + std::to_string(n);
      break;
    }
    Matrix m(R.dim(n), FP.P->dim(n));
    for (std::size_t c = 0; c < FP.words[n].size(); ++c) m.set_column(c, phi_image(fx, FP.words[n][c]));
    if (rank(F, m) != R.dim(n)) bij = false, where = "rank drops in degree " + std::to_string(n);
  }
  r.checks.push_back(make_check("φ bijective", bij, bij ? "" : where));

  // multiplication table: f^∨·w^∨ = (fw)^∨ for l(w) in E ∪ P, e^∨·w^∨ = (ew)^∨ for l(w) in F
  bool table = true;
  const int top = std::min(4, fx.imax);
  for (int hw = 0; hw < top && table; ++hw)
    for (std::size_t wi = 0; wi < D.basis[hw].size() && table; ++wi) {
      const Word& w = D.basis[hw][wi];
      const bool f_side = w.leading().tag != Tag::F;
      const FreeResolution& X = f_side ? D.data.F : D.data.E;
      const GradedAlgebra& XA = f_side ? T : S;
      const auto& img = f_side ? fx.tau : fx.sigma;
      for (int hx = 1; hx + hw <= top && hx <= X.length() && table; ++hx)
        for (std::size_t x = 0; x < X.rank(hx); ++x) {
          Word xw = w;
          xw.letters.insert(xw.letters.begin(), {f_side ? Tag::F : Tag::E, hx, x, X.generator_degrees(hx)[x]});
          Vec got = R.multiply(hx, img[hx][x], hw, unit(R.dim(hw), wi));
          Vec want = unit(R.dim(hx + hw), find_word(D, xw));
          ++r.table_cases;
          if (got != want) {
            table = false;
            where = XA.label(hx, x) + " * " + word_label(D.data, w);
            break;
          }
        }
    }
  r.checks.push_back(make_check("multiplication table through total degree " + std::to_string(top), table,
                                table ? std::to_string(r.table_cases) + " cases" : where));
  r.checks.push_back(make_check("tensor-product control differs (expected)", r.tensor_mismatch >= 0,
                                r.tensor_mismatch >= 0 ? "first mismatch in degree " + std::to_string(r.tensor_mismatch) +
                                                             ": " + std::to_string(r.dim_tensor[r.tensor_mismatch]) +
                                                             " vs " + std::to_string(r.dim_R[r.tensor_mismatch])
                                                       : "no mismatch in window"));
  r.pass = all_pass(r.checks);
  return r;
}

PhiReport verify_phi_iso(const FiberProductAlgebra& fp, int imax, int dmax) {
  return verify_phi_iso(fiber_ext(fp, imax, dmax));
}

ThetaReport verify_theta_iso(const FiberExt& fx, const ModulePtr& M) {
  if (M->algebra() != fx.fp.S) throw Error("θ check needs a module over the first factor");
  ThetaReport r;
  r.imax = fx.imax;
  r.dmax = fx.dmax;
  const int dmax = std::min(fx.dmax, max_valid_dmax(*M));
  const FiberProductAlgebra& fp = fx.fp;
  WordComplex G = build_word_resolution(fp, M, Side::S, fx.imax, dmax);
  ExtModule MS = ext_module_from(fx.S, G.data.P);
  ExtModule MR = ext_module_from(fx.R, G.complex);
  const GradedModule& XR = *MR.module;
  const GradedModule& XS = *MS.module;

  Images psi(fx.imax + 1);
  for (int i = 0; i <= fx.imax; ++i)
    for (const Word& w : G.basis[i]) {
      Vec v(G.data.P.free[i]->dim(w.idegree()), 0);
      if (w.letters.size() == 1) v[G.data.P.free[i]->offset(w.idegree(), w.leading().index)] = 1;
      psi[i].push_back(std::move(v));
    }
  r.checks.push_back(check_chain_map("chain map G -> P over σ", fp, Side::S, G.complex, G.data.P, psi));
  Images sM = dual_of(G.complex, G.data.P, psi, fx.imax);

  bool images_ok = true;
  for (int i = 0; i <= fx.imax && images_ok; ++i)
    for (std::size_t p = 0; p < G.data.P.rank(i); ++p) {
      Word w{{{Tag::P, i, p, G.data.P.generator_degrees(i)[p]}}};
      if (sM[i][p] != unit(XR.dim(i), find_word(G, w))) images_ok = false;
    }
  r.checks.push_back(make_check("σ*_M(p^∨) = p^∨", images_ok));

  bool linear = true;
  const GradedAlgebra& S = *fx.S.algebra;
  for (int a = 1; a <= fx.imax && linear; ++a)
    for (int b = 0; a + b <= fx.imax && linear; ++b)
      for (std::size_t i = 0; i < S.dim(a) && linear; ++i)
        for (std::size_t m = 0; m < XS.dim(b); ++m) {
          Vec lhs = XR.act(a, fx.sigma[a][i], b, sM[b][m]);
          Vec rhs(XR.dim(a + b), 0);
          Vec sm = XS.act_basis(a, i, b, unit(XS.dim(b), m));
          for (std::size_t k = 0; k < sm.size(); ++k)
            if (sm[k] != 0) axpy(S.field(), rhs, sM[a + b][k], sm[k]);
          if (lhs != rhs) {
            linear = false;
            break;
          }
        }
  r.checks.push_back(make_check("σ*_M is 𝒮-linear", linear));

  FreeProduct FP = free_product(fx.S.algebra, fx.T.algebra, fx.imax, fx.dmax);
  FreeProductModule FPM = free_product_module(FP, MS.module);
  auto direct = minimal_resolution(restrict_to_fiber(M, fp, Side::S), fx.imax, dmax);
  const BettiTable bd = betti(direct);
  for (int n = 0; n <= fx.imax; ++n) {
    r.dim_MR.push_back(XR.dim(n));
    r.dim_tensor.push_back(FPM.basis[n].size());
    r.dim_direct.push_back(bd.row_total(n));
  }
  BigradedSeries bT(fx.imax, dmax), bR = betti(G.complex).bigraded();
  for (int n = 0; n <= fx.imax; ++n)
    for (std::size_t k = 0; k < FPM.basis[n].size(); ++k) {
      const int j = FPM.module->internal_degree(n, k);
      if (j <= dmax) bT.at(n, j) += 1;
    }
  r.checks.push_back(make_check("dim(ℛ⊗_𝒮ℳ_S)^n = dim ℳ_R^n per bidegree", bT == bR,
                                dims_text(r.dim_tensor, r.dim_MR)));
  r.checks.push_back(make_check("ℳ_R agrees with the direct resolution", bR == bd.bigraded()));
  auto bE = betti(G.data.E).bigraded(), bF = betti(G.data.F).bigraded(), bP = betti(G.data.P).bigraded();
  r.checks.push_back(make_check("coproduct-module series", coproduct_module_series(bE, bF, bP) == bR));
  r.series = coproduct_module_series(bE.collapse(), bF.collapse(), bP.collapse());

  bool bij = true;
  std::string where;
  for (int n = 0; n <= fx.imax && bij; ++n) {
    if (FPM.basis[n].size() != XR.dim(n)) {
      bij = false;
      where = "dimension differs in degree " + std::to_string(n);
      break;
    }
    Matrix m(XR.dim(n), FPM.basis[n].size());
    for (std::size_t c = 0; c < FPM.basis[n].size(); ++c) {
      const auto& b = FPM.basis[n][c];
      const int wdeg = n - b.mdeg;
      m.set_column(c, XR.act(wdeg, phi_image(fx, b.word), b.mdeg, sM[b.mdeg][b.m]));
    }
    if (rank(S.field(), m) != XR.dim(n)) bij = false, where = "rank drops in degree " + std::to_string(n);
  }
  r.checks.push_back(make_check("θ bijective", bij, where));
  r.pass = all_pass(r.checks);
  return r;
}

ThetaReport verify_theta_iso(const FiberProductAlgebra& fp, const ModulePtr& M, int imax, int dmax) {
  return verify_theta_iso(fiber_ext(fp, imax, dmax), M);
}

}  // namespace fiberres
