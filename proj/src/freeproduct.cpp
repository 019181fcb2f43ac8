#include "fiberres/freeproduct.hpp"

#include <algorithm>
#include <tuple>

namespace fiberres {

namespace {

bool word_less(const FpWord& a, const FpWord& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

// Letters are tagged A:/B: only when the factors share a label.
bool labels_overlap(const GradedAlgebra& A, const GradedAlgebra& B, int cap) {
  for (int n = 1; n <= cap; ++n)
    for (const auto& l : A.labels(n))
      if (B.find_label(l)) return true;
  return false;
}

std::string word_text(const GradedAlgebra& A, const GradedAlgebra& B, const FpWord& w, bool tag) {
  if (w.empty()) return "1";
  std::string s;
  for (const auto& l : w) {
    if (!s.empty()) s += "|";
    if (tag) s += l.factor == 0 ? "A:" : "B:";
    s += (l.factor == 0 ? A : B).label(l.degree, l.index);
  }
  return s;
}

}  // namespace

int FreeProduct::internal_degree(const FpWord& w) const {
  int s = 0;
  for (const auto& l : w) s += factor(l.factor).internal_degree(l.degree, l.index);
  return s;
}

Vec FreeProduct::multiply_words(const FpWord& u, const FpWord& v) const {
  int m = 0, n = 0;
  for (const auto& l : u) m += l.degree;
  for (const auto& l : v) n += l.degree;
  Vec out(P->dim(m + n), 0);
  auto add = [&](const FpWord& w, Scalar c) {
    auto it = index.find(w);
    if (it == index.end()) return;  // above the internal-degree filter
    out[it->second] = P->field().add(out[it->second], c);
  };
  if (u.empty() || v.empty() || u.back().factor != v.front().factor) {
    FpWord w = u;
    w.insert(w.end(), v.begin(), v.end());
    add(w, 1);
    return out;
  }
  const FpLetter a = u.back(), b = v.front();
  const GradedAlgebra& X = factor(a.factor);
  auto c = X.product(a.degree, a.index, b.degree, b.index);
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k] == 0) continue;
    FpWord w(u.begin(), u.end() - 1);
    w.push_back({a.factor, a.degree + b.degree, k});
    w.insert(w.end(), v.begin() + 1, v.end());
    add(w, c[k]);
  }
  return out;
}

FreeProduct free_product(AlgebraPtr A, AlgebraPtr B, int cap, int dmax) {
  if (cap > A->cap() || cap > B->cap()) throw Error("free product cap exceeds a factor's cap");
  if (!(A->field() == B->field())) throw Error("free product factors over different fields");
  FreeProduct fp;
  fp.A = A;
  fp.B = B;
  fp.dmax = dmax;

  // starting[f][n]: words of degree n whose first letter lies in factor f
  std::vector<std::vector<std::vector<FpWord>>> starting(2, std::vector<std::vector<FpWord>>(cap + 1));
  for (int n = 1; n <= cap; ++n)
    for (int f = 0; f < 2; ++f)
      for (int k = 1; k <= n; ++k)
        for (std::size_t i = 0; i < fp.factor(f).dim(k); ++i) {
          FpLetter l{f, k, i};
          if (k == n) {
            starting[f][n].push_back({l});
            continue;
          }
          for (const FpWord& rest : starting[1 - f][n - k]) {
            FpWord w{l};
            w.insert(w.end(), rest.begin(), rest.end());
            starting[f][n].push_back(std::move(w));
          }
        }

  fp.words.assign(cap + 1, {});
  fp.words[0].push_back({});
  std::vector<std::vector<std::string>> labels(cap + 1);
  std::vector<std::vector<int>> internal(cap + 1);
  for (int n = 1; n <= cap; ++n) {
    for (int f = 0; f < 2; ++f)
      for (const FpWord& w : starting[f][n])
        if (dmax < 0 || fp.internal_degree(w) <= dmax) fp.words[n].push_back(w);
    std::sort(fp.words[n].begin(), fp.words[n].end(), word_less);
  }
  const bool tag = labels_overlap(*A, *B, cap);
  for (int n = 0; n <= cap; ++n)
    for (std::size_t k = 0; k < fp.words[n].size(); ++k) {
      fp.index[fp.words[n][k]] = k;
      labels[n].push_back(word_text(*A, *B, fp.words[n][k], tag));
      internal[n].push_back(fp.internal_degree(fp.words[n][k]));
    }

  auto P = std::make_shared<GradedAlgebra>(A->field(), cap, labels);
  fp.P = P;  // multiply_words reads dims from P
  for (int m = 1; m <= cap; ++m)
    for (int n = 1; m + n <= cap; ++n)
      for (std::size_t i = 0; i < fp.words[m].size(); ++i)
        for (std::size_t j = 0; j < fp.words[n].size(); ++j)
          P->set_product(m, i, n, j, fp.multiply_words(fp.words[m][i], fp.words[n][j]));
  P->set_internal_degrees(internal);
  return fp;
}

FreeProductModule free_product_module(const FreeProduct& fp, const ModulePtr& M) {
  if (M->algebra() != fp.A) throw Error("module must be over the first factor of the free product");
  const int hi = std::min(M->hi(), fp.P->cap());
  FreeProductModule out;
  out.M = M;
  out.basis.resize(hi + 1);
  std::map<std::tuple<FpWord, int, std::size_t>, std::size_t> index;
  std::vector<std::size_t> dims(hi + 1, 0);
  std::vector<std::vector<int>> internal(hi + 1);
  for (int t = 0; t <= hi; ++t)
    for (int a = 0; a <= t; ++a)
      for (const FpWord& w : fp.words[a]) {
        if (!w.empty() && w.back().factor != 1) continue;
        for (std::size_t m = 0; m < M->dim(t - a); ++m) {
          const int deg = fp.internal_degree(w) + M->internal_degree(t - a, m);
          if (fp.dmax >= 0 && deg > fp.dmax) continue;
          index[{w, t - a, m}] = dims[t]++;
          out.basis[t].push_back({w, t - a, m});
          internal[t].push_back(deg);
        }
      }

  auto X = std::make_shared<GradedModule>(fp.P, dims);
  const PrimeField& F = fp.P->field();
  for (int t = 0; t <= hi; ++t)
    for (std::size_t j = 0; j < dims[t]; ++j) {
      const auto& b = out.basis[t][j];
      Vec e(M->dim(b.mdeg), 0);
      e[b.m] = 1;
      const int wdeg = t - b.mdeg;
      for (int a = 1; a + t <= hi; ++a)
        for (std::size_t i = 0; i < fp.words[a].size(); ++i) {
          Vec img(dims[t + a], 0);
          Vec prod = fp.multiply_words(fp.words[a][i], b.word);
          for (std::size_t k = 0; k < prod.size(); ++k) {
            if (prod[k] == 0) continue;
            const FpWord& v = fp.words[a + wdeg][k];
            if (v.empty() || v.back().factor == 1) {
              auto it = index.find({v, b.mdeg, b.m});
              if (it != index.end()) img[it->second] = F.add(img[it->second], prod[k]);
              continue;
            }
            // trailing A letter acts on m
            const FpLetter l = v.back();
            FpWord head(v.begin(), v.end() - 1);
            Vec am = M->act_basis(l.degree, l.index, b.mdeg, e);
            for (std::size_t q = 0; q < am.size(); ++q) {
              if (am[q] == 0) continue;
              auto it = index.find({head, b.mdeg + l.degree, q});
              if (it != index.end()) img[it->second] = F.add(img[it->second], F.mul(prod[k], am[q]));
            }
          }
          X->set_action(a, i, t, j, img);
        }
    }
  X->set_internal_degrees(internal);
  out.module = X;
  return out;
}

}  // namespace fiberres
