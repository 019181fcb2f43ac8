#pragma once

// Brute-force references used only by the tests. They read algebra and module
// tables but share no code with the resolution engine.

#include <cstdint>
#include <functional>
#include <tuple>
#include <map>
#include <vector>

#include "fiberres/algebra.hpp"
#include "fiberres/gmodule.hpp"

namespace oracle {

using fiberres::GradedAlgebra;
using fiberres::GradedModule;

// Plain Gaussian elimination mod p on a dense copy.
inline std::size_t rank_mod(std::vector<std::vector<std::int64_t>> m, std::int64_t p) {
  std::size_t r = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && m[piv][c] % p == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[r]);
    std::int64_t inv = 1, b = ((m[r][c] % p) + p) % p, e = p - 2;
    while (e) {
      if (e & 1) inv = inv * b % p;
      b = b * b % p;
      e >>= 1;
    }
    for (auto& x : m[r]) x = ((x % p) + p) % p * inv % p;
    for (std::size_t o = 0; o < m.size(); ++o) {
      if (o == r) continue;
      std::int64_t f = ((m[o][c] % p) + p) % p;
      if (f == 0) continue;
      for (std::size_t k = 0; k < cols; ++k) m[o][k] = ((m[o][k] - f * m[r][k]) % p + p) % p;
    }
    ++r;
  }
  return r;
}

struct BarCell {
  std::vector<std::pair<int, std::size_t>> letters;  // (degree, basis index) in A_+
  int mdeg;
  std::size_t midx;
  bool operator<(const BarCell& o) const {
    return std::tie(letters, mdeg, midx) < std::tie(o.letters, o.mdeg, o.midx);
  }
};

// Basis of A_+^{⊗n} ⊗ M in internal degree j.
inline std::vector<BarCell> bar_basis(const GradedAlgebra& A, const GradedModule& M, int n, int j) {
  std::vector<BarCell> out;
  BarCell cur;
  std::function<void(int, int)> rec = [&](int left, int budget) {
    if (left == 0) {
      for (std::size_t k = 0; k < M.dim(budget); ++k) {
        cur.mdeg = budget;
        cur.midx = k;
        out.push_back(cur);
      }
      return;
    }
    for (int d = 1; d <= budget; ++d)
      for (std::size_t i = 0; i < A.dim(d); ++i) {
        cur.letters.push_back({d, i});
        rec(left - 1, budget - d);
        cur.letters.pop_back();
      }
  };
  rec(n, j);
  return out;
}

// Matrix of the bar differential B_n -> B_{n-1} in internal degree j.
inline std::vector<std::vector<std::int64_t>> bar_matrix(const GradedAlgebra& A, const GradedModule& M, int n,
                                                         int j) {
  auto src = bar_basis(A, M, n, j);
  auto dst = bar_basis(A, M, n - 1, j);
  std::map<BarCell, std::size_t> index;
  for (std::size_t k = 0; k < dst.size(); ++k) index[dst[k]] = k;
  const std::int64_t p = A.field().characteristic();
  std::vector<std::vector<std::int64_t>> m(dst.size(), std::vector<std::int64_t>(src.size(), 0));
  for (std::size_t c = 0; c < src.size(); ++c) {
    const BarCell& s = src[c];
    for (int i = 0; i + 1 < n; ++i) {
      auto [d1, i1] = s.letters[i];
      auto [d2, i2] = s.letters[i + 1];
      auto prod = A.product(d1, i1, d2, i2);
      for (std::size_t k = 0; k < prod.size(); ++k) {
        if (prod[k] == 0) continue;
        BarCell t = s;
        t.letters.erase(t.letters.begin() + i + 1);
        t.letters[i] = {d1 + d2, k};
        std::int64_t sign = (i + 1) % 2 ? -1 : 1;
        auto& x = m[index.at(t)][c];
        x = ((x + sign * prod[k]) % p + p) % p;
      }
    }
    auto [dl, il] = s.letters.back();
    fiberres::Vec e(M.dim(s.mdeg), 0);
    e[s.midx] = 1;
    auto img = M.act_basis(dl, il, s.mdeg, e);
    for (std::size_t k = 0; k < img.size(); ++k) {
      if (img[k] == 0) continue;
      BarCell t = s;
      t.letters.pop_back();
      t.mdeg = s.mdeg + dl;
      t.midx = k;
      std::int64_t sign = n % 2 ? -1 : 1;
      auto& x = m[index.at(t)][c];
      x = ((x + sign * img[k]) % p + p) % p;
    }
  }
  return m;
}

// dim Tor^A_n(k, M)_j for n <= hmax, j <= dmax, from the normalized bar complex.
inline std::vector<std::vector<std::size_t>> bar_betti(const GradedAlgebra& A, const GradedModule& M, int hmax,
                                                       int dmax) {
  const std::int64_t p = A.field().characteristic();
  std::vector<std::vector<std::size_t>> b(hmax + 1, std::vector<std::size_t>(dmax + 1, 0));
  for (int j = 0; j <= dmax; ++j) {
    std::vector<std::size_t> dims, ranks(hmax + 2, 0);
    for (int n = 0; n <= hmax + 1; ++n) dims.push_back(bar_basis(A, M, n, j).size());
    for (int n = 1; n <= hmax + 1; ++n)
      if (dims[n] && dims[n - 1]) ranks[n] = rank_mod(bar_matrix(A, M, n, j), p);
    for (int n = 0; n <= hmax; ++n) b[n][j] = dims[n] - ranks[n] - ranks[n + 1];
  }
  return b;
}

inline std::vector<std::size_t> row_totals(const std::vector<std::vector<std::size_t>>& b) {
  std::vector<std::size_t> out;
  for (const auto& row : b) {
    std::size_t s = 0;
    for (auto x : row) s += x;
    out.push_back(s);
  }
  return out;
}

}  // namespace oracle
