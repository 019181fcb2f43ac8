#pragma once

#include <map>
#include <vector>

#include "fiberres/gmodule.hpp"

namespace fiberres {

/// Letter of a free-product word: a positive-degree basis element of one factor.
struct FpLetter {
  int factor;  // 0 = A, 1 = B
  int degree;
  std::size_t index;

  friend auto operator<=>(const FpLetter&, const FpLetter&) = default;
};

using FpWord = std::vector<FpLetter>;

/// A ⊔ B through degree `cap`, with basis the alternating words.
///
/// When `dmax` >= 0 only words of internal degree <= dmax are kept; since
/// internal degrees add, that is the quotient by the ideal above dmax.
struct FreeProduct {
  AlgebraPtr A, B, P;
  int dmax = -1;
  std::vector<std::vector<FpWord>> words;  // words[n] is the basis of P_n
  std::map<FpWord, std::size_t> index;

  const GradedAlgebra& factor(int f) const { return f == 0 ? *A : *B; }
  int internal_degree(const FpWord& w) const;
  /// Product of two basis words as a vector in P_{m+n}.
  Vec multiply_words(const FpWord& u, const FpWord& v) const;
};

FreeProduct free_product(AlgebraPtr A, AlgebraPtr B, int cap, int dmax = -1);

/// (A ⊔ B) ⊗_A M with basis w ⊗ m, w empty or ending in a B letter.
struct FreeProductModule {
  struct BasisElement {
    FpWord word;
    int mdeg;
    std::size_t m;
  };
  ModulePtr M;
  ModulePtr module;  // over the free product algebra
  std::vector<std::vector<BasisElement>> basis;
};

FreeProductModule free_product_module(const FreeProduct& fp, const ModulePtr& M);

}  // namespace fiberres
