#pragma once

#include <string>
#include <vector>

#include "fiberres/gmodule.hpp"
#include "fiberres/series.hpp"

namespace fiberres {

/// F_h -> ... -> F_0 -> M with d[0] the augmentation F_0 -> M and d[i] the
/// differential F_i -> F_{i-1}. Exact information is claimed only for
/// internal degrees <= dmax; generators above dmax are never computed.
struct FreeResolution {
  AlgebraPtr A;
  ModulePtr module;
  std::vector<ModulePtr> free;
  std::vector<ModuleMap> d;
  int hmax = 0;
  int dmax = 0;

  int length() const { return static_cast<int>(free.size()) - 1; }
  std::size_t rank(int i) const { return free.at(i)->rank(); }
  const std::vector<int>& generator_degrees(int i) const { return free.at(i)->generator_degrees(); }
};

/// Largest internal degree for which a resolution of M can be exact.
int max_valid_dmax(const GradedModule& M);

FreeResolution minimal_resolution(const ModulePtr& M, int hmax, int dmax);

/// b(i, j) = number of generators of F_i in internal degree j.
struct BettiTable {
  int hmax = 0;
  int dmax = 0;
  std::vector<std::vector<std::size_t>> b;  // [i][j]

  std::size_t at(int i, int j) const;
  std::size_t row_total(int i) const;
  PowerSeries poincare() const;
  BigradedSeries bigraded() const;
  /// Macaulay-style layout: columns are homological degrees, rows j - i.
  std::string to_text() const;
  bool empty() const;
};

BettiTable betti(const FreeResolution& res);

struct StepCheck {
  int i = 0;
  bool square_zero = true;
  bool minimal = true;
  bool exact = true;
  bool exact_checked = false;
  std::string note;  // first failing bidegree, if any
};

struct ComplexReport {
  std::vector<StepCheck> steps;
  bool pass = true;
  std::string first_failure;
};

/// ∂² = 0 on generators, entries of every differential in the maximal ideal,
/// and exactness at F_0..F_{h-1} by ranks in each internal degree <= dmax
/// (surjectivity onto M at F_0).
ComplexReport verify_complex(const FreeResolution& res);

/// Ω^n M = kernel of d[n-1] inside F_{n-1}.
Submodule syzygy(const FreeResolution& res, int n);

}  // namespace fiberres
