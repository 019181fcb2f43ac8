#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fiberres/algebra.hpp"
#include "fiberres/linalg.hpp"

namespace fiberres {

/// Graded left module over a GradedAlgebra, known in degrees 0..hi.
///
/// Either free on labeled generators (the action comes from the algebra
/// table; degree d is the direct sum over generators g of A_{d - deg g}, in
/// generator order) or explicit, with one action tensor per (algebra degree,
/// module degree) pair.
class GradedModule {
 public:
  /// Explicit module with dims[d] in degree d and zero action.
  GradedModule(AlgebraPtr A, std::vector<std::size_t> dims);
  static GradedModule free(AlgebraPtr A, std::vector<int> gen_degrees, std::vector<std::string> gen_labels,
                           int hi);

  const AlgebraPtr& algebra() const { return A_; }
  const GradedAlgebra& alg() const { return *A_; }
  int hi() const { return static_cast<int>(dims_.size()) - 1; }
  std::size_t dim(int d) const { return d < 0 || d > hi() ? 0 : dims_[d]; }
  std::size_t total_dim() const;

  bool is_free() const { return free_; }
  std::size_t rank() const { return gen_degrees_.size(); }
  const std::vector<int>& generator_degrees() const { return gen_degrees_; }
  const std::vector<std::string>& generator_labels() const { return gen_labels_; }
  /// Start of generator g's block inside degree d (free modules).
  std::size_t offset(int d, std::size_t g) const { return offsets_[d][g]; }
  /// Generator g as an element of degree deg g.
  Vec generator(std::size_t g) const;

  void set_action(int m, std::size_t i, int d, std::size_t j, std::span<const Scalar> v);
  /// Basis element i of A_m acting on v in degree d. Requires d + m <= hi.
  Vec act_basis(int m, std::size_t i, int d, std::span<const Scalar> v) const;
  Vec act(int m, std::span<const Scalar> a, int d, std::span<const Scalar> v) const;

  void set_internal_degrees(std::vector<std::vector<int>> w);
  int internal_degree(int d, std::size_t j) const;
  bool has_internal_degrees() const { return !internal_.empty(); }

  PowerSeries hilbert_series() const;
  /// Unit, associativity and homogeneity checks on every in-window triple.
  std::optional<std::string> check_laws() const;

 private:
  GradedModule() = default;
  std::size_t block_index(int m, int d) const { return static_cast<std::size_t>(m) * dims_.size() + d; }

  AlgebraPtr A_;
  std::vector<std::size_t> dims_;
  bool free_ = false;
  std::vector<int> gen_degrees_;
  std::vector<std::string> gen_labels_;
  std::vector<std::vector<std::size_t>> offsets_;
  std::vector<Vec> action_;  // [m][d] flattened: (i * dim d + j) * dim(d+m) + k
  std::vector<std::vector<int>> internal_;
};

using ModulePtr = std::shared_ptr<const GradedModule>;

/// Degree-0 homomorphism out of a free module, given by generator images.
/// When the target is free as well this is an algebra-entry matrix.
struct ModuleMap {
  ModulePtr source;  // free
  ModulePtr target;
  std::vector<Vec> images;  // images[g] lies in target degree deg g

  /// Matrix of the map in degree d (target dim x source dim).
  Matrix matrix(int d) const;
  Vec apply(int d, std::span<const Scalar> v) const;
  /// Entry (i, j): component of images[j] on target generator i, an element
  /// of A in degree deg j - deg i (target must be free).
  Vec entry(std::size_t i, std::size_t j) const;
  /// True when every entry lies in the maximal ideal.
  bool entries_in_max_ideal() const;
};

/// k concentrated in degree 0, `rank` copies.
ModulePtr residue_module(AlgebraPtr A, int hi, std::size_t rank = 1);
ModulePtr free_module(AlgebraPtr A, std::vector<int> gen_degrees, int hi, const std::string& prefix = "g");

/// Matrix with polynomial entries: rows are target generators, columns source
/// generators. Source degrees are inferred from the entries when not given.
ModuleMap algebra_matrix(AlgebraPtr A, const std::vector<std::vector<std::string>>& entries,
                         std::vector<int> target_degrees, std::optional<std::vector<int>> source_degrees,
                         int hi);

ModulePtr cokernel_module(const ModuleMap& phi);

/// M over one factor viewed over R through σ (or τ); the other factor acts by 0.
ModulePtr restrict_to_fiber(const ModulePtr& M, const FiberProductAlgebra& fp, FiberProductAlgebra::Side side);
/// Inverse of restrict_to_fiber for an R-module killed by the other factor.
ModulePtr descend_to_factor(const ModulePtr& M, const FiberProductAlgebra& fp, FiberProductAlgebra::Side side);

/// Submodule spanned degreewise by `basis` (each list must be closed under the
/// action); basis[d] is also its inclusion into the ambient module.
struct Submodule {
  ModulePtr module;
  std::vector<std::vector<Vec>> inclusion;
};
Submodule submodule(const GradedModule& ambient, std::vector<std::vector<Vec>> basis);

/// Kernel of f, degreewise, through degree dmax.
std::vector<std::vector<Vec>> kernel_bases(const ModuleMap& f, int dmax);

/// Minimal generators of a submodule of X given degreewise by `subspace`:
/// in each degree, the subspace modulo the span of A_+ times the generators
/// chosen so far, completed in echelon order.
std::vector<std::pair<int, Vec>> minimal_generators(const GradedModule& X,
                                                    const std::function<std::vector<Vec>(int)>& subspace,
                                                    int dmax);

/// Free module on the given generators with the map sending them to X.
ModuleMap free_cover(const ModulePtr& X, const std::vector<std::pair<int, Vec>>& gens, int hi,
                     const std::string& prefix);

/// Relation matrix B1 -> B0 of a minimal presentation (entries in the maximal ideal).
ModuleMap minimal_presentation(const ModulePtr& M);

/// M ×_V N over R for V = k^r in degree 0, with μ: M_0 -> V and ν: N_0 -> V.
struct FiberModule {
  ModulePtr L, M, N, V;   // all over R
  Matrix mu, nu;          // r x dim M_0, r x dim N_0
  std::vector<Vec> L0;    // degree-0 basis of L inside M_0 ⊕ N_0
};
FiberModule fiber_product_module(const FiberProductAlgebra& fp, const ModulePtr& M, const ModulePtr& N,
                                 const Matrix& mu, const Matrix& nu);

}  // namespace fiberres
