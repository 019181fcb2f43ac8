#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fiberres/check.hpp"
#include "fiberres/freeproduct.hpp"
#include "fiberres/resolve.hpp"
#include "fiberres/wordres.hpp"

namespace fiberres {

/// Chain map Z from src (starting at src.free[shift]) into tgt, lowering
/// internal degree by `internal`: Z_n sends generator g of src.free[shift+n]
/// into tgt.free[n] in degree deg g - internal, with
///   ε_tgt ∘ Z_0 = init   and   ∂ ∘ Z_n = Z_{n-1} ∘ ∂.
/// Each Z_n(g) is the solution of one linear system with free variables set
/// to zero, so lifts are deterministic.
class ChainLift {
 public:
  /// init[g] is an element of tgt.module in degree deg g - internal.
  ChainLift(const FreeResolution& src, int shift, const FreeResolution& tgt, int internal, std::vector<Vec> init,
            int nmax);

  int nmax() const { return static_cast<int>(images_.size()) - 1; }
  const Vec& image(int n, std::size_t g) const { return images_.at(n).at(g); }
  /// Z_n applied to an element of src.free[shift+n] in degree d.
  Vec apply(int n, int d, std::span<const Scalar> v) const;
  /// Coefficient of the unit on target generator h in Z_n(g); zero unless
  /// deg h = deg g - internal.
  Scalar constant_coefficient(int n, std::size_t g, std::size_t h) const;

 private:
  Vec solve(int n, int e, std::span<const Scalar> rhs);

  const FreeResolution& src_;
  const FreeResolution& tgt_;
  int shift_, internal_;
  std::vector<std::vector<Vec>> images_;
  std::map<std::pair<int, int>, LinearSolver> solvers_;
};

/// Ext_A(k, k) with basis dual to the generators of a minimal resolution of k.
///
/// `algebra` is graded by cohomological degree (cap = imax) and carries the
/// internal degrees. Only internal degrees <= dmax are computed, so the table
/// is Ext modulo the ideal of classes above dmax.
struct ExtAlgebra {
  FreeResolution res;
  AlgebraPtr algebra;
  int imax = 0;
  int dmax = 0;

  const AlgebraPtr& base() const { return res.A; }
  std::size_t dim(int i) const { return algebra->dim(i); }
  BigradedSeries bigraded() const { return betti(res).bigraded(); }
};

/// Yoneda products: ξ·ζ lifts ζ to a chain map and reads the coefficient of
/// ξ's generator off the lift (no signs).
ExtAlgebra ext_algebra_from(FreeResolution res, std::vector<std::vector<std::string>> labels);
ExtAlgebra ext_algebra(const AlgebraPtr& A, int imax, int dmax, const std::string& prefix = "x");

/// Labels "x1", "x2_0", ... in the style of word labels.
std::vector<std::vector<std::string>> dual_labels(const FreeResolution& res, const std::string& prefix);

/// Ext_A(M, k) as a left module over an ExtAlgebra.
struct ExtModule {
  FreeResolution res;  // minimal resolution of M
  ModulePtr module;    // over the ExtAlgebra table, degrees 0..imax
};

ExtModule ext_module_from(const ExtAlgebra& E, FreeResolution res);
ExtModule ext_module(const ExtAlgebra& E, const ModulePtr& M);

/// Ext_R(V, k) -> Ext_R(M, k) induced by f: M -> V, as one matrix per
/// bidegree (rows: generators of resM in degree j, columns: generators of
/// resV in degree j). f is given on degree-0 elements (images in V_0).
std::vector<std::vector<Matrix>> induced_ext_map(const FreeResolution& resM, const FreeResolution& resV,
                                                 const Matrix& f0, int imax);

struct KoszulReport {
  bool koszul = true;
  std::vector<std::pair<int, int>> offending;  // (i, j) with j != i and b_ij != 0
  int imax = 0, dmax = 0;
};

KoszulReport koszul_check(const AlgebraPtr& A, int imax, int dmax);

struct KoszulTransfer {
  KoszulReport S, T, R;
  bool equivalence = false;  // (S and T Koszul) == (R Koszul)
  bool propagated = false;   // every certificate of S or T appears for R
};

KoszulTransfer koszul_transfer(const FiberProductAlgebra& fp, int imax, int dmax);

// ---------------------------------------------------------------------------
// Comparison with the free product over a fiber product R = S ×_k T.

/// Everything the φ and θ checks share: the word resolution D of k over R
/// (module side S, so its P letters are copies of E), the Ext algebras of
/// S, T and R computed on E, F and D, and σ*, τ* read off explicit chain maps
/// D -> E and D -> F.
struct FiberExt {
  FiberProductAlgebra fp;
  int imax = 0, dmax = 0;
  WordComplex D;
  ExtAlgebra S, T, R;
  /// sigma[i][e] = σ*(e^∨) in ℛ^i, tau[i][f] = τ*(f^∨)
  std::vector<std::vector<Vec>> sigma, tau;
  std::vector<Check> checks;  // chain-map checks for D -> E, D -> F
};

FiberExt fiber_ext(const FiberProductAlgebra& fp, int imax, int dmax);

struct PhiReport {
  int imax = 0, dmax = 0;
  std::vector<std::size_t> dim_R, dim_free, dim_tensor;
  std::size_t table_cases = 0;
  int tensor_mismatch = -1;  // first n with dim(𝒮⊗𝒯)^n != dim ℛ^n
  std::vector<Check> checks;
  bool pass = false;
};

PhiReport verify_phi_iso(const FiberExt& fx);
PhiReport verify_phi_iso(const FiberProductAlgebra& fp, int imax, int dmax);

struct ThetaReport {
  int imax = 0, dmax = 0;
  std::vector<std::size_t> dim_MR, dim_tensor, dim_direct;
  PowerSeries series;  // coproduct_module_series(P^S_k, P^T_k, P^S_M)
  std::vector<Check> checks;
  bool pass = false;
};

/// M is an S-module.
ThetaReport verify_theta_iso(const FiberExt& fx, const ModulePtr& M);
ThetaReport verify_theta_iso(const FiberProductAlgebra& fp, const ModulePtr& M, int imax, int dmax);

}  // namespace fiberres
