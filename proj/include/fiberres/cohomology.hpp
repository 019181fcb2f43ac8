#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fiberres/check.hpp"
#include "fiberres/extalg.hpp"

namespace fiberres {

/// Ω²L = Ker(F_1 -> F_0) of a minimal resolution, split as
/// (Ker ∩ 𝔭F_1) ⊕ (Ker ∩ 𝔮F_1) with 𝔭 = S_+ and 𝔮 = T_+ inside R.
struct SyzygySplit {
  FreeResolution res;  // two steps of the minimal resolution of L
  std::vector<std::vector<Vec>> kernel, M_basis, N_basis;  // in F_1, per degree
  ModulePtr M, N;  // over S and over T
  std::vector<Check> checks;
  bool pass = false;
};

SyzygySplit syzygy_split(const FiberProductAlgebra& fp, const ModulePtr& L, int dmax);

struct ExtSequenceReport {
  int imax = 0, dmax = 0;
  std::vector<std::size_t> dim_L, from_M, from_N;  // from_* are shifted by 2
  std::vector<Check> checks;
  bool pass = false;
};

/// b_{n,j}(L) = [ℛ⊗_𝒮ℳ_S]^{n-2}_j + [ℛ⊗_𝒯𝒩_T]^{n-2}_j for n >= 2, with
/// b_0, b_1 read from a minimal presentation.
ExtSequenceReport verify_ext_sequence_L(const FiberProductAlgebra& fp, const ModulePtr& L, int imax, int dmax);

struct FiberModuleReport {
  int imax = 0, dmax = 0;
  long long rank_V = 0;
  PowerSeries pL, pM, pN, pk;
  std::vector<Check> checks;
  bool pass = false;
};

/// P_L + r·P_k = P_M + P_N over R (also per internal degree), and
/// [μ*; −ν*]: Ext_R(V,k) -> Ext_R(M,k) × Ext_R(N,k) injective per bidegree.
FiberModuleReport verify_fiber_module_ext_sequence(const FiberProductAlgebra& fp, const FiberModule& fm, int imax,
                                                   int dmax);

/// Hom_E(k, N) and Ext^1_E(k, N) of a graded E-module N, by degree.
/// A map f: F_i -> N has degree j when f(F_i^n) ⊆ N^{n-j}.
struct DepthDegree {
  int degree;
  std::size_t hom = 0, ext1 = 0;
  bool hom_known = false, ext1_known = false;  // every condition lies inside the window
};

struct DepthProbe {
  FreeResolution K;  // resolution of k over E, at least two steps
  std::vector<DepthDegree> degrees;
  const DepthDegree* at(int degree) const;
};

DepthProbe depth_probe(FreeResolution K, const ModulePtr& N);

/// One cocycle φ_{α_j, β_j}: F_1 -> ℳ_R, (v, w) ↦ (∂v·α_j, ∂w·β_j).
struct DepthWitness {
  std::string case_name;  // "M not free", "gldim T >= 2", "gldim S >= 2", "gldim 1, M free"
  int j = 0;
  int degree = 0;         // internal degree of the class
  Status status = Status::UnknownWindow;
  bool cocycle = false, nonzero = false;
  std::string detail;
};

struct DepthCertificate {
  int imax = 0, dmax = 0, jmax = 0;
  std::string varsigma, vartheta, varsigma2, vartheta2, mu, mu2;  // chosen classes, empty if absent
  bool M_free = false, gldim_S_ge2 = false, gldim_T_ge2 = false;
  std::optional<bool> gldim_one;  // known only from presentations
  int hom_zero_through = -1;      // Hom_ℛ(k, ℳ_R)^{-t} = 0 for every known shift 0 <= t <= this
  std::vector<DepthWitness> witnesses;
  std::optional<int> ext1_direct;  // first known degree with Ext^1 ≠ 0, from the full cochain computation
  int depth_lower = 0, depth_upper = 0;
  std::vector<Check> checks;
  bool pass = false;
};

struct GldimHint {
  std::optional<bool> S_one, T_one;
};

/// M is an S-module; ℛ is the free product of the Ext algebras of S and T
/// and ℳ_R = ℛ ⊗_𝒮 ℳ_S, both through cohomological degree imax.
DepthCertificate depth_certificate(const FiberProductAlgebra& fp, const ModulePtr& M, int jmax, int imax, int dmax,
                                   GldimHint hint = {});

struct DepthBound {
  int imax = 0, dmax = 0;
  bool finite_pd = false;  // no Betti numbers beyond some n in window
  std::optional<int> hom_degree, ext1_degree;
  int depth_upper = -1;
  std::vector<Check> checks;
  bool pass = false;
};

/// depth_ℛ Ext_R(L, k) <= 1, witnessed in window.
DepthBound depth_upper_bound(const FiberProductAlgebra& fp, const ModulePtr& L, int imax, int dmax);

}  // namespace fiberres
