#include "fiberres/gmodule.hpp"

#include <algorithm>
#include <numeric>

namespace fiberres {

GradedModule::GradedModule(AlgebraPtr A, std::vector<std::size_t> dims) : A_(std::move(A)), dims_(std::move(dims)) {
  if (dims_.empty()) dims_.push_back(0);
  const std::size_t n = dims_.size();
  action_.resize(n * n);
  for (int m = 1; m <= std::min(hi(), A_->cap()); ++m)
    for (int d = 0; d + m <= hi(); ++d) action_[block_index(m, d)].assign(A_->dim(m) * dims_[d] * dims_[d + m], 0);
}

GradedModule GradedModule::free(AlgebraPtr A, std::vector<int> gen_degrees, std::vector<std::string> gen_labels,
                                int hi) {
  if (hi < 0) throw Error("module window must be non-negative");
  if (gen_labels.size() != gen_degrees.size()) throw Error("generator labels and degrees differ in length");
  for (int g : gen_degrees)
    if (g < 0) throw Error("generator degrees must be non-negative");
  GradedModule M;
  M.A_ = std::move(A);
  M.free_ = true;
  M.gen_degrees_ = std::move(gen_degrees);
  M.gen_labels_ = std::move(gen_labels);
  M.dims_.assign(hi + 1, 0);
  M.offsets_.assign(hi + 1, std::vector<std::size_t>(M.gen_degrees_.size(), 0));
  for (int d = 0; d <= hi; ++d) {
    std::size_t acc = 0;
    for (std::size_t g = 0; g < M.gen_degrees_.size(); ++g) {
      M.offsets_[d][g] = acc;
      acc += M.A_->dim(d - M.gen_degrees_[g]);
    }
    M.dims_[d] = acc;
  }
  return M;
}

std::size_t GradedModule::total_dim() const { return std::accumulate(dims_.begin(), dims_.end(), std::size_t{0}); }

Vec GradedModule::generator(std::size_t g) const {
  const int d = gen_degrees_.at(g);
  Vec v(dim(d), 0);
  v.at(offset(d, g)) = 1;
  return v;
}

void GradedModule::set_action(int m, std::size_t i, int d, std::size_t j, std::span<const Scalar> v) {
  if (free_) throw Error("cannot overwrite the action on a free module");
  if (m < 1 || d + m > hi()) throw Error("action entry outside the module window");
  if (v.size() != dim(d + m)) throw Error("action vector has the wrong dimension");
  Vec& block = action_[block_index(m, d)];
  std::copy(v.begin(), v.end(), block.begin() + (i * dims_[d] + j) * dims_[d + m]);
}

Vec GradedModule::act_basis(int m, std::size_t i, int d, std::span<const Scalar> v) const {
  if (m == 0) return Vec(v.begin(), v.end());
  if (d + m > hi() || m > A_->cap()) throw Error("product leaves the module window");
  const PrimeField& F = A_->field();
  Vec out(dim(d + m), 0);
  if (free_) {
    for (std::size_t g = 0; g < gen_degrees_.size(); ++g) {
      const int e = d - gen_degrees_[g];
      if (e < 0 || A_->dim(e) == 0 || A_->dim(e + m) == 0) continue;
      auto block = v.subspan(offset(d, g), A_->dim(e));
      if (is_zero(block)) continue;
      Vec prod = A_->left_multiply(m, i, e, block);
      std::copy(prod.begin(), prod.end(), out.begin() + offset(d + m, g));
    }
    return out;
  }
  const Vec& block = action_[block_index(m, d)];
  const std::size_t out_dim = dims_[d + m];
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (v[j] == 0) continue;
    axpy(F, out, std::span<const Scalar>(block.data() + (i * dims_[d] + j) * out_dim, out_dim), v[j]);
  }
  return out;
}

Vec GradedModule::act(int m, std::span<const Scalar> a, int d, std::span<const Scalar> v) const {
  const PrimeField& F = A_->field();
  Vec out(dim(d + m), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0) axpy(F, out, act_basis(m, i, d, v), a[i]);
  return out;
}

void GradedModule::set_internal_degrees(std::vector<std::vector<int>> w) {
  w.resize(dims_.size());
  for (int d = 0; d <= hi(); ++d)
    if (w[d].size() != dims_[d]) throw Error("internal degree table does not match the module basis");
  internal_ = std::move(w);
}

int GradedModule::internal_degree(int d, std::size_t j) const {
  if (!internal_.empty()) return internal_.at(d).at(j);
  if (free_) {
    for (std::size_t g = gen_degrees_.size(); g-- > 0;) {
      const int e = d - gen_degrees_[g];
      if (e < 0 || A_->dim(e) == 0 || j < offset(d, g)) continue;
      return A_->internal_degree(e, j - offset(d, g)) + (d - e);
    }
  }
  return d;
}

PowerSeries GradedModule::hilbert_series() const {
  std::vector<BigInt> c;
  for (auto n : dims_) c.emplace_back(n);
  return PowerSeries(std::move(c), dims_.size() - 1);
}

std::optional<std::string> GradedModule::check_laws() const {
  const GradedAlgebra& A = *A_;
  for (int d = 0; d <= hi(); ++d)
    for (std::size_t j = 0; j < dim(d); ++j) {
      Vec e(dim(d), 0);
      e[j] = 1;
      for (int a = 1; a <= A.cap() && d + a <= hi(); ++a)
        for (int b = 1; a + b <= A.cap() && d + a + b <= hi(); ++b)
          for (std::size_t i = 0; i < A.dim(a); ++i)
            for (std::size_t k = 0; k < A.dim(b); ++k) {
              Vec lhs = act(a + b, A.product(a, i, b, k), d, e);
              Vec rhs = act_basis(a, i, d + b, act_basis(b, k, d, e));
              if (lhs != rhs)
                return "module associativity fails at degree " + std::to_string(d) + " on (" + A.label(a, i) +
                       ", " + A.label(b, k) + ")";
            }
      if (!internal_.empty())
        for (int a = 1; a <= A.cap() && d + a <= hi(); ++a)
          for (std::size_t i = 0; i < A.dim(a); ++i) {
            Vec p = act_basis(a, i, d, e);
            for (std::size_t k = 0; k < p.size(); ++k)
              if (p[k] != 0 && internal_degree(d + a, k) != internal_degree(d, j) + A.internal_degree(a, i))
                return "module action is not bihomogeneous at degree " + std::to_string(d);
          }
    }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

Matrix ModuleMap::matrix(int d) const {
  const GradedModule& S = *source;
  const GradedModule& T = *target;
  const GradedAlgebra& A = S.alg();
  Matrix m(T.dim(d), S.dim(d));
  for (std::size_t g = 0; g < S.rank(); ++g) {
    const int e = d - S.generator_degrees()[g];
    if (e < 0) continue;
    for (std::size_t k = 0; k < A.dim(e); ++k)
      m.set_column(S.offset(d, g) + k, T.act_basis(e, k, S.generator_degrees()[g], images[g]));
  }
  return m;
}

Vec ModuleMap::apply(int d, std::span<const Scalar> v) const {
  const GradedModule& S = *source;
  const GradedModule& T = *target;
  const PrimeField& F = S.alg().field();
  Vec out(T.dim(d), 0);
  for (std::size_t g = 0; g < S.rank(); ++g) {
    const int gd = S.generator_degrees()[g];
    const int e = d - gd;
    if (e < 0 || S.alg().dim(e) == 0) continue;
    auto block = v.subspan(S.offset(d, g), S.alg().dim(e));
    if (is_zero(block)) continue;
    axpy(F, out, T.act(e, block, gd, images[g]), 1);
  }
  return out;
}

Vec ModuleMap::entry(std::size_t i, std::size_t j) const {
  const GradedModule& T = *target;
  if (!T.is_free()) throw Error("matrix entries need a free target");
  const int dj = source->generator_degrees().at(j);
  const int e = dj - T.generator_degrees().at(i);
  const std::size_t n = T.alg().dim(e);
  if (n == 0) return {};
  auto begin = images[j].begin() + T.offset(dj, i);
  return Vec(begin, begin + n);
}

bool ModuleMap::entries_in_max_ideal() const {
  for (std::size_t j = 0; j < images.size(); ++j)
    for (std::size_t i = 0; i < target->rank(); ++i)
      if (target->generator_degrees()[i] == source->generator_degrees()[j] && !is_zero(entry(i, j))) return false;
  return true;
}

// ---------------------------------------------------------------------------

ModulePtr residue_module(AlgebraPtr A, int hi, std::size_t rank) {
  std::vector<std::size_t> dims(hi + 1, 0);
  dims[0] = rank;
  return std::make_shared<GradedModule>(std::move(A), std::move(dims));
}

ModulePtr free_module(AlgebraPtr A, std::vector<int> gen_degrees, int hi, const std::string& prefix) {
  std::vector<std::string> labels;
  for (std::size_t g = 0; g < gen_degrees.size(); ++g) labels.push_back(prefix + std::to_string(g));
  return std::make_shared<GradedModule>(GradedModule::free(std::move(A), std::move(gen_degrees), labels, hi));
}

ModuleMap algebra_matrix(AlgebraPtr A, const std::vector<std::vector<std::string>>& entries,
                         std::vector<int> target_degrees, std::optional<std::vector<int>> source_degrees,
                         int hi) {
  const std::size_t rows = target_degrees.size();
  for (const auto& row : entries)
    if (row.size() != (entries.empty() ? 0 : entries[0].size())) throw Error("ragged presentation matrix");
  if (entries.size() != rows) throw Error("presentation matrix row count does not match the target degrees");
  const std::size_t cols = entries.empty() ? (source_degrees ? source_degrees->size() : 0) : entries[0].size();

  std::vector<std::vector<ParsedElement>> parsed(rows);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) parsed[i].push_back(parse_element(*A, entries[i][j]));

  std::vector<int> sdeg(cols, -1);
  if (source_degrees) {
    if (source_degrees->size() != cols) throw Error("source degree count does not match the matrix");
    sdeg = *source_degrees;
  }
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i) {
      const auto& p = parsed[i][j];
      if (!p.degree || is_zero(p.coeffs)) continue;
      const int d = *p.degree + target_degrees[i];
      if (sdeg[j] < 0 && !source_degrees)
        sdeg[j] = d;
      else if (sdeg[j] != d)
        throw Error("presentation matrix column " + std::to_string(j) + " is not homogeneous");
    }
  for (std::size_t j = 0; j < cols; ++j)
    if (sdeg[j] < 0) throw Error("cannot infer the degree of zero column " + std::to_string(j));

  auto target = free_module(A, target_degrees, hi, "e");
  auto source = free_module(A, sdeg, hi, "r");
  ModuleMap phi{source, target, {}};
  for (std::size_t j = 0; j < cols; ++j) {
    if (sdeg[j] > hi) throw Error("presentation generator lies above the window");
    Vec img(target->dim(sdeg[j]), 0);
    for (std::size_t i = 0; i < rows; ++i) {
      const auto& p = parsed[i][j];
      if (!p.degree || is_zero(p.coeffs)) continue;
      std::copy(p.coeffs.begin(), p.coeffs.end(), img.begin() + target->offset(sdeg[j], i));
    }
    phi.images.push_back(std::move(img));
  }
  return phi;
}

ModulePtr cokernel_module(const ModuleMap& phi) {
  const GradedModule& T = *phi.target;
  const PrimeField& F = T.alg().field();
  const int hi = T.hi();
  std::vector<EchelonBasis> image;
  std::vector<std::vector<std::size_t>> free_cols(hi + 1);
  std::vector<std::size_t> dims(hi + 1);
  for (int d = 0; d <= hi; ++d) {
    image.emplace_back(F, T.dim(d));
    Matrix m = phi.matrix(d);
    for (std::size_t c = 0; c < m.cols(); ++c) {
      Vec col(m.rows());
      for (std::size_t r = 0; r < m.rows(); ++r) col[r] = m(r, c);
      image.back().insert(col);
    }
    std::vector<char> pivot(T.dim(d), 0);
    for (auto p : image.back().pivots()) pivot[p] = 1;
    for (std::size_t c = 0; c < T.dim(d); ++c)
      if (!pivot[c]) free_cols[d].push_back(c);
    dims[d] = free_cols[d].size();
  }
  auto Q = std::make_shared<GradedModule>(T.algebra(), dims);
  const GradedAlgebra& A = T.alg();
  for (int m = 1; m <= std::min(hi, A.cap()); ++m)
    for (int d = 0; d + m <= hi; ++d)
      for (std::size_t i = 0; i < A.dim(m); ++i)
        for (std::size_t j = 0; j < dims[d]; ++j) {
          Vec lift(T.dim(d), 0);
          lift[free_cols[d][j]] = 1;
          Vec r = image[d + m].reduce(T.act_basis(m, i, d, lift));
          Vec q(dims[d + m]);
          for (std::size_t k = 0; k < q.size(); ++k) q[k] = r[free_cols[d + m][k]];
          Q->set_action(m, i, d, j, q);
        }
  return Q;
}

ModulePtr restrict_to_fiber(const ModulePtr& M, const FiberProductAlgebra& fp, FiberProductAlgebra::Side side) {
  const GradedAlgebra& base = fp.factor(side);
  if (&M->alg() != &base) throw Error("module is not over the chosen factor of the fiber product");
  const int hi = std::min(M->hi(), fp.R->cap());
  std::vector<std::size_t> dims;
  for (int d = 0; d <= hi; ++d) dims.push_back(M->dim(d));
  auto out = std::make_shared<GradedModule>(fp.R, dims);
  for (int m = 1; m <= hi; ++m)
    for (int d = 0; d + m <= hi; ++d)
      for (std::size_t i = 0; i < fp.R->dim(m); ++i) {
        if (fp.side_of(m, i) != side) continue;
        const std::size_t idx = i - fp.offset(side, m);
        for (std::size_t j = 0; j < dims[d]; ++j) {
          Vec e(dims[d], 0);
          e[j] = 1;
          out->set_action(m, i, d, j, M->act_basis(m, idx, d, e));
        }
      }
  if (M->has_internal_degrees()) {
    std::vector<std::vector<int>> w(hi + 1);
    for (int d = 0; d <= hi; ++d)
      for (std::size_t j = 0; j < dims[d]; ++j) w[d].push_back(M->internal_degree(d, j));
    out->set_internal_degrees(std::move(w));
  }
  return out;
}

ModulePtr descend_to_factor(const ModulePtr& M, const FiberProductAlgebra& fp, FiberProductAlgebra::Side side) {
  if (&M->alg() != fp.R.get()) throw Error("module is not over the fiber product");
  const GradedAlgebra& base = fp.factor(side);
  const auto other = side == FiberProductAlgebra::Side::S ? FiberProductAlgebra::Side::T : FiberProductAlgebra::Side::S;
  const int hi = M->hi();
  std::vector<std::size_t> dims;
  for (int d = 0; d <= hi; ++d) dims.push_back(M->dim(d));
  AlgebraPtr A = side == FiberProductAlgebra::Side::S ? fp.S : fp.T;
  auto out = std::make_shared<GradedModule>(A, dims);
  for (int m = 1; m <= std::min(hi, base.cap()); ++m)
    for (int d = 0; d + m <= hi; ++d)
      for (std::size_t j = 0; j < dims[d]; ++j) {
        Vec e(dims[d], 0);
        e[j] = 1;
        for (std::size_t i = 0; i < fp.R->dim(m); ++i) {
          Vec v = M->act_basis(m, i, d, e);
          if (fp.side_of(m, i) == other) {
            if (!is_zero(v)) throw Error("module is not annihilated by the other factor");
          } else {
            out->set_action(m, i - fp.offset(side, m), d, j, v);
          }
        }
      }
  return out;
}

Submodule submodule(const GradedModule& ambient, std::vector<std::vector<Vec>> basis) {
  const int hi = ambient.hi();
  basis.resize(hi + 1);
  const PrimeField& F = ambient.alg().field();
  std::vector<std::size_t> dims;
  std::vector<LinearSolver> solvers;
  for (int d = 0; d <= hi; ++d) {
    dims.push_back(basis[d].size());
    Matrix m(ambient.dim(d), basis[d].size());
    for (std::size_t c = 0; c < basis[d].size(); ++c) m.set_column(c, basis[d][c]);
    solvers.emplace_back(F, m);
    if (solvers.back().rank() != basis[d].size())
      throw Error("submodule basis in degree " + std::to_string(d) + " is not independent");
  }
  auto out = std::make_shared<GradedModule>(ambient.algebra(), dims);
  const GradedAlgebra& A = ambient.alg();
  for (int m = 1; m <= std::min(hi, A.cap()); ++m)
    for (int d = 0; d + m <= hi; ++d)
      for (std::size_t i = 0; i < A.dim(m); ++i)
        for (std::size_t j = 0; j < dims[d]; ++j) {
          auto x = solvers[d + m].solve(ambient.act_basis(m, i, d, basis[d][j]));
          if (!x) throw Error("subspace is not closed under the action in degree " + std::to_string(d + m));
          out->set_action(m, i, d, j, *x);
        }
  return {out, std::move(basis)};
}

std::vector<std::vector<Vec>> kernel_bases(const ModuleMap& f, int dmax) {
  std::vector<std::vector<Vec>> out;
  for (int d = 0; d <= dmax; ++d) out.push_back(nullspace(f.source->alg().field(), f.matrix(d)).basis);
  return out;
}

std::vector<std::pair<int, Vec>> minimal_generators(const GradedModule& X,
                                                    const std::function<std::vector<Vec>(int)>& subspace,
                                                    int dmax) {
  const GradedAlgebra& A = X.alg();
  std::vector<std::pair<int, Vec>> gens;
  for (int d = 0; d <= dmax; ++d) {
    EchelonBasis span(A.field(), X.dim(d));
    for (const auto& [e, z] : gens) {
      const int m = d - e;
      if (m < 1 || m > A.cap()) continue;
      for (std::size_t i = 0; i < A.dim(m); ++i) span.insert(X.act_basis(m, i, e, z));
    }
    for (const Vec& v : subspace(d))
      if (span.insert(v)) gens.emplace_back(d, v);
  }
  return gens;
}

ModuleMap free_cover(const ModulePtr& X, const std::vector<std::pair<int, Vec>>& gens, int hi,
                     const std::string& prefix) {
  std::vector<int> degs;
  ModuleMap f{nullptr, X, {}};
  for (const auto& [d, v] : gens) {
    degs.push_back(d);
    f.images.push_back(v);
  }
  f.source = free_module(X->algebra(), degs, hi, prefix);
  return f;
}

namespace {

std::vector<Vec> all_of_degree(const GradedModule& M, int d) {
  std::vector<Vec> out;
  for (std::size_t j = 0; j < M.dim(d); ++j) {
    Vec e(M.dim(d), 0);
    e[j] = 1;
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

ModuleMap minimal_presentation(const ModulePtr& M) {
  const int hi = std::min(M->hi(), M->alg().cap());
  auto gens0 = minimal_generators(*M, [&](int d) { return all_of_degree(*M, d); }, hi);
  ModuleMap cover = free_cover(M, gens0, hi, "e");
  auto ker = kernel_bases(cover, hi);
  auto gens1 = minimal_generators(*cover.source, [&](int d) { return ker[d]; }, hi);
  return free_cover(cover.source, gens1, hi, "r");
}

FiberModule fiber_product_module(const FiberProductAlgebra& fp, const ModulePtr& M, const ModulePtr& N,
                                 const Matrix& mu, const Matrix& nu) {
  using Side = FiberProductAlgebra::Side;
  const PrimeField& F = fp.R->field();
  const std::size_t r = mu.rows();
  if (nu.rows() != r) throw Error("μ and ν must land in the same V");
  if (mu.cols() != M->dim(0) || nu.cols() != N->dim(0)) throw Error("μ or ν does not match the degree-0 part");
  if (rank(F, mu) != r) throw Error("μ is not surjective");
  if (rank(F, nu) != r) throw Error("ν is not surjective");
  // ker μ = 𝔭M: μ injective on M_0 and M generated in degree 0 (likewise for ν)
  auto check_kernel = [&](const ModulePtr& X, const Matrix& f, const char* name, const char* ideal) {
    if (rank(F, f) != X->dim(0))
      throw Error(std::string("ker ") + name + " ≠ " + ideal + ": " + name + " is not injective on degree 0");
    auto gens = minimal_generators(*X, [&](int d) { return all_of_degree(*X, d); }, X->hi());
    for (const auto& g : gens)
      if (g.first != 0)
        throw Error(std::string("ker ") + name + " ≠ " + ideal + ": module is not generated in degree 0");
  };
  check_kernel(M, mu, "μ", "𝔭M");
  check_kernel(N, nu, "ν", "𝔮N");

  FiberModule out;
  out.mu = mu;
  out.nu = nu;
  out.M = restrict_to_fiber(M, fp, Side::S);
  out.N = restrict_to_fiber(N, fp, Side::T);
  const int hi = std::min(out.M->hi(), out.N->hi());
  out.V = residue_module(fp.R, hi, r);

  const std::size_t m0 = M->dim(0), n0 = N->dim(0);
  Matrix both(r, m0 + n0);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t c = 0; c < m0; ++c) both(i, c) = mu(i, c);
    for (std::size_t c = 0; c < n0; ++c) both(i, m0 + c) = F.neg(nu(i, c));
  }
  out.L0 = nullspace(F, both).basis;

  std::vector<std::size_t> dims{out.L0.size()};
  for (int d = 1; d <= hi; ++d) dims.push_back(M->dim(d) + N->dim(d));
  auto L = std::make_shared<GradedModule>(fp.R, dims);
  auto element = [&](int d, std::size_t j) {
    if (d == 0) return out.L0[j];
    Vec e(dims[d], 0);
    e[j] = 1;
    return e;
  };
  for (int m = 1; m <= hi; ++m)
    for (int d = 0; d + m <= hi; ++d)
      for (std::size_t i = 0; i < fp.R->dim(m); ++i)
        for (std::size_t j = 0; j < dims[d]; ++j) {
          Vec x = element(d, j);
          const std::size_t md = M->dim(d);
          std::span<const Scalar> xm(x.data(), md), xn(x.data() + md, x.size() - md);
          Vec y(dims[d + m], 0);
          if (fp.side_of(m, i) == Side::S) {
            Vec p = out.M->act_basis(m, i, d, xm);
            std::copy(p.begin(), p.end(), y.begin());
          } else {
            Vec p = out.N->act_basis(m, i, d, xn);
            std::copy(p.begin(), p.end(), y.begin() + M->dim(d + m));
          }
          L->set_action(m, i, d, j, y);
        }
  out.L = L;
  return out;
}

}  // namespace fiberres
