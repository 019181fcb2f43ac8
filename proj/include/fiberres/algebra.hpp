#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fiberres/field.hpp"
#include "fiberres/series.hpp"

namespace fiberres {

/// Connected graded algebra over a prime field, known through degree `cap`.
///
/// Degree n has a labeled basis; the product of basis element i in degree m
/// and basis element j in degree n is stored as a coefficient vector in
/// degree m + n whenever m + n <= cap. Products landing above the cap are not
/// represented. Degree 0 is spanned by the unit "1".
///
/// Optionally every basis element carries a second, "internal" degree (Ext
/// algebras are bigraded); it defaults to the degree itself.
class GradedAlgebra {
 public:
  /// labels[0] must be {"1"}; all products default to zero except those
  /// involving the unit.
  GradedAlgebra(PrimeField field, int cap, std::vector<std::vector<std::string>> labels);

  const PrimeField& field() const { return field_; }
  int cap() const { return cap_; }
  std::size_t dim(int d) const { return d < 0 || d > cap_ ? 0 : labels_[d].size(); }
  const std::string& label(int d, std::size_t i) const { return labels_.at(d).at(i); }
  const std::vector<std::string>& labels(int d) const { return labels_.at(d); }
  std::optional<std::pair<int, std::size_t>> find_label(const std::string& s) const;

  void set_product(int m, std::size_t i, int n, std::size_t j, std::span<const Scalar> v);
  /// Product of two basis elements; requires m + n <= cap.
  std::span<const Scalar> product(int m, std::size_t i, int n, std::size_t j) const;
  /// Product of two homogeneous elements; requires m + n <= cap.
  Vec multiply(int m, std::span<const Scalar> a, int n, std::span<const Scalar> b) const;
  /// Basis element i of degree m times the element b of degree n.
  Vec left_multiply(int m, std::size_t i, int n, std::span<const Scalar> b) const;

  void set_internal_degrees(std::vector<std::vector<int>> w);
  int internal_degree(int d, std::size_t i) const;
  bool has_internal_degrees() const { return !internal_.empty(); }

  Vec unit_vector(int d, std::size_t i) const;
  PowerSeries hilbert_series() const;

  /// Identity, associativity and homogeneity checks on every in-cap triple.
  /// Returns a description of the first violation.
  std::optional<std::string> check_laws() const;

 private:
  std::size_t block_index(int m, int n) const { return static_cast<std::size_t>(m) * (cap_ + 1) + n; }

  PrimeField field_;
  int cap_;
  std::vector<std::vector<std::string>> labels_;
  std::vector<Vec> blocks_;  // [m][n] flattened: (i * dim n + j) * dim(m+n) + k
  std::vector<std::vector<int>> internal_;
  std::map<std::string, std::pair<int, std::size_t>> label_index_;
};

using AlgebraPtr = std::shared_ptr<const GradedAlgebra>;

/// The field k itself, viewed as a connected graded algebra.
AlgebraPtr trivial_algebra(const PrimeField& F, int cap);

struct Variable {
  std::string name;
  int degree = 1;
};

/// k[vars] / (monomials), commutative or free associative.
struct MonomialQuotientPresentation {
  std::vector<Variable> vars;
  std::vector<std::string> relations;  // monomials such as "x^2" or "x*y"
  bool commutative = true;
};

AlgebraPtr build_monomial_quotient(const MonomialQuotientPresentation& pres, int cap,
                                   const PrimeField& F);

/// Global dimension 1 is guaranteed by the presentation: no relations and
/// either one variable or a free associative algebra.
bool presentation_has_global_dimension_one(const MonomialQuotientPresentation& pres);

/// S ×_k T with R_n = S_n ⊕ T_n for n >= 1.
///
/// In every positive degree the first dim S_n basis elements of R are the
/// S-tagged ones (labels "S:..."), followed by the T-tagged ones ("T:...").
struct FiberProductAlgebra {
  AlgebraPtr S, T, R;

  enum class Side { S, T };

  std::size_t offset(Side side, int d) const { return side == Side::S || d == 0 ? 0 : S->dim(d); }
  const GradedAlgebra& factor(Side side) const { return side == Side::S ? *S : *T; }
  /// Side of R basis element i in degree d >= 1.
  Side side_of(int d, std::size_t i) const { return i < S->dim(d) ? Side::S : Side::T; }

  /// S_d or T_d into R_d (the unit maps to the unit).
  Vec embed(Side side, int d, std::span<const Scalar> v) const;
  /// σ : R -> S or τ : R -> T in degree d.
  Vec project(Side side, int d, std::span<const Scalar> v) const;
};

FiberProductAlgebra fiber_product(AlgebraPtr S, AlgebraPtr T);

/// Homogeneous element parsed from text such as "2*x^2 - x*y" or "S:x + T:y".
/// degree is empty for the zero polynomial.
struct ParsedElement {
  std::optional<int> degree;
  Vec coeffs;
};

ParsedElement parse_element(const GradedAlgebra& A, const std::string& text);
std::string format_element(const GradedAlgebra& A, int degree, std::span<const Scalar> v);

}  // namespace fiberres
