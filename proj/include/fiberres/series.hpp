#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace fiberres {

using BigInt = boost::multiprecision::cpp_int;

/// Formal power series known exactly through degree `truncation()`.
///
/// Coefficients above the truncation are unknown, not zero; every binary
/// operation truncates to the smaller of its operands.
class PowerSeries {
 public:
  PowerSeries() = default;
  /// Known coefficients through `truncation`; entries beyond `coeffs` are 0.
  PowerSeries(std::vector<BigInt> coeffs, std::size_t truncation);
  PowerSeries(std::initializer_list<long long> coeffs, std::size_t truncation);

  static PowerSeries constant(long long c, std::size_t truncation);
  /// 1 + t + t^2 + ... through `truncation`.
  static PowerSeries geometric(std::size_t truncation);

  std::size_t truncation() const { return coeffs_.size() - 1; }
  const BigInt& operator[](std::size_t n) const { return coeffs_.at(n); }
  const std::vector<BigInt>& coeffs() const { return coeffs_; }

  PowerSeries truncated(std::size_t d) const;
  bool nonnegative() const;

  friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b);
  friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b);
  friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b);
  friend PowerSeries operator*(long long s, const PowerSeries& a);
  /// Equality of all coefficients and the truncation.
  friend bool operator==(const PowerSeries& a, const PowerSeries& b) = default;

  /// Coefficientwise equality through min truncation.
  bool agrees_with(const PowerSeries& o) const;

  std::string to_string() const;

 private:
  std::vector<BigInt> coeffs_{BigInt(0)};
};

PowerSeries series_add(const PowerSeries& a, const PowerSeries& b);
PowerSeries series_mul(const PowerSeries& a, const PowerSeries& b);
/// 1 / (1 - m); requires m(0) = 0.
PowerSeries series_geometric_inverse(const PowerSeries& m);
/// 1 / u; requires u(0) = 1.
PowerSeries series_unit_inverse(const PowerSeries& u);

/// Hilbert series of (A ⊔ B) ⊗_A M: hM·hB / (hA + hB - hA·hB).
PowerSeries coproduct_module_series(const PowerSeries& hA, const PowerSeries& hB,
                                    const PowerSeries& hM);

/// Poincaré series of an S-module M over S ×_k T:
/// P^S_M·P^T_k / (P^S_k + P^T_k - P^S_k·P^T_k).
PowerSeries poincare_fiber_formula(const PowerSeries& psM, const PowerSeries& psK,
                                   const PowerSeries& ptK);

/// P_{M×_V N} + rank(V)·P_k == P_M + P_N through the shared truncation.
bool fiber_module_poincare_check(const PowerSeries& pFib, const PowerSeries& pM,
                                 const PowerSeries& pN, const PowerSeries& pK, long long rankV);

/// Number of words in the fiber-product word basis, by homological degree:
/// hP·hF / (1 - (hE - 1)(hF - 1)).
PowerSeries word_count_series(const PowerSeries& hE, const PowerSeries& hF,
                              const PowerSeries& hP);

/// Bigraded series sum c[i][j] t^i u^j, known for i <= H and j <= D.
///
/// Used to state the same identities per internal degree, which keeps them
/// exact when resolutions are windowed in internal degree.
class BigradedSeries {
 public:
  BigradedSeries(std::size_t hmax, std::size_t dmax);
  static BigradedSeries one(std::size_t hmax, std::size_t dmax);

  std::size_t hmax() const { return c_.size() - 1; }
  std::size_t dmax() const { return c_[0].size() - 1; }
  BigInt& at(std::size_t i, std::size_t j) { return c_.at(i).at(j); }
  const BigInt& at(std::size_t i, std::size_t j) const { return c_.at(i).at(j); }

  friend BigradedSeries operator+(const BigradedSeries& a, const BigradedSeries& b);
  friend BigradedSeries operator-(const BigradedSeries& a, const BigradedSeries& b);
  friend BigradedSeries operator*(const BigradedSeries& a, const BigradedSeries& b);
  friend bool operator==(const BigradedSeries& a, const BigradedSeries& b) = default;

  /// 1 / u; requires u(0,0) = 1.
  BigradedSeries unit_inverse() const;
  /// Sum over internal degrees; only meaningful when the window is complete.
  PowerSeries collapse() const;

 private:
  std::vector<std::vector<BigInt>> c_;
};

BigradedSeries coproduct_module_series(const BigradedSeries& hA, const BigradedSeries& hB,
                                       const BigradedSeries& hM);
BigradedSeries word_count_series(const BigradedSeries& hE, const BigradedSeries& hF,
                                 const BigradedSeries& hP);

}  // namespace fiberres
