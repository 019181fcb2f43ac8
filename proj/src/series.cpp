#include "fiberres/series.hpp"

#include <algorithm>
#include <sstream>

#include "fiberres/field.hpp"

namespace fiberres {

PowerSeries::PowerSeries(std::vector<BigInt> coeffs, std::size_t truncation)
    : coeffs_(truncation + 1, BigInt(0)) {
  if (coeffs.size() > truncation + 1) coeffs.resize(truncation + 1);
  std::copy(coeffs.begin(), coeffs.end(), coeffs_.begin());
}

PowerSeries::PowerSeries(std::initializer_list<long long> coeffs, std::size_t truncation)
    : coeffs_(truncation + 1, BigInt(0)) {
  std::size_t i = 0;
  for (long long c : coeffs) {
    if (i > truncation) break;
    coeffs_[i++] = c;
  }
}

PowerSeries PowerSeries::constant(long long c, std::size_t truncation) {
  return PowerSeries({c}, truncation);
}

PowerSeries PowerSeries::geometric(std::size_t truncation) {
  return PowerSeries(std::vector<BigInt>(truncation + 1, BigInt(1)), truncation);
}

PowerSeries PowerSeries::truncated(std::size_t d) const {
  std::size_t D = std::min(d, truncation());
  return PowerSeries(std::vector<BigInt>(coeffs_.begin(), coeffs_.begin() + D + 1), D);
}

bool PowerSeries::nonnegative() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const BigInt& c) { return c >= 0; });
}

PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
  std::size_t D = std::min(a.truncation(), b.truncation());
  std::vector<BigInt> c(D + 1);
  for (std::size_t n = 0; n <= D; ++n) c[n] = a.coeffs_[n] + b.coeffs_[n];
  return PowerSeries(std::move(c), D);
}

PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) {
  std::size_t D = std::min(a.truncation(), b.truncation());
  std::vector<BigInt> c(D + 1);
  for (std::size_t n = 0; n <= D; ++n) c[n] = a.coeffs_[n] - b.coeffs_[n];
  return PowerSeries(std::move(c), D);
}

PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
  std::size_t D = std::min(a.truncation(), b.truncation());
  std::vector<BigInt> c(D + 1, BigInt(0));
  for (std::size_t i = 0; i <= D; ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; i + j <= D; ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return PowerSeries(std::move(c), D);
}

PowerSeries operator*(long long s, const PowerSeries& a) {
  std::vector<BigInt> c(a.coeffs_);
  for (auto& x : c) x *= s;
  return PowerSeries(std::move(c), a.truncation());
}

bool PowerSeries::agrees_with(const PowerSeries& o) const {
  std::size_t D = std::min(truncation(), o.truncation());
  for (std::size_t n = 0; n <= D; ++n)
    if (coeffs_[n] != o.coeffs_[n]) return false;
  return true;
}

std::string PowerSeries::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t n = 0; n < coeffs_.size(); ++n) {
    const BigInt& c = coeffs_[n];
    if (c == 0) continue;
    BigInt mag = c < 0 ? BigInt(-c) : c;
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    first = false;
    if (n == 0 || mag != 1) os << mag;
    if (n >= 1) os << "t";
    if (n >= 2) os << "^" << n;
  }
  if (first) os << "0";
  os << " + O(t^" << truncation() + 1 << ")";
  return os.str();
}

PowerSeries series_add(const PowerSeries& a, const PowerSeries& b) { return a + b; }
PowerSeries series_mul(const PowerSeries& a, const PowerSeries& b) { return a * b; }

PowerSeries series_geometric_inverse(const PowerSeries& m) {
  if (m[0] != 0) throw Error("geometric inverse needs a series with zero constant term");
  // g = 1 + m g, solved degree by degree
  std::size_t D = m.truncation();
  std::vector<BigInt> g(D + 1, BigInt(0));
  g[0] = 1;
  for (std::size_t n = 1; n <= D; ++n) {
    BigInt acc = 0;
    for (std::size_t i = 1; i <= n; ++i)
      if (m[i] != 0) acc += m[i] * g[n - i];
    g[n] = acc;
  }
  return PowerSeries(std::move(g), D);
}

PowerSeries series_unit_inverse(const PowerSeries& u) {
  if (u[0] != 1) throw Error("series inverse needs constant term 1");
  return series_geometric_inverse(PowerSeries::constant(1, u.truncation()) - u);
}

PowerSeries coproduct_module_series(const PowerSeries& hA, const PowerSeries& hB,
                                    const PowerSeries& hM) {
  if (hA[0] != 1 || hB[0] != 1)
    throw Error("coproduct series needs connected algebras (constant term 1)");
  PowerSeries denom = hA + hB - hA * hB;
  return hM * hB * series_unit_inverse(denom);
}

PowerSeries poincare_fiber_formula(const PowerSeries& psM, const PowerSeries& psK,
                                   const PowerSeries& ptK) {
  if (psK[0] != 1 || ptK[0] != 1)
    throw Error("Poincaré series of k must have constant term 1");
  if (!psM.nonnegative()) throw Error("Poincaré series of M has a negative coefficient");
  PowerSeries denom = psK + ptK - psK * ptK;
  return psM * ptK * series_unit_inverse(denom);
}

bool fiber_module_poincare_check(const PowerSeries& pFib, const PowerSeries& pM,
                                 const PowerSeries& pN, const PowerSeries& pK, long long rankV) {
  if (rankV < 0) throw Error("rank of V must be non-negative");
  return (pFib + rankV * pK).agrees_with(pM + pN);
}

PowerSeries word_count_series(const PowerSeries& hE, const PowerSeries& hF,
                              const PowerSeries& hP) {
  std::size_t D = std::min({hE.truncation(), hF.truncation(), hP.truncation()});
  PowerSeries one = PowerSeries::constant(1, D);
  PowerSeries loop = (hE - one) * (hF - one);
  return hP * hF * series_geometric_inverse(loop);
}

BigradedSeries::BigradedSeries(std::size_t hmax, std::size_t dmax)
    : c_(hmax + 1, std::vector<BigInt>(dmax + 1, BigInt(0))) {}

BigradedSeries BigradedSeries::one(std::size_t hmax, std::size_t dmax) {
  BigradedSeries s(hmax, dmax);
  s.c_[0][0] = 1;
  return s;
}

BigradedSeries operator+(const BigradedSeries& a, const BigradedSeries& b) {
  std::size_t H = std::min(a.hmax(), b.hmax()), D = std::min(a.dmax(), b.dmax());
  BigradedSeries r(H, D);
  for (std::size_t i = 0; i <= H; ++i)
    for (std::size_t j = 0; j <= D; ++j) r.c_[i][j] = a.c_[i][j] + b.c_[i][j];
  return r;
}

BigradedSeries operator-(const BigradedSeries& a, const BigradedSeries& b) {
  std::size_t H = std::min(a.hmax(), b.hmax()), D = std::min(a.dmax(), b.dmax());
  BigradedSeries r(H, D);
  for (std::size_t i = 0; i <= H; ++i)
    for (std::size_t j = 0; j <= D; ++j) r.c_[i][j] = a.c_[i][j] - b.c_[i][j];
  return r;
}

BigradedSeries operator*(const BigradedSeries& a, const BigradedSeries& b) {
  std::size_t H = std::min(a.hmax(), b.hmax()), D = std::min(a.dmax(), b.dmax());
  BigradedSeries r(H, D);
  for (std::size_t i1 = 0; i1 <= H; ++i1)
    for (std::size_t j1 = 0; j1 <= D; ++j1) {
      if (a.c_[i1][j1] == 0) continue;
      for (std::size_t i2 = 0; i1 + i2 <= H; ++i2)
        for (std::size_t j2 = 0; j1 + j2 <= D; ++j2)
          if (b.c_[i2][j2] != 0) r.c_[i1 + i2][j1 + j2] += a.c_[i1][j1] * b.c_[i2][j2];
    }
  return r;
}

BigradedSeries BigradedSeries::unit_inverse() const {
  if (c_[0][0] != 1) throw Error("bigraded inverse needs constant term 1");
  // g = 1 + (1 - u) g, solved in increasing total degree
  std::size_t H = hmax(), D = dmax();
  BigradedSeries g(H, D);
  g.c_[0][0] = 1;
  for (std::size_t tot = 1; tot <= H + D; ++tot)
    for (std::size_t i = 0; i <= std::min(tot, H); ++i) {
      std::size_t j = tot - i;
      if (j > D) continue;
      BigInt acc = 0;
      for (std::size_t a = 0; a <= i; ++a)
        for (std::size_t b = 0; b <= j; ++b) {
          if (a == 0 && b == 0) continue;
          if (c_[a][b] != 0) acc -= c_[a][b] * g.c_[i - a][j - b];
        }
      g.c_[i][j] = acc;
    }
  return g;
}

PowerSeries BigradedSeries::collapse() const {
  std::vector<BigInt> c(hmax() + 1, BigInt(0));
  for (std::size_t i = 0; i <= hmax(); ++i)
    for (const auto& x : c_[i]) c[i] += x;
  return PowerSeries(std::move(c), hmax());
}

BigradedSeries coproduct_module_series(const BigradedSeries& hA, const BigradedSeries& hB,
                                       const BigradedSeries& hM) {
  if (hA.at(0, 0) != 1 || hB.at(0, 0) != 1)
    throw Error("coproduct series needs connected algebras (constant term 1)");
  return hM * hB * (hA + hB - hA * hB).unit_inverse();
}

BigradedSeries word_count_series(const BigradedSeries& hE, const BigradedSeries& hF,
                                 const BigradedSeries& hP) {
  std::size_t H = std::min({hE.hmax(), hF.hmax(), hP.hmax()});
  std::size_t D = std::min({hE.dmax(), hF.dmax(), hP.dmax()});
  BigradedSeries one = BigradedSeries::one(H, D);
  return hP * hF * (one - (hE - one) * (hF - one)).unit_inverse();
}

}  // namespace fiberres
