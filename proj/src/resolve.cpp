#include "fiberres/resolve.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace fiberres {

int max_valid_dmax(const GradedModule& M) { return std::min(M.hi(), M.alg().cap()); }

FreeResolution minimal_resolution(const ModulePtr& M, int hmax, int dmax) {
  if (hmax < 0 || dmax < 0) throw Error("resolution window must be non-negative");
  const int valid = max_valid_dmax(*M);
  if (dmax > valid)
    throw Error("window too small: internal degree " + std::to_string(dmax) + " requested, largest valid dmax is " +
                std::to_string(valid));
  FreeResolution res;
  res.A = M->algebra();
  res.module = M;
  res.hmax = hmax;
  res.dmax = dmax;

  auto gens = minimal_generators(
      *M,
      [&](int d) {
        std::vector<Vec> all;
        for (std::size_t j = 0; j < M->dim(d); ++j) {
          Vec e(M->dim(d), 0);
          e[j] = 1;
          all.push_back(std::move(e));
        }
        return all;
      },
      dmax);
  res.d.push_back(free_cover(M, gens, dmax, "g0_"));
  res.free.push_back(res.d.back().source);
  for (int i = 1; i <= hmax; ++i) {
    auto ker = kernel_bases(res.d.back(), dmax);
    const ModulePtr& X = res.free.back();
    auto next = minimal_generators(*X, [&](int d) { return ker[d]; }, dmax);
    res.d.push_back(free_cover(X, next, dmax, "g" + std::to_string(i) + "_"));
    res.free.push_back(res.d.back().source);
  }
  return res;
}

std::size_t BettiTable::at(int i, int j) const {
  if (i < 0 || i > hmax || j < 0 || j > dmax) return 0;
  return b[i][j];
}

std::size_t BettiTable::row_total(int i) const {
  std::size_t s = 0;
  for (int j = 0; j <= dmax; ++j) s += at(i, j);
  return s;
}

PowerSeries BettiTable::poincare() const {
  std::vector<BigInt> c;
  for (int i = 0; i <= hmax; ++i) c.emplace_back(row_total(i));
  return PowerSeries(std::move(c), hmax);
}

BigradedSeries BettiTable::bigraded() const {
  BigradedSeries s(hmax, dmax);
  for (int i = 0; i <= hmax; ++i)
    for (int j = 0; j <= dmax; ++j) s.at(i, j) = at(i, j);
  return s;
}

bool BettiTable::empty() const {
  for (int i = 0; i <= hmax; ++i)
    if (row_total(i) != 0) return false;
  return true;
}

std::string BettiTable::to_text() const {
  int lo = dmax + 1, hi = -dmax - hmax - 1;
  for (int i = 0; i <= hmax; ++i)
    for (int j = 0; j <= dmax; ++j)
      if (at(i, j) != 0) {
        lo = std::min(lo, j - i);
        hi = std::max(hi, j - i);
      }
  std::size_t w = 1;
  for (int i = 0; i <= hmax; ++i) w = std::max(w, std::to_string(row_total(i)).size());
  std::ostringstream os;
  os << std::setw(7) << "";
  for (int i = 0; i <= hmax; ++i) os << ' ' << std::setw(static_cast<int>(w)) << i;
  os << "\n" << std::setw(7) << "total:";
  for (int i = 0; i <= hmax; ++i) os << ' ' << std::setw(static_cast<int>(w)) << row_total(i);
  os << "\n";
  for (int r = lo; r <= hi; ++r) {
    os << std::setw(5) << r << ": ";
    for (int i = 0; i <= hmax; ++i) {
      std::size_t v = at(i, r + i);
      os << ' ' << std::setw(static_cast<int>(w)) << (v == 0 ? std::string(".") : std::to_string(v));
    }
    os << "\n";
  }
  return os.str();
}

BettiTable betti(const FreeResolution& res) {
  BettiTable t;
  t.hmax = res.length();
  t.dmax = res.dmax;
  t.b.assign(t.hmax + 1, std::vector<std::size_t>(t.dmax + 1, 0));
  for (int i = 0; i <= t.hmax; ++i)
    for (int g : res.generator_degrees(i))
      if (g <= t.dmax) ++t.b[i][g];
  return t;
}

ComplexReport verify_complex(const FreeResolution& res) {
  const PrimeField& F = res.A->field();
  const int h = res.length();
  const int D = res.dmax;
  ComplexReport report;
  // ranks[i][e] = rank of d[i] in internal degree e
  std::vector<std::vector<std::size_t>> ranks(h + 1, std::vector<std::size_t>(D + 1, 0));
  for (int i = 0; i <= h; ++i)
    for (int e = 0; e <= D; ++e) ranks[i][e] = rank(F, res.d[i].matrix(e));

  auto fail = [&](StepCheck& s, const std::string& what) {
    if (s.note.empty()) s.note = what;
    if (report.first_failure.empty()) report.first_failure = "step " + std::to_string(s.i) + ": " + what;
    report.pass = false;
  };

  for (int i = 0; i <= h; ++i) {
    StepCheck s;
    s.i = i;
    if (i >= 1) {
      const ModuleMap& di = res.d[i];
      const ModuleMap& below = res.d[i - 1];
      for (std::size_t g = 0; g < di.images.size(); ++g) {
        const int e = res.generator_degrees(i)[g];
        if (e > D) continue;
        if (!is_zero(below.apply(e, di.images[g]))) {
          s.square_zero = false;
          fail(s, "d^2 != 0 at bidegree (" + std::to_string(i) + ", " + std::to_string(e) + ")");
          break;
        }
      }
      if (!di.entries_in_max_ideal()) {
        s.minimal = false;
        fail(s, "differential entry outside the maximal ideal");
      }
    }
    if (i < h) {
      s.exact_checked = true;
      for (int e = 0; e <= D; ++e) {
        bool ok;
        if (i == 0)
          ok = ranks[0][e] == res.module->dim(e) && ranks[1][e] + ranks[0][e] == res.free[0]->dim(e);
        else
          ok = ranks[i + 1][e] + ranks[i][e] == res.free[i]->dim(e);
        if (!ok) {
          s.exact = false;
          fail(s, "homology at bidegree (" + std::to_string(i) + ", " + std::to_string(e) + ")");
          break;
        }
      }
    }
    report.steps.push_back(std::move(s));
  }
  return report;
}

Submodule syzygy(const FreeResolution& res, int n) {
  if (n < 1) throw Error("syzygy index must be at least 1");
  if (n - 1 > res.length()) throw Error("window exhausted: resolution too short for this syzygy");
  const ModuleMap& f = res.d[n - 1];
  return submodule(*f.source, kernel_bases(f, res.dmax));
}

}  // namespace fiberres
