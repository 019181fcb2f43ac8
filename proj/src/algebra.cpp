#include "fiberres/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

#include "fiberres/linalg.hpp"

namespace fiberres {

GradedAlgebra::GradedAlgebra(PrimeField field, int cap, std::vector<std::vector<std::string>> labels)
    : field_(field), cap_(cap), labels_(std::move(labels)) {
  if (cap_ < 0) throw Error("algebra cap must be non-negative");
  labels_.resize(cap_ + 1);
  if (labels_[0].size() != 1) throw Error("a connected algebra has one-dimensional degree 0");
  blocks_.resize(static_cast<std::size_t>(cap_ + 1) * (cap_ + 1));
  for (int m = 0; m <= cap_; ++m)
    for (int n = 0; m + n <= cap_; ++n)
      blocks_[block_index(m, n)].assign(dim(m) * dim(n) * dim(m + n), 0);
  for (int n = 0; n <= cap_; ++n)
    for (std::size_t j = 0; j < dim(n); ++j) {
      Vec e = unit_vector(n, j);
      set_product(0, 0, n, j, e);
      set_product(n, j, 0, 0, e);
    }
  for (int d = 0; d <= cap_; ++d)
    for (std::size_t i = 0; i < labels_[d].size(); ++i) {
      if (!label_index_.emplace(labels_[d][i], std::make_pair(d, i)).second)
        throw Error("duplicate basis label '" + labels_[d][i] + "'");
    }
}

std::optional<std::pair<int, std::size_t>> GradedAlgebra::find_label(const std::string& s) const {
  auto it = label_index_.find(s);
  if (it == label_index_.end()) return std::nullopt;
  return it->second;
}

void GradedAlgebra::set_product(int m, std::size_t i, int n, std::size_t j, std::span<const Scalar> v) {
  if (m + n > cap_) throw Error("product beyond the algebra cap");
  const std::size_t out = dim(m + n);
  if (v.size() != out) throw Error("product vector has the wrong dimension");
  Vec& block = blocks_[block_index(m, n)];
  std::copy(v.begin(), v.end(), block.begin() + (i * dim(n) + j) * out);
}

std::span<const Scalar> GradedAlgebra::product(int m, std::size_t i, int n, std::size_t j) const {
  const std::size_t out = dim(m + n);
  const Vec& block = blocks_[block_index(m, n)];
  return {block.data() + (i * dim(n) + j) * out, out};
}

Vec GradedAlgebra::multiply(int m, std::span<const Scalar> a, int n, std::span<const Scalar> b) const {
  if (m < 0 || n < 0 || m + n > cap_) throw Error("product beyond the algebra cap");
  Vec out(dim(m + n), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j] == 0) continue;
      axpy(field_, out, product(m, i, n, j), field_.mul(a[i], b[j]));
    }
  }
  return out;
}

Vec GradedAlgebra::left_multiply(int m, std::size_t i, int n, std::span<const Scalar> b) const {
  Vec out(dim(m + n), 0);
  for (std::size_t j = 0; j < b.size(); ++j)
    if (b[j] != 0) axpy(field_, out, product(m, i, n, j), b[j]);
  return out;
}

void GradedAlgebra::set_internal_degrees(std::vector<std::vector<int>> w) {
  w.resize(cap_ + 1);
  for (int d = 0; d <= cap_; ++d)
    if (w[d].size() != dim(d)) throw Error("internal degree table does not match the basis");
  internal_ = std::move(w);
}

int GradedAlgebra::internal_degree(int d, std::size_t i) const {
  return internal_.empty() ? d : internal_.at(d).at(i);
}

Vec GradedAlgebra::unit_vector(int d, std::size_t i) const {
  Vec v(dim(d), 0);
  v.at(i) = 1;
  return v;
}

PowerSeries GradedAlgebra::hilbert_series() const {
  std::vector<BigInt> c;
  for (int d = 0; d <= cap_; ++d) c.emplace_back(dim(d));
  return PowerSeries(std::move(c), cap_);
}

std::optional<std::string> GradedAlgebra::check_laws() const {
  for (int n = 0; n <= cap_; ++n)
    for (std::size_t j = 0; j < dim(n); ++j) {
      Vec e = unit_vector(n, j);
      auto l = product(0, 0, n, j), r = product(n, j, 0, 0);
      if (!std::equal(l.begin(), l.end(), e.begin()) || !std::equal(r.begin(), r.end(), e.begin()))
        return "unit law fails on " + label(n, j);
    }
  for (int a = 1; a <= cap_; ++a)
    for (int b = 1; a + b <= cap_; ++b)
      for (int c = 1; a + b + c <= cap_; ++c)
        for (std::size_t i = 0; i < dim(a); ++i)
          for (std::size_t j = 0; j < dim(b); ++j)
            for (std::size_t k = 0; k < dim(c); ++k) {
              Vec ab = multiply(a + b, product(a, i, b, j), c, unit_vector(c, k));
              Vec bc = left_multiply(a, i, b + c, product(b, j, c, k));
              if (ab != bc)
                return "associativity fails on (" + label(a, i) + ", " + label(b, j) + ", " +
                       label(c, k) + ")";
            }
  if (has_internal_degrees()) {
    for (int a = 0; a <= cap_; ++a)
      for (int b = 0; a + b <= cap_; ++b)
        for (std::size_t i = 0; i < dim(a); ++i)
          for (std::size_t j = 0; j < dim(b); ++j) {
            auto p = product(a, i, b, j);
            for (std::size_t k = 0; k < p.size(); ++k)
              if (p[k] != 0 && internal_degree(a + b, k) != internal_degree(a, i) + internal_degree(b, j))
                return "product of " + label(a, i) + " and " + label(b, j) + " is not bihomogeneous";
          }
  }
  return std::nullopt;
}

AlgebraPtr trivial_algebra(const PrimeField& F, int cap) {
  return std::make_shared<GradedAlgebra>(F, cap, std::vector<std::vector<std::string>>{{"1"}});
}

// ---------------------------------------------------------------------------
// Monomial quotients

namespace {

std::vector<int> parse_monomial(const std::string& text, const std::vector<Variable>& vars,
                                bool commutative) {
  // returns an exponent vector (commutative) or a variable index word
  std::vector<int> out(commutative ? vars.size() : 0, 0);
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw Error("empty monomial");
  std::stringstream ss(s);
  std::string factor;
  while (std::getline(ss, factor, '*')) {
    std::string name = factor;
    int exp = 1;
    if (auto pos = factor.find('^'); pos != std::string::npos) {
      name = factor.substr(0, pos);
      try {
        exp = std::stoi(factor.substr(pos + 1));
      } catch (const std::exception&) {
        throw Error("bad exponent in monomial '" + text + "'");
      }
      if (exp < 1) throw Error("exponent must be positive in monomial '" + text + "'");
    }
    auto it = std::find_if(vars.begin(), vars.end(), [&](const Variable& v) { return v.name == name; });
    if (it == vars.end()) throw Error("monomial '" + text + "' uses unknown variable '" + name + "'");
    int idx = static_cast<int>(it - vars.begin());
    if (commutative)
      out[idx] += exp;
    else
      for (int e = 0; e < exp; ++e) out.push_back(idx);
  }
  return out;
}

std::string commutative_label(const std::vector<int>& e, const std::vector<Variable>& vars) {
  std::string s;
  for (std::size_t k = 0; k < e.size(); ++k) {
    if (e[k] == 0) continue;
    if (!s.empty()) s += "*";
    s += vars[k].name;
    if (e[k] > 1) s += "^" + std::to_string(e[k]);
  }
  return s.empty() ? "1" : s;
}

std::string word_label(const std::vector<int>& w, const std::vector<Variable>& vars) {
  std::string s;
  for (std::size_t k = 0; k < w.size();) {
    std::size_t run = k;
    while (run < w.size() && w[run] == w[k]) ++run;
    if (!s.empty()) s += "*";
    s += vars[w[k]].name;
    if (run - k > 1) s += "^" + std::to_string(run - k);
    k = run;
  }
  return s.empty() ? "1" : s;
}

bool contains_subword(const std::vector<int>& w, const std::vector<int>& r) {
  return !r.empty() && std::search(w.begin(), w.end(), r.begin(), r.end()) != w.end();
}

}  // namespace

bool presentation_has_global_dimension_one(const MonomialQuotientPresentation& pres) {
  return pres.relations.empty() && (pres.vars.size() == 1 || !pres.commutative) && !pres.vars.empty();
}

AlgebraPtr build_monomial_quotient(const MonomialQuotientPresentation& pres, int cap,
                                   const PrimeField& F) {
  if (cap < 0) throw Error("cap must be non-negative");
  for (const auto& v : pres.vars) {
    if (v.degree <= 0) throw Error("variable '" + v.name + "' must have positive degree");
    if (v.name.empty() || v.name.find_first_of("*^+- ") != std::string::npos)
      throw Error("invalid variable name '" + v.name + "'");
  }
  const auto& vars = pres.vars;
  std::vector<std::vector<int>> rels;
  for (const auto& r : pres.relations) rels.push_back(parse_monomial(r, vars, pres.commutative));

  auto standard = [&](const std::vector<int>& m) {
    for (const auto& r : rels) {
      if (pres.commutative) {
        bool divisible = true;
        for (std::size_t k = 0; k < m.size(); ++k) divisible = divisible && m[k] >= r[k];
        if (divisible) return false;
      } else if (contains_subword(m, r)) {
        return false;
      }
    }
    return true;
  };

  std::vector<std::vector<std::vector<int>>> basis(cap + 1);
  if (pres.commutative) {
    std::vector<int> e(vars.size(), 0);
    // enumerate per exact degree so each degree is in lex-descending order
    for (int d = 0; d <= cap; ++d) {
      std::vector<std::vector<int>> found;
      std::function<void(std::size_t, int)> exact = [&](std::size_t k, int remaining) {
        if (k == vars.size()) {
          if (remaining == 0 && standard(e)) found.push_back(e);
          return;
        }
        for (int x = remaining / vars[k].degree; x >= 0; --x) {
          e[k] = x;
          exact(k + 1, remaining - x * vars[k].degree);
        }
        e[k] = 0;
      };
      exact(0, d);
      basis[d] = std::move(found);
    }
  } else {
    // breadth-first over words, lexicographic within a degree
    basis[0].push_back({});
    std::vector<std::vector<std::vector<int>>> by_degree(cap + 1);
    std::function<void(std::vector<int>&, int)> grow = [&](std::vector<int>& w, int deg) {
      for (std::size_t v = 0; v < vars.size(); ++v) {
        int nd = deg + vars[v].degree;
        if (nd > cap) continue;
        w.push_back(static_cast<int>(v));
        if (standard(w)) {
          by_degree[nd].push_back(w);
          grow(w, nd);
        }
        w.pop_back();
      }
    };
    std::vector<int> w;
    grow(w, 0);
    for (int d = 1; d <= cap; ++d) {
      std::sort(by_degree[d].begin(), by_degree[d].end());
      basis[d] = std::move(by_degree[d]);
    }
  }

  std::vector<std::vector<std::string>> labels(cap + 1);
  std::vector<std::map<std::vector<int>, std::size_t>> index(cap + 1);
  for (int d = 0; d <= cap; ++d)
    for (std::size_t i = 0; i < basis[d].size(); ++i) {
      labels[d].push_back(pres.commutative ? commutative_label(basis[d][i], vars)
                                           : word_label(basis[d][i], vars));
      index[d][basis[d][i]] = i;
    }
  auto A = std::make_shared<GradedAlgebra>(F, cap, labels);
  for (int m = 1; m <= cap; ++m)
    for (int n = 1; m + n <= cap; ++n)
      for (std::size_t i = 0; i < basis[m].size(); ++i)
        for (std::size_t j = 0; j < basis[n].size(); ++j) {
          std::vector<int> prod;
          if (pres.commutative) {
            prod = basis[m][i];
            for (std::size_t k = 0; k < prod.size(); ++k) prod[k] += basis[n][j][k];
          } else {
            prod = basis[m][i];
            prod.insert(prod.end(), basis[n][j].begin(), basis[n][j].end());
          }
          auto it = index[m + n].find(prod);
          if (it == index[m + n].end()) continue;  // divisible by a relation
          Vec v(A->dim(m + n), 0);
          v[it->second] = 1;
          A->set_product(m, i, n, j, v);
        }
  return A;
}

// ---------------------------------------------------------------------------
// Fiber products

Vec FiberProductAlgebra::embed(Side side, int d, std::span<const Scalar> v) const {
  Vec out(R->dim(d), 0);
  if (d == 0) {
    out[0] = v[0];
    return out;
  }
  std::copy(v.begin(), v.end(), out.begin() + offset(side, d));
  return out;
}

Vec FiberProductAlgebra::project(Side side, int d, std::span<const Scalar> v) const {
  const GradedAlgebra& A = factor(side);
  if (d == 0) return Vec{v[0]};
  auto begin = v.begin() + offset(side, d);
  return Vec(begin, begin + A.dim(d));
}

FiberProductAlgebra fiber_product(AlgebraPtr S, AlgebraPtr T) {
  if (!(S->field() == T->field())) throw Error("fiber product factors live over different fields");
  if (S->cap() != T->cap()) throw Error("fiber product factors have different caps");
  const int cap = S->cap();
  std::vector<std::vector<std::string>> labels(cap + 1);
  labels[0] = {"1"};
  for (int d = 1; d <= cap; ++d) {
    for (const auto& l : S->labels(d)) labels[d].push_back("S:" + l);
    for (const auto& l : T->labels(d)) labels[d].push_back("T:" + l);
  }
  auto R = std::make_shared<GradedAlgebra>(S->field(), cap, labels);
  FiberProductAlgebra fp{S, T, nullptr};
  using Side = FiberProductAlgebra::Side;
  for (Side side : {Side::S, Side::T}) {
    const GradedAlgebra& A = side == Side::S ? *S : *T;
    for (int m = 1; m <= cap; ++m)
      for (int n = 1; m + n <= cap; ++n)
        for (std::size_t i = 0; i < A.dim(m); ++i)
          for (std::size_t j = 0; j < A.dim(n); ++j) {
            Vec out(R->dim(m + n), 0);
            auto p = A.product(m, i, n, j);
            std::copy(p.begin(), p.end(), out.begin() + fp.offset(side, m + n));
            R->set_product(m, fp.offset(side, m) + i, n, fp.offset(side, n) + j, out);
          }
  }
  fp.R = std::move(R);
  return fp;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct Homogeneous {
  int degree;
  Vec v;
};

Homogeneous resolve_factor(const GradedAlgebra& A, const std::string& f) {
  auto lookup = [&](const std::string& name) -> std::optional<Homogeneous> {
    if (auto hit = A.find_label(name)) return Homogeneous{hit->first, A.unit_vector(hit->first, hit->second)};
    auto s = A.find_label("S:" + name), t = A.find_label("T:" + name);
    if (s && t) throw Error("symbol '" + name + "' is ambiguous between S and T");
    if (s) return Homogeneous{s->first, A.unit_vector(s->first, s->second)};
    if (t) return Homogeneous{t->first, A.unit_vector(t->first, t->second)};
    return std::nullopt;
  };
  if (auto h = lookup(f)) return *h;
  if (auto pos = f.rfind('^'); pos != std::string::npos) {
    auto base = lookup(f.substr(0, pos));
    int exp = -1;
    try {
      exp = std::stoi(f.substr(pos + 1));
    } catch (const std::exception&) {
    }
    if (base && exp >= 0) {
      Homogeneous acc{0, A.unit_vector(0, 0)};
      for (int e = 0; e < exp; ++e) {
        if (acc.degree + base->degree > A.cap()) throw Error("'" + f + "' exceeds the algebra cap");
        acc.v = A.multiply(acc.degree, acc.v, base->degree, base->v);
        acc.degree += base->degree;
      }
      return acc;
    }
  }
  throw Error("unknown symbol '" + f + "'");
}

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

}  // namespace

ParsedElement parse_element(const GradedAlgebra& A, const std::string& text) {
  const PrimeField& F = A.field();
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw Error("empty polynomial");

  // split into signed terms
  std::vector<std::pair<bool, std::string>> terms;
  std::string cur;
  bool negative = false;
  for (std::size_t k = 0; k < s.size(); ++k) {
    char c = s[k];
    if ((c == '+' || c == '-') && !(k > 0 && s[k - 1] == '^')) {
      if (!cur.empty()) terms.emplace_back(negative, cur);
      else if (k != 0) throw Error("malformed polynomial '" + text + "'");
      cur.clear();
      negative = c == '-';
    } else {
      cur += c;
    }
  }
  if (cur.empty()) throw Error("malformed polynomial '" + text + "'");
  terms.emplace_back(negative, cur);

  ParsedElement out;
  for (const auto& [neg, term] : terms) {
    Scalar coeff = 1;
    Homogeneous acc{0, A.unit_vector(0, 0)};
    std::stringstream ss(term);
    std::string factor;
    while (std::getline(ss, factor, '*')) {
      if (factor.empty()) throw Error("malformed term '" + term + "'");
      if (all_digits(factor)) {
        coeff = F.mul(coeff, F.from_int(std::stoll(factor)));
        continue;
      }
      Homogeneous f = resolve_factor(A, factor);
      if (acc.degree + f.degree > A.cap()) throw Error("term '" + term + "' exceeds the algebra cap");
      acc.v = A.multiply(acc.degree, acc.v, f.degree, f.v);
      acc.degree += f.degree;
    }
    if (neg) coeff = F.neg(coeff);
    if (coeff == 0) continue;
    if (!out.degree) {
      out.degree = acc.degree;
      out.coeffs.assign(A.dim(acc.degree), 0);
    } else if (*out.degree != acc.degree) {
      throw Error("polynomial '" + text + "' is not homogeneous");
    }
    axpy(F, out.coeffs, acc.v, coeff);
  }
  return out;
}

std::string format_element(const GradedAlgebra& A, int degree, std::span<const Scalar> v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    long long c = A.field().to_signed(v[i]);
    long long mag = c < 0 ? -c : c;
    if (out.empty())
      out += c < 0 ? "-" : "";
    else
      out += c < 0 ? " - " : " + ";
    const std::string& l = A.label(degree, i);
    if (l == "1")
      out += std::to_string(mag);
    else
      out += (mag == 1 ? "" : std::to_string(mag) + "*") + l;
  }
  return out.empty() ? "0" : out;
}

}  // namespace fiberres
