#include "fiberres/io.hpp"

#include <fstream>

namespace fiberres {

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

namespace {

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

AlgebraPtr parse_table(const Json& a, int cap, const PrimeField& F) {
  std::vector<std::vector<std::string>> labels;
  for (const auto& row : member(a, "basis")) labels.push_back(row.get<std::vector<std::string>>());
  if (static_cast<int>(labels.size()) > cap + 1) labels.resize(cap + 1);
  while (static_cast<int>(labels.size()) < cap + 1) labels.emplace_back();
  auto A = std::make_shared<GradedAlgebra>(F, cap, std::move(labels));
  if (a.contains("mult"))
    for (const auto& e : a.at("mult")) {
      auto x = A->find_label(member(e, "a").get<std::string>());
      auto y = A->find_label(member(e, "b").get<std::string>());
      if (!x || !y) throw Error("table product names an unknown basis element");
      if (x->first + y->first > cap) continue;
      Vec c;
      for (long long v : member(e, "c").get<std::vector<long long>>()) c.push_back(F.from_int(v));
      if (c.size() != A->dim(x->first + y->first)) throw Error("table product has the wrong length");
      A->set_product(x->first, x->second, y->first, y->second, c);
    }
  if (a.contains("internal")) A->set_internal_degrees(a.at("internal").get<std::vector<std::vector<int>>>());
  if (auto bad = A->check_laws()) throw Error("table algebra: " + *bad);
  return A;
}

}  // namespace

AlgebraInput parse_algebra(const Json& j) {
  try {
    std::uint32_t p = default_characteristic();
    if (j.contains("field")) p = member(j.at("field"), "char").get<std::uint32_t>();
    PrimeField F(p);
    const int cap = member(j, "cap").get<int>();
    if (cap < 0) throw Error("cap must be non-negative");
    const Json& a = member(j, "algebra");
    const std::string kind = member(a, "kind").get<std::string>();
    AlgebraInput in;
    if (kind == "monomial_quotient") {
      MonomialQuotientPresentation pres;
      for (const auto& v : member(a, "vars"))
        pres.vars.push_back({member(v, "name").get<std::string>(), v.value("deg", 1)});
      if (a.contains("rels")) pres.relations = a.at("rels").get<std::vector<std::string>>();
      pres.commutative = a.value("commutative", true);
      in.algebra = build_monomial_quotient(pres, cap, F);
      in.global_dimension_one = presentation_has_global_dimension_one(pres);
      in.presentation = std::move(pres);
    } else if (kind == "table") {
      in.algebra = parse_table(a, cap, F);
    } else {
      throw Error("unknown algebra kind \"" + kind + "\"");
    }
    return in;
  } catch (const Json::exception& e) {
    throw Error(std::string("algebra input: ") + e.what());
  }
}

Json algebra_to_json(const GradedAlgebra& A) {
  Json basis = Json::array(), mult = Json::array(), internal = Json::array();
  for (int d = 0; d <= A.cap(); ++d) {
    basis.push_back(A.labels(d));
    Json w = Json::array();
    for (std::size_t i = 0; i < A.dim(d); ++i) w.push_back(A.internal_degree(d, i));
    internal.push_back(w);
  }
  const PrimeField& F = A.field();
  for (int m = 1; m <= A.cap(); ++m)
    for (int n = 1; m + n <= A.cap(); ++n)
      for (std::size_t i = 0; i < A.dim(m); ++i)
        for (std::size_t k = 0; k < A.dim(n); ++k) {
          auto v = A.product(m, i, n, k);
          if (is_zero(v)) continue;
          Json c = Json::array();
          for (Scalar x : v) c.push_back(F.to_signed(x));
          mult.push_back({{"a", A.label(m, i)}, {"b", A.label(n, k)}, {"c", c}});
        }
  Json a{{"kind", "table"}, {"basis", basis}, {"mult", mult}};
  if (A.has_internal_degrees()) a["internal"] = internal;
  return Json{{"field", {{"char", F.characteristic()}}}, {"cap", A.cap()}, {"algebra", a}};
}

ModulePtr parse_module(const Json& j, const AlgebraPtr& A) {
  try {
    const int hi = j.value("hi", A->cap());
    if (hi < 0 || hi > A->cap()) throw Error("module hi must lie in 0..cap");
    const std::string kind = member(j, "kind").get<std::string>();
    if (kind == "residue") return residue_module(A, hi, j.value("rank", std::size_t{1}));
    if (kind == "free") return free_module(A, member(j, "gens").get<std::vector<int>>(), hi);
    if (kind == "coker") {
      auto rows = member(j, "matrix").get<std::vector<std::vector<std::string>>>();
      std::vector<int> degs = j.contains("degrees") ? j.at("degrees").get<std::vector<int>>()
                                                    : std::vector<int>(rows.size(), 0);
      std::optional<std::vector<int>> src;
      if (j.contains("source_degrees")) src = j.at("source_degrees").get<std::vector<int>>();
      return cokernel_module(algebra_matrix(A, rows, degs, src, hi));
    }
    throw Error("unknown module kind \"" + kind + "\"");
  } catch (const Json::exception& e) {
    throw Error(std::string("module input: ") + e.what());
  }
}

Json series_to_json(const PowerSeries& s) {
  Json c = Json::array();
  for (const auto& x : s.coeffs()) c.push_back(x.str());
  return Json{{"coeffs", c}, {"truncation", s.truncation()}};
}

PowerSeries parse_series(const Json& j) {
  try {
    std::vector<BigInt> c;
    for (const auto& x : member(j, "coeffs")) c.emplace_back(x.is_string() ? x.get<std::string>() : x.dump());
    const auto t = member(j, "truncation").get<std::size_t>();
    if (c.size() < t + 1) throw Error("series has fewer coefficients than its truncation");
    c.resize(t + 1);
    return PowerSeries(std::move(c), t);
  } catch (const Json::exception& e) {
    throw Error(std::string("series input: ") + e.what());
  } catch (const std::runtime_error& e) {
    throw Error(std::string("series input: ") + e.what());
  }
}

Json betti_to_json(const BettiTable& b) {
  Json rows = Json::array();
  for (int i = 0; i <= b.hmax; ++i) rows.push_back(b.b[i]);
  Json totals = Json::array();
  for (int i = 0; i <= b.hmax; ++i) totals.push_back(b.row_total(i));
  return Json{{"hmax", b.hmax}, {"dmax", b.dmax}, {"totals", totals}, {"table", rows}};
}

Json checks_to_json(const std::vector<Check>& checks) {
  Json a = Json::array();
  for (const auto& c : checks) {
    Json o{{"name", c.name}, {"status", status_name(c.status)}};
    if (!c.detail.empty()) o["detail"] = c.detail;
    a.push_back(o);
  }
  return a;
}

Json matrix_to_json(const PrimeField& F, const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(F.to_signed(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

Matrix parse_matrix(const PrimeField& F, const Json& j) {
  auto rows = j.get<std::vector<std::vector<long long>>>();
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error("ragged matrix");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = F.from_int(rows[r][c]);
  }
  return m;
}

}  // namespace fiberres
