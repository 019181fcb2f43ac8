#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "fiberres/check.hpp"
#include "fiberres/resolve.hpp"

namespace fiberres {

using Json = nlohmann::ordered_json;

Json read_json_file(const std::filesystem::path& path);

struct AlgebraInput {
  AlgebraPtr algebra;
  std::optional<MonomialQuotientPresentation> presentation;  // monomial_quotient inputs only
  bool global_dimension_one = false;                          // certified by the presentation
};

/// {"field":{"char":p},"cap":n,"algebra":{...}}; "field" falls back to
/// default_characteristic(). The algebra is a monomial_quotient or a table.
AlgebraInput parse_algebra(const Json& j);
/// Table form of any algebra, readable by parse_algebra.
Json algebra_to_json(const GradedAlgebra& A);

/// {"kind":"residue"[,"rank":r]}, {"kind":"free","gens":[...]} or
/// {"kind":"coker","matrix":[[...]][,"degrees":[...]]}; modules live in
/// degrees 0..hi with hi = "hi" if given, else the algebra's cap.
ModulePtr parse_module(const Json& j, const AlgebraPtr& A);

/// {"coeffs":["1","2",...],"truncation":n}
Json series_to_json(const PowerSeries& s);
PowerSeries parse_series(const Json& j);

Json betti_to_json(const BettiTable& b);
Json checks_to_json(const std::vector<Check>& checks);
Json matrix_to_json(const PrimeField& F, const Matrix& m);
Matrix parse_matrix(const PrimeField& F, const Json& j);

}  // namespace fiberres
