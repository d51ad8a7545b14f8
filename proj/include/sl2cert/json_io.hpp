#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "sl2cert/sl2.hpp"
#include "sl2cert/verifiers.hpp"

namespace sl2cert::json_io {

using Json = nlohmann::ordered_json;

/// Resolves tower ids while parsing. Towers are registered as they are read.
class TowerTable {
 public:
  void add(const TowerPtr& t) { towers_.emplace(t->id(), t); }
  /// Throws ParseError for an unknown id.
  const TowerPtr& get(const std::string& id) const;
  const std::map<std::string, TowerPtr>& all() const { return towers_; }

 private:
  std::map<std::string, TowerPtr> towers_;
};

/// Terms as [[e0, ..., e_{n-1}], "coef"] in canonical (decreasing grlex) order.
Json to_json(const Polynomial& p, int nvars);
Polynomial polynomial_from_json(const Json& j, int nvars);

Json to_json(const RationalFunction& r, int nvars);
RationalFunction rational_function_from_json(const Json& j, int nvars);

/// {id, indeterminates, extension: {name, p, q} | null}.
Json to_json(const FieldTower& t);
/// Rebuilds the tower; throws ParseError when the stored id disagrees.
TowerPtr tower_from_json(const Json& j);

/// {a, b, tower}: the element a + b*theta with a, b rational functions.
Json to_json(const FieldElement& u);
FieldElement element_from_json(const Json& j, const TowerTable& towers);

/// Row-major list of four elements.
Json to_json(const Mat2& m);
Mat2 mat_from_json(const Json& j, const TowerTable& towers);

/// {type: "MarkedRep", tower, generators, images, relators}.
Json to_json(const MarkedRep& rep);
MarkedRep rep_from_json(const Json& j);

/// {type: "Report", claim, status, bound, examined, parameters, notes,
/// towers, witnesses}. Every tower used by a witness is listed under towers.
Json to_json(const Report& r);
Report report_from_json(const Json& j);

Status status_from_name(const std::string& name);

/// Serialization used everywhere for byte-stable output.
std::string dump(const Json& j);
/// Parses text; malformed JSON raises ParseError.
Json parse(const std::string& text);

}  // namespace sl2cert::json_io
