#include "sl2cert/json_io.hpp"

#include "sl2cert/errors.hpp"

namespace sl2cert::json_io {

namespace {

// Runs a parser body, turning structural JSON errors into ParseError.
template <typename F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

int tower_vars(const TowerPtr& t) { return t->size(); }

}  // namespace

const TowerPtr& TowerTable::get(const std::string& id) const {
  auto it = towers_.find(id);
  if (it == towers_.end()) throw ParseError("unknown tower id '" + id + "'");
  return it->second;
}

Json to_json(const Polynomial& p, int nvars) {
  Json out = Json::array();
  for (const Term& t : p.terms()) {
    Json exps = Json::array();
    for (int v = 0; v < nvars; ++v) exps.push_back(t.mono.exp(v));
    out.push_back(Json::array({exps, t.coef.to_string()}));
  }
  return out;
}

Polynomial polynomial_from_json(const Json& j, int nvars) {
  return guarded("polynomial", [&] {
    if (!j.is_array()) throw ParseError("polynomial must be a list of terms");
    std::vector<Term> terms;
    for (const Json& t : j) {
      if (!t.is_array() || t.size() != 2) throw ParseError("term must be [exponents, coefficient]");
      const Json& e = t[0];
      if (!e.is_array() || static_cast<int>(e.size()) != nvars) {
        throw ParseError("exponent vector must have " + std::to_string(nvars) + " entries");
      }
      Monomial m;
      for (int v = 0; v < nvars; ++v) {
        long long x = e[static_cast<size_t>(v)].get<long long>();
        if (x < 0 || x > 0xffff) throw ParseError("exponent out of range");
        m.set_exp(v, static_cast<unsigned>(x));
      }
      terms.push_back({m, Integer::from_string(t[1].get<std::string>())});
    }
    return Polynomial::from_terms(std::move(terms));
  });
}

Json to_json(const RationalFunction& r, int nvars) {
  return Json{{"num", to_json(r.num(), nvars)}, {"den", to_json(r.den(), nvars)}};
}

RationalFunction rational_function_from_json(const Json& j, int nvars) {
  Polynomial num = polynomial_from_json(field(j, "num"), nvars);
  Polynomial den = polynomial_from_json(field(j, "den"), nvars);
  if (den.is_zero()) throw ParseError("zero denominator");
  return RationalFunction(num, den);
}

Json to_json(const FieldTower& t) {
  Json out;
  out["id"] = t.id();
  out["indeterminates"] = t.indeterminates();
  if (t.has_extension()) {
    const auto& e = t.extension();
    out["extension"] = Json{{"name", e.name}, {"p", to_json(e.p, t.size())}, {"q", to_json(e.q, t.size())}};
  } else {
    out["extension"] = nullptr;
  }
  return out;
}

TowerPtr tower_from_json(const Json& j) {
  return guarded("tower", [&] {
    auto names = field(j, "indeterminates").get<std::vector<std::string>>();
    int n = static_cast<int>(names.size());
    std::optional<FieldTower::Extension> ext;
    const Json& e = field(j, "extension");
    if (!e.is_null()) {
      ext = FieldTower::Extension{field(e, "name").get<std::string>(), rational_function_from_json(field(e, "p"), n),
                                  rational_function_from_json(field(e, "q"), n)};
    }
    TowerPtr t;
    try {
      t = FieldTower::make(names, ext);
    } catch (const Error& err) {
      throw ParseError(std::string("invalid tower: ") + err.what());
    }
    if (t->id() != field(j, "id").get<std::string>()) throw ParseError("tower id does not match its structure");
    return t;
  });
}

Json to_json(const FieldElement& u) {
  int n = tower_vars(u.tower());
  return Json{{"a", to_json(u.a(), n)}, {"b", to_json(u.b(), n)}, {"tower", u.tower()->id()}};
}

FieldElement element_from_json(const Json& j, const TowerTable& towers) {
  return guarded("element", [&] {
    const TowerPtr& t = towers.get(field(j, "tower").get<std::string>());
    int n = tower_vars(t);
    RationalFunction a = rational_function_from_json(field(j, "a"), n);
    RationalFunction b = rational_function_from_json(field(j, "b"), n);
    if (!b.is_zero() && !t->has_extension()) throw ParseError("theta part in a tower without extension");
    return FieldElement(t, a, b);
  });
}

Json to_json(const Mat2& m) {
  Json out = Json::array();
  for (int i = 0; i < 4; ++i) out.push_back(to_json(m.entry(i)));
  return out;
}

Mat2 mat_from_json(const Json& j, const TowerTable& towers) {
  if (!j.is_array() || j.size() != 4) throw ParseError("matrix must list four entries");
  try {
    return Mat2(element_from_json(j[0], towers), element_from_json(j[1], towers), element_from_json(j[2], towers),
                element_from_json(j[3], towers));
  } catch (const NotUnimodular& e) {
    throw ParseError(std::string("matrix is not unimodular: ") + e.what());
  }
}

Json to_json(const MarkedRep& rep) {
  Json out;
  out["type"] = "MarkedRep";
  out["tower"] = to_json(*rep.tower());
  Json gens = Json::array();
  for (Symbol s : rep.generators()) gens.push_back(symbol_name(s));
  out["generators"] = gens;
  Json imgs = Json::object();
  for (Symbol s : rep.generators()) imgs[symbol_name(s)] = to_json(rep.image(s));
  out["images"] = imgs;
  Json rels = Json::array();
  for (const Word& w : rep.relators()) rels.push_back(w.to_string());
  out["relators"] = rels;
  return out;
}

MarkedRep rep_from_json(const Json& j) {
  return guarded("MarkedRep", [&] {
    if (field(j, "type").get<std::string>() != "MarkedRep") throw ParseError("document is not a MarkedRep");
    TowerTable towers;
    TowerPtr t = tower_from_json(field(j, "tower"));
    towers.add(t);
    std::vector<Symbol> gens;
    std::map<Symbol, Mat2> imgs;
    const Json& images = field(j, "images");
    for (const Json& g : field(j, "generators")) {
      Symbol s = intern(g.get<std::string>());
      if (imgs.count(s) != 0) throw ParseError("duplicate generator '" + g.get<std::string>() + "'");
      gens.push_back(s);
      imgs.emplace(s, mat_from_json(field(images, symbol_name(s).c_str()), towers));
    }
    if (images.size() != gens.size()) throw ParseError("images do not match the generator list");
    std::vector<Word> rels;
    for (const Json& r : field(j, "relators")) rels.push_back(Word::parse(r.get<std::string>()));
    return MarkedRep(t, gens, imgs, rels);
  });
}

Status status_from_name(const std::string& name) {
  for (Status s : {Status::Certified, Status::Refuted, Status::Bounded}) {
    if (name == status_name(s)) return s;
  }
  throw ParseError("unknown status '" + name + "'");
}

Json to_json(const Report& r) {
  Json out;
  out["type"] = "Report";
  out["claim"] = r.claim;
  out["status"] = status_name(r.status);
  out["bound"] = r.bound;
  out["examined"] = r.examined;
  Json params = Json::object();
  for (const auto& [k, v] : r.parameters) params[k] = v;
  out["parameters"] = params;
  out["notes"] = r.notes;
  std::map<std::string, const FieldTower*> towers;
  Json ws = Json::array();
  for (const Witness& w : r.witnesses) {
    Json jw;
    jw["label"] = w.label;
    jw["property"] = w.property;
    if (w.element) {
      jw["element"] = to_json(*w.element);
      towers.emplace(w.element->tower()->id(), w.element->tower().get());
    }
    if (w.matrix) {
      jw["matrix"] = to_json(*w.matrix);
      towers.emplace(w.matrix->tower()->id(), w.matrix->tower().get());
    }
    if (!w.lhs.empty()) jw["lhs"] = w.lhs;
    if (!w.rhs.empty()) jw["rhs"] = w.rhs;
    ws.push_back(jw);
  }
  Json jt = Json::array();
  for (const auto& [id, t] : towers) jt.push_back(to_json(*t));
  out["towers"] = jt;
  out["witnesses"] = ws;
  return out;
}

Report report_from_json(const Json& j) {
  return guarded("Report", [&] {
    if (field(j, "type").get<std::string>() != "Report") throw ParseError("document is not a Report");
    Report r;
    r.claim = field(j, "claim").get<std::string>();
    r.status = status_from_name(field(j, "status").get<std::string>());
    r.bound = field(j, "bound").get<int>();
    r.examined = field(j, "examined").get<long long>();
    for (const auto& [k, v] : field(j, "parameters").items()) r.parameters[k] = v.get<std::string>();
    r.notes = field(j, "notes").get<std::vector<std::string>>();
    TowerTable towers;
    for (const Json& t : field(j, "towers")) towers.add(tower_from_json(t));
    for (const Json& jw : field(j, "witnesses")) {
      Witness w;
      w.label = field(jw, "label").get<std::string>();
      w.property = field(jw, "property").get<std::string>();
      if (jw.contains("element")) w.element = element_from_json(jw.at("element"), towers);
      if (jw.contains("matrix")) w.matrix = mat_from_json(jw.at("matrix"), towers);
      if (jw.contains("lhs")) w.lhs = jw.at("lhs").get<std::string>();
      if (jw.contains("rhs")) w.rhs = jw.at("rhs").get<std::string>();
      r.witnesses.push_back(std::move(w));
    }
    return r;
  });
}

std::string dump(const Json& j) { return j.dump(2); }

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace sl2cert::json_io
