#include <gtest/gtest.h>

#include "sl2cert/constructors.hpp"
#include "sl2cert/errors.hpp"
#include "sl2cert/json_io.hpp"

using namespace sl2cert;
using namespace sl2cert::json_io;

namespace {

void expect_same_rep(const MarkedRep& a, const MarkedRep& b) {
  EXPECT_EQ(a.tower()->id(), b.tower()->id());
  EXPECT_EQ(a.generators(), b.generators());
  for (Symbol s : a.generators()) EXPECT_EQ(a.image(s), b.image(s));
  EXPECT_EQ(a.relators(), b.relators());
}

}  // namespace

TEST(JsonIo, PolynomialTermsAreCanonical) {
  Polynomial x = Polynomial::variable(0), y = Polynomial::variable(1);
  Polynomial p = x * x * Polynomial(3) - y + Polynomial(Integer::from_string("123456789012345678901234567890"));
  Json j = to_json(p, 2);
  EXPECT_EQ(j.dump(), R"([[[2,0],"3"],[[0,1],"-1"],[[0,0],"123456789012345678901234567890"]])");
  EXPECT_EQ(polynomial_from_json(j, 2), p);
  // Unsorted input with duplicate monomials is normalized.
  Json messy = Json::parse(R"([[[0,1],"2"],[[2,0],"3"],[[0,1],"-3"],[[0,0],"0"]])");
  EXPECT_EQ(polynomial_from_json(messy, 2), x * x * Polynomial(3) - y);
  EXPECT_THROW(polynomial_from_json(Json::parse(R"([[[1],"2"]])"), 2), ParseError);
  EXPECT_THROW(polynomial_from_json(Json::parse(R"([[[1,0],"2x"]])"), 2), ParseError);
  EXPECT_THROW(polynomial_from_json(Json::parse(R"([[[1,0],2]])"), 2), ParseError);
}

TEST(JsonIo, TowerRoundTrip) {
  for (const TowerPtr& t : {figure8_family().rep.tower(), figure8_discrete().rep.tower(), FieldTower::rationals(),
                            generic_free_rep().tower()}) {
    Json j = to_json(*t);
    TowerPtr back = tower_from_json(j);
    EXPECT_TRUE(back->same_as(*t));
    EXPECT_EQ(dump(to_json(*back)), dump(j));
  }
  Json j = to_json(*figure8_discrete().rep.tower());
  j["id"] = "0000";
  EXPECT_THROW(tower_from_json(j), ParseError);
  // A reducible extension is rejected as malformed input.
  Json red = Json::parse(R"({"id":"x","indeterminates":[],"extension":{"name":"s","p":{"num":[],"den":[[[],"1"]]},"q":{"num":[[[],"4"]],"den":[[[],"1"]]}}})");
  EXPECT_THROW(tower_from_json(red), ParseError);
}

TEST(JsonIo, ElementAndMatrixRoundTrip) {
  Figure8Family f = figure8_family();
  TowerTable tt;
  tt.add(f.rep.tower());
  for (const FieldElement& u : {f.mu, f.z, f.x.inv(), f.mu * f.z - f.lambda, FieldElement(f.rep.tower())}) {
    Json j = to_json(u);
    FieldElement back = element_from_json(j, tt);
    EXPECT_EQ(back, u);
    EXPECT_EQ(dump(to_json(back)), dump(j));
  }
  Mat2 b = f.rep.image(intern("B"));
  EXPECT_EQ(mat_from_json(to_json(b), tt), b);
  Json bad = to_json(b);
  bad[1] = to_json(f.z);
  EXPECT_THROW(mat_from_json(bad, tt), ParseError);
  Json other = to_json(f.mu);
  other["tower"] = "nope";
  EXPECT_THROW(element_from_json(other, tt), ParseError);
}

TEST(JsonIo, RepRoundTrip) {
  std::vector<MarkedRep> reps{figure8_family().rep, figure8_discrete(Branch::Minus).rep, torus_bundle_rep(2, 1, 1, 1).rep,
                              bs1m_rep(3), generic_free_rep(), minsky_quotient_rep(4).rep};
  for (const MarkedRep& r : reps) {
    std::string text = dump(to_json(r));
    MarkedRep back = rep_from_json(parse(text));
    expect_same_rep(r, back);
    EXPECT_EQ(dump(to_json(back)), text);
  }
  Json j = to_json(bs1m_rep(3));
  j["type"] = "Report";
  EXPECT_THROW(rep_from_json(j), ParseError);
  Json missing = to_json(bs1m_rep(3));
  missing["images"].erase("t");
  EXPECT_THROW(rep_from_json(missing), ParseError);
  EXPECT_THROW(parse("{not json"), ParseError);
}

TEST(JsonIo, ReportRoundTripReverifies) {
  std::vector<Report> reports{check_relations(figure8_family().rep),
                              trace_pm2_scan(figure8_discrete().rep, 2),
                              gluing_obstruction(-2, 2),
                              triple_hnn_obstruction(),
                              ct_scan_bs1m(-1, 3),
                              commutator_equation_search(2, 1, 2),
                              lyndon_equation_scan(2)};
  for (const Report& r : reports) {
    std::string text = dump(to_json(r));
    Report back = report_from_json(parse(text));
    EXPECT_EQ(back.claim, r.claim);
    EXPECT_EQ(back.status, r.status);
    EXPECT_EQ(back.parameters, r.parameters);
    EXPECT_EQ(back.witnesses.size(), r.witnesses.size());
    EXPECT_TRUE(reverify(back)) << r.claim;
    EXPECT_EQ(dump(to_json(back)), text);
  }
  Json j = to_json(triple_hnn_obstruction());
  j["status"] = "maybe";
  EXPECT_THROW(report_from_json(j), ParseError);
}
