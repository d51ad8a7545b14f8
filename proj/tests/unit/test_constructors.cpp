#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "sl2cert/constructors.hpp"
#include "sl2cert/errors.hpp"

using namespace sl2cert;

namespace {

FieldElement c(const TowerPtr& t, long long v) { return FieldElement(t, Integer(v)); }

// The eigenvalue theta of a monodromy with trace tr, on one real branch.
std::complex<double> real_root(long long tr, bool plus) {
  double s = std::sqrt(static_cast<double>(tr * tr - 4));
  return {(static_cast<double>(tr) + (plus ? s : -s)) / 2, 0.0};
}

}  // namespace

TEST(Figure8, TracesAndMu) {
  Figure8Family f = figure8_family();
  const Mat2& A = f.rep.image(intern("A"));
  const Mat2& B = f.rep.image(intern("B"));
  EXPECT_EQ(A.trace(), f.x);
  EXPECT_EQ(B.trace(), f.x);
  EXPECT_EQ((A * B).trace(), f.z);
  EXPECT_TRUE((f.mu * (f.lambda * f.lambda - 1) - (f.lambda * f.z - f.x)).is_zero());
  EXPECT_EQ(B.e11(), f.mu);
  EXPECT_TRUE(B.e12().is_one());
  EXPECT_TRUE(f.rep.word_image(f.longitude).is_diagonal());
  EXPECT_EQ(f.meridian, Word::parse("A"));
  EXPECT_EQ(check_relations(f.rep).status, Status::Certified);
}

TEST(Figure8, DiscreteBranches) {
  for (Branch br : {Branch::Plus, Branch::Minus}) {
    DiscreteFigure8 d = figure8_discrete(br);
    const TowerPtr& t = d.rep.tower();
    FieldElement w = br == Branch::Plus ? d.omega : -d.omega - 1;
    EXPECT_EQ((d.rep.image(intern("A")) * d.rep.image(intern("B"))).trace(), c(t, 2) - w);
    EXPECT_TRUE(d.rep.word_image(figure8_relator_word()).is_identity());
    // sqrt(-3) = 2w + 1 on either branch, so l = (-1, -2 sqrt(-3); 0, -1).
    Mat2 l = d.rep.word_image(d.longitude);
    EXPECT_EQ(l, Mat2(c(t, -1), (w * 2 + 1) * -2, c(t, 0), c(t, -1)));
  }
}

TEST(Figure8, FibredWordsSatisfyRelations) {
  FibredWords fw = figure8_fibred_words();
  // t, a generate <A, B>: A = t, B = t a.
  EXPECT_EQ(fw.t, Word::parse("A"));
  EXPECT_EQ(fw.t * fw.a, Word::parse("B"));
  Figure8Family f = figure8_family();
  DiscreteFigure8 d = figure8_discrete();
  for (const MarkedRep* rep : {&f.rep, &d.rep}) {
    Mat2 T = rep->word_image(fw.t), a = rep->word_image(fw.a), b = rep->word_image(fw.b);
    EXPECT_EQ(T * a * T.inv(), a * b * a);
    EXPECT_EQ(T * b * T.inv(), b * a);
  }
  FibredFigure8 fr = figure8_fibred_rep();
  EXPECT_EQ(check_relations(fr.rep).status, Status::Certified);
  EXPECT_TRUE(fr.spec.automorphism_mode());
}

TEST(TorusBundle, GoldenMonodromy) {
  TorusBundle tb = torus_bundle_rep(2, 1, 1, 1);
  const TowerPtr& t = tb.rep.tower();
  FieldElement theta = FieldElement::theta(t);
  EXPECT_FALSE(tb.abelian);
  EXPECT_EQ(tb.mu * tb.mu, theta);
  EXPECT_EQ(tb.x, tb.mu * tb.mu - 2);
  EXPECT_FALSE(tb.x.in_base());
  EXPECT_EQ(check_relations(tb.rep).status, Status::Certified);
  EXPECT_TRUE(tb.rep.word_image(Word::parse("t*a*t^-1*(a^2*b)^-1")).is_identity());
  EXPECT_TRUE(tb.rep.word_image(Word::parse("t*b*t^-1*(a*b)^-1")).is_identity());
  // Numeric oracle: mu^2 = (3 + sqrt 5)/2 on the larger branch.
  std::complex<double> br = real_root(3, true);
  EXPECT_NEAR(evaluate_numeric(tb.mu * tb.mu, {}, br).real(), (3 + std::sqrt(5.0)) / 2, 1e-12);
}

TEST(TorusBundle, EigenvectorOracle) {
  // (1, x) must be an eigenvector of M with eigenvalue mu^2.
  for (auto m : {std::array<long long, 4>{2, 1, 1, 1}, {5, 1, 4, 1}, {6, 1, 5, 1}, {1, 1, 1, 2}}) {
    TorusBundle tb = torus_bundle_rep(m[0], m[1], m[2], m[3]);
    for (bool plus : {true, false}) {
      std::complex<double> br = real_root(m[0] + m[3], plus);
      std::complex<double> x = evaluate_numeric(tb.x, {}, br);
      std::complex<double> ev = evaluate_numeric(tb.mu * tb.mu, {}, br);
      EXPECT_NEAR(std::abs(static_cast<double>(m[0]) + static_cast<double>(m[1]) * x - ev), 0.0, 1e-9);
      EXPECT_NEAR(std::abs(static_cast<double>(m[2]) + static_cast<double>(m[3]) * x - ev * x), 0.0, 1e-9);
    }
    EXPECT_EQ(check_relations(tb.rep).status, Status::Certified);
  }
}

TEST(TorusBundle, IdentityAndErrors) {
  TorusBundle id = torus_bundle_rep(1, 0, 0, 1);
  EXPECT_TRUE(id.abelian);
  EXPECT_EQ(id.rep.tower()->indeterminates(), (std::vector<std::string>{"x1", "x2"}));
  EXPECT_EQ(check_relations(id.rep).status, Status::Certified);
  EXPECT_THROW(torus_bundle_rep(0, -1, 1, 0), NotHyperbolic);
  EXPECT_THROW(torus_bundle_rep(1, 1, 0, 1), NotHyperbolic);
  EXPECT_THROW(torus_bundle_rep(-1, 0, 0, -1), NotHyperbolic);
  EXPECT_THROW(torus_bundle_rep(0, 1, 1, 0), NotHyperbolic);
  EXPECT_THROW(torus_bundle_rep(2, 0, 0, 1), InvalidSpec);
  EXPECT_THROW(torus_bundle_rep(1, 1, 1, 0), UnsupportedTower);
  EXPECT_THROW(torus_bundle_rep(3, 1, 2, 1), UnsupportedTower);
}

TEST(BaumslagSolitar, RelationsAndTowers) {
  for (long long m : {2, 3, 4, -2, 9, -3}) {
    MarkedRep rep = bs1m_rep(m);
    EXPECT_EQ(check_relations(rep).status, Status::Certified) << m;
    Word rel = Word::parse("t*x*t^-1") * Word::letter(intern("x"), -m);
    EXPECT_TRUE(rep.word_image(rel).is_identity());
  }
  EXPECT_FALSE(bs1m_rep(4).tower()->has_extension());
  EXPECT_TRUE(bs1m_rep(2).tower()->has_extension());
  EXPECT_TRUE(bs1m_rep(-2).tower()->has_extension());
  EXPECT_EQ(bs1m_rep(4).image(intern("t")).e11(), c(bs1m_rep(4).tower(), 2));
  for (long long m : {-1, 0, 1}) EXPECT_THROW(bs1m_rep(m), DegenerateParameter);
}

TEST(GenericFree, Shape) {
  MarkedRep g = generic_free_rep();
  const TowerPtr& t = g.tower();
  FieldElement lam = FieldElement::indeterminate(t, "lambda");
  FieldElement nu = FieldElement::indeterminate(t, "nu");
  EXPECT_EQ(g.image(intern("A")).trace(), lam + lam.inv());
  EXPECT_FALSE(is_constant(g.image(intern("A")).trace()));
  EXPECT_TRUE(g.image(intern("B")).det().is_one());
  // For A diagonal, tr[A, B] = 2 - b12 b21 (lambda - 1/lambda)^2.
  FieldElement tc = commutator(g.image(intern("A")), g.image(intern("B"))).trace();
  EXPECT_FALSE((tc - 2).is_zero());
  EXPECT_EQ(tc, c(t, 2) - nu * (lam - lam.inv()) * (lam - lam.inv()));
  EXPECT_THROW(generic_free_rep(3), InvalidSpec);
  GenericNames n;
  n.a = "C";
  n.b = "D";
  EXPECT_TRUE(generic_free_rep(2, n).has_generator(intern("C")));
}

TEST(FreeProduct, GenericPair) {
  GenericNames n;
  n.a = "C";
  n.b = "D";
  JoinResult j = free_product_join(generic_free_rep(), generic_free_rep(2, n), 2, 2);
  EXPECT_EQ(j.rep.generators().size(), 4u);
  EXPECT_FALSE(j.rep.word_image(Word::parse("A*C")).is_pm_identity());
  // Clashing indeterminates were renamed.
  EXPECT_GE(j.rep.tower()->index_of("lambda_2"), 0);
  EXPECT_GE(j.rep.tower()->index_of("u"), 0);
  ASSERT_EQ(j.reports.size(), 2u);
  EXPECT_EQ(j.reports[1].status, Status::Bounded);
  // 16 distinct syllables of length <= 2 per factor, forms of one or two syllables.
  EXPECT_EQ(j.reports[1].examined, 2 * (16 + 16 * 16));
  EXPECT_FALSE(j.assumptions.empty());
}

TEST(FreeProduct, RejectsTorsion) {
  TowerPtr q = FieldTower::rationals();
  Symbol a = intern("a");
  MarkedRep minus(q, {a}, {{a, Mat2(c(q, -1), c(q, 0), c(q, 0), c(q, -1))}});
  EXPECT_THROW(free_product_join(minus, generic_free_rep(), 2, 2), PreconditionFailed);
  // Order 6: a^3 = -I is a syllable of length 3.
  MarkedRep six(q, {a}, {{a, Mat2(c(q, 0), c(q, -1), c(q, 1), c(q, 1))}});
  EXPECT_THROW(free_product_join(six, generic_free_rep(), 2, 3), BoundedCheckFailed);
  EXPECT_THROW(free_product_join(generic_free_rep(), generic_free_rep(), 2, 2), InvalidSpec);
}

TEST(Amalgam, DoublingGeneric) {
  GenericNames n;
  n.a = "C";
  n.b = "D";
  JoinResult j = amalgam_join(generic_free_rep(), Word::parse("A"), generic_free_rep(2, n), Word::parse("C"), "lambda");
  EXPECT_EQ(j.rep.image(intern("A")), j.rep.image(intern("C")));
  EXPECT_EQ(check_relations(j.rep).status, Status::Certified);
  EXPECT_EQ(j.rep.relators().back(), Word::parse("A*C^-1"));
  AmalgamSpec spec{{intern("A"), intern("B")}, {intern("C"), intern("D")}, Word::parse("A"), Word::parse("C")};
  EXPECT_EQ(faithfulness_scan(j.rep, spec, 4).status, Status::Bounded);
}

TEST(Amalgam, Errors) {
  GenericNames n;
  n.a = "C";
  n.b = "D";
  DiscreteFigure8 d = figure8_discrete();
  EXPECT_THROW(amalgam_join(d.rep, Word::parse("A"), generic_free_rep(2, n), Word::parse("C"), "lambda"),
               NotDiagonalizable);
  EXPECT_THROW(amalgam_join(generic_free_rep(), Word::parse("A"), generic_free_rep(2, n), Word::parse("C"), "mu"),
               SubstitutionImpossible);
  EXPECT_THROW(amalgam_join(generic_free_rep(), Word::parse("A"), generic_free_rep(2, n), Word::parse("C"), "kappa"),
               InvalidSpec);
  // Trace-2 element elsewhere in the first factor.
  TowerPtr t = FieldTower::make({"l"});
  FieldElement l = FieldElement::indeterminate(t, "l");
  Symbol a = intern("A"), b = intern("B");
  MarkedRep bad(t, {a, b}, {{a, Mat2(l, c(t, 0), c(t, 0), l.inv())}, {b, Mat2(c(t, 1), c(t, 1), c(t, 0), c(t, 1))}});
  EXPECT_THROW(amalgam_join(bad, Word::parse("A"), generic_free_rep(2, n), Word::parse("C"), "lambda"), TraceScanFailed);
}

TEST(Hnn, RankOneExtension) {
  HnnConstruction h = hnn_extend(generic_free_rep(), Word::parse("A"));
  EXPECT_TRUE(h.rep.word_image(Word::parse("t*A*t^-1*A^-1")).is_identity());
  EXPECT_TRUE(h.rep.image(intern("t")).is_diagonal());
  EXPECT_EQ(check_relations(h.rep).status, Status::Certified);
  ASSERT_EQ(h.reports.size(), 2u);
  EXPECT_EQ(h.reports[0].status, Status::Bounded);
  EXPECT_EQ(h.reports[1].status, Status::Bounded);
  EXPECT_EQ(h.reports[1].claim, "hnn-invariant");
}

TEST(Hnn, IterateGivesZ3) {
  HnnOptions o;
  o.r_max = 1;
  o.scan_bound = 3;
  HnnConstruction h1 = hnn_extend(generic_free_rep(), Word::parse("A"), Word(), o);
  o.stable = "t2";
  HnnConstruction h2 = hnn_extend(h1.rep, Word::parse("A"), Word(), o);
  EXPECT_EQ(h2.parameter, "x_2");
  const Mat2& A = h2.rep.image(intern("A"));
  const Mat2& t1 = h2.rep.image(intern("t"));
  const Mat2& t2 = h2.rep.image(intern("t2"));
  for (const Mat2* m : {&A, &t1, &t2}) EXPECT_TRUE(m->is_diagonal());
  EXPECT_EQ(A * t1, t1 * A);
  EXPECT_EQ(t1 * t2, t2 * t1);
  EXPECT_EQ(A * t2, t2 * A);
}

TEST(Hnn, DiagonalizesAndConjugates) {
  HnnOptions o;
  o.r_max = 1;
  HnnConstruction h = hnn_extend(generic_free_rep(), Word::parse("B"), Word::parse("A"), o);
  EXPECT_TRUE(h.base.word_image(Word::parse("B")).is_diagonal());
  EXPECT_TRUE(h.base.tower()->has_extension());
  EXPECT_EQ(check_relations(h.rep).status, Status::Certified);
  // t = g s with s diagonal.
  EXPECT_TRUE((h.rep.word_image(Word::parse("A^-1*t"))).is_diagonal());
}

TEST(Hnn, Errors) {
  DiscreteFigure8 d = figure8_discrete();
  EXPECT_THROW(hnn_extend(d.rep, Word::parse("A")), NotDiagonalizable);
  TowerPtr t = FieldTower::make({"l"});
  FieldElement l = FieldElement::indeterminate(t, "l");
  Symbol a = intern("A"), b = intern("B");
  MarkedRep bad(t, {a, b}, {{a, Mat2(l, c(t, 0), c(t, 0), l.inv())}, {b, Mat2(c(t, 1), c(t, 1), c(t, 0), c(t, 1))}});
  EXPECT_THROW(hnn_extend(bad, Word::parse("A")), TraceScanFailed);
  EXPECT_THROW(hnn_extend(generic_free_rep(), Word::parse("A"), Word(), HnnOptions{"A"}), InvalidSpec);
}

TEST(Minsky, Certificates) {
  JoinResult j = minsky_quotient_rep();
  EXPECT_TRUE(j.rep.word_image(Word::parse("A*B*A^-1*B^-1*(C*D*C^-1*D^-1)^-1")).is_identity());
  EXPECT_TRUE(j.rep.word_image(figure8_relator_word()).is_identity());
  EXPECT_FALSE(is_constant(j.rep.word_image(Word::parse("A*B*A^-1*B^-1")).trace()));
  for (Symbol s : j.rep.generators()) EXPECT_FALSE(j.rep.image(s).is_pm_identity());
  for (const Report& r : j.reports) {
    EXPECT_NE(r.status, Status::Refuted) << r.claim;
    EXPECT_TRUE(reverify(r)) << r.claim;
  }
}
