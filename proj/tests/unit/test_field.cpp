#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "sl2cert/errors.hpp"
#include "sl2cert/field.hpp"

using namespace sl2cert;

namespace {

// Q(lambda)[z]/(z^2 - (1+x^2) z + 2x^2 - 1), x = lambda + 1/lambda.
TowerPtr figure8_tower() {
  Polynomial l = Polynomial::variable(0);
  Polynomial l2 = l * l;
  RationalFunction p(l2 * l2 + 3 * l2 + 1, l2);
  RationalFunction q(-2 * l2 * l2 - 3 * l2 - 2, l2);
  return FieldTower::make({"lambda"}, FieldTower::Extension{"z", p, q});
}

FieldElement random_element(std::mt19937_64& rng, const TowerPtr& t, bool with_theta) {
  std::uniform_int_distribution<int> dc(-4, 4);
  auto rpoly = [&](int terms) {
    std::vector<Term> ts;
    for (int i = 0; i < terms; ++i) {
      Monomial m;
      for (int v = 0; v < t->size(); ++v) m.set_exp(v, static_cast<unsigned>(rng() % 3));
      ts.push_back({m, Integer(dc(rng))});
    }
    return Polynomial::from_terms(ts);
  };
  Polynomial d = rpoly(2);
  if (d.is_zero()) d = Polynomial(1);
  return FieldElement::from_parts(t, rpoly(3), with_theta ? rpoly(2) : Polynomial(0), d);
}

}  // namespace

TEST(FieldArith, PolynomialCancellation) {
  TowerPtr t = FieldTower::make({"lambda"});
  FieldElement l = FieldElement::indeterminate(t, "lambda");
  FieldElement r = (l * l - 1) / (l - 1);
  EXPECT_EQ(r, l + 1);
  EXPECT_TRUE(r.D().is_one());
}

TEST(FieldArith, ZSquaredReducesByMinimalPolynomial) {
  TowerPtr t = figure8_tower();
  FieldElement l = FieldElement::indeterminate(t, "lambda");
  FieldElement x = l + l.inv();
  FieldElement z = FieldElement::theta(t);
  FieldElement expect = (x * x + 1) * z - x * x * FieldElement(t, Integer(2)) + 1;
  EXPECT_EQ(z * z, expect);
}

TEST(FieldArith, OmegaMinimalPolynomial) {
  TowerPtr t = FieldTower::make({}, FieldTower::Extension{"omega", RationalFunction(-1), RationalFunction(-1)});
  FieldElement w = FieldElement::theta(t);
  EXPECT_TRUE((w * w + w + 1).is_zero());
  EXPECT_EQ(w.pow(3), FieldElement(t, Integer(1)));
  EXPECT_EQ(w.inv(), -w - 1);
}

TEST(FieldArith, DivisionByZeroAndTowerMismatch) {
  TowerPtr t = figure8_tower();
  TowerPtr s = FieldTower::make({"lambda"});
  FieldElement z = FieldElement::theta(t);
  EXPECT_THROW(z / FieldElement(t), DivisionByZero);
  EXPECT_THROW(FieldElement(t).inv(), DivisionByZero);
  EXPECT_THROW(z + FieldElement::indeterminate(s, "lambda"), TowerMismatch);
}

TEST(FieldTowerTest, RejectsReducibleAndSecondExtension) {
  // theta^2 = 4 is reducible over Q.
  EXPECT_THROW(FieldTower::make({}, FieldTower::Extension{"t", RationalFunction(0), RationalFunction(4)}),
               ReducibleExtension);
  // theta^2 = 2 theta - 1 has a double root.
  EXPECT_THROW(FieldTower::make({}, FieldTower::Extension{"t", RationalFunction(2), RationalFunction(-1)}),
               ReducibleExtension);
  // theta^2 = lambda^2 is reducible over Q(lambda).
  Polynomial l = Polynomial::variable(0);
  EXPECT_THROW(FieldTower::make({"lambda"}, FieldTower::Extension{"t", RationalFunction(0), RationalFunction(l * l)}),
               ReducibleExtension);
  TowerPtr t = figure8_tower();
  EXPECT_THROW(t->with_extension("w", RationalFunction(-1), RationalFunction(-1)), UnsupportedTower);
  EXPECT_THROW(FieldTower::make({"a", "a"}), InvalidSpec);
}

TEST(FieldTowerTest, IdIsDeterministic) {
  EXPECT_EQ(figure8_tower()->id(), figure8_tower()->id());
  EXPECT_NE(figure8_tower()->id(), FieldTower::make({"lambda"})->id());
}

TEST(Substitute, SquareUnderRename) {
  TowerPtr t = FieldTower::make({"lambda", "mu"});
  FieldElement mu = FieldElement::indeterminate(t, "mu");
  FieldElement l = FieldElement::indeterminate(t, "lambda");
  EXPECT_EQ(substitute(mu * mu, {{"mu", l}}, t), l * l);
}

TEST(Substitute, IdentityIsIdentity) {
  TowerPtr t = figure8_tower();
  FieldElement l = FieldElement::indeterminate(t, "lambda");
  FieldElement x = l + l.inv();
  FieldElement z = FieldElement::theta(t);
  FieldElement mu = (l * z - x) / (l * l - 1);
  EXPECT_EQ(substitute(mu, {{"lambda", l}}, t), mu);
  EXPECT_EQ(substitute(mu, {}, t), mu);
}

TEST(Substitute, MuPlusInverseBecomesX) {
  TowerPtr t = FieldTower::make({"lambda", "mu"});
  FieldElement mu = FieldElement::indeterminate(t, "mu");
  FieldElement l = FieldElement::indeterminate(t, "lambda");
  FieldElement lhs = substitute(mu + mu.inv(), {{"mu", l}}, t);
  FieldElement x = l + l.inv();
  EXPECT_EQ(lhs, x);
  EXPECT_EQ(lhs.A(), x.A());
  EXPECT_EQ(lhs.D(), x.D());
}

TEST(Substitute, DenominatorVanishes) {
  TowerPtr t = FieldTower::make({"lambda"});
  FieldElement l = FieldElement::indeterminate(t, "lambda");
  EXPECT_THROW(substitute((l - 1).inv(), {{"lambda", FieldElement(t, Integer(1))}}, t), DenominatorVanishes);
}

TEST(Substitute, ThetaConjugation) {
  TowerPtr t = FieldTower::make({}, FieldTower::Extension{"omega", RationalFunction(-1), RationalFunction(-1)});
  FieldElement w = FieldElement::theta(t);
  FieldElement u = w * 3 + 2;
  EXPECT_EQ(substitute(u, {{"omega", -w - 1}}, t), u.conjugate());
  EXPECT_THROW(substitute(u, {{"omega", w + 1}}, t), TowerMismatch);
}

TEST(EvaluateNumeric, Basics) {
  TowerPtr s = FieldTower::make({"lambda"});
  FieldElement l = FieldElement::indeterminate(s, "lambda");
  EXPECT_NEAR(evaluate_numeric(l + l.inv(), {{"lambda", 2.0}}).real(), 2.5, 1e-15);
  EXPECT_THROW(evaluate_numeric(l.inv(), {{"lambda", 0.0}}), DenominatorNearZero);

  TowerPtr t = figure8_tower();
  FieldElement z = FieldElement::theta(t);
  // lambda = 1 gives x = 2.
  std::complex<double> br(2.5, std::sqrt(3.0) / 2.0);
  std::complex<double> v = evaluate_numeric(z, {{"lambda", 1.0}}, br);
  EXPECT_NEAR(v.real(), 2.5, 1e-12);
  EXPECT_NEAR(v.imag(), 0.8660254, 1e-7);
  EXPECT_THROW(evaluate_numeric(z, {{"lambda", 1.0}}, {2.0, 0.0}), InvalidSpec);
}

TEST(EvaluateNumeric, MuAgainstRootSolve) {
  TowerPtr t = figure8_tower();
  FieldElement l = FieldElement::indeterminate(t, "lambda");
  FieldElement x = l + l.inv();
  FieldElement z = FieldElement::theta(t);
  FieldElement mu = (l * z - x) / (l * l - 1);
  // Independent oracle: roots of z^2 - (1+x^2) z + 2x^2 - 1 at x = 10/3.
  double xv = 10.0 / 3.0;
  double b = 1 + xv * xv;
  double c = 2 * xv * xv - 1;
  double disc = b * b - 4 * c;
  double zr = (b + std::sqrt(disc)) / 2.0;
  double expect = (3.0 * zr - xv) / 8.0;
  std::complex<double> got = evaluate_numeric(mu, {{"lambda", 3.0}}, zr);
  EXPECT_NEAR(got.real(), expect, 1e-9);
  EXPECT_NEAR(got.imag(), 0.0, 1e-12);
}

TEST(FieldProperties, AxiomsOnRandomElements) {
  std::mt19937_64 rng(11);
  TowerPtr t = figure8_tower();
  TowerPtr m = FieldTower::make({"a", "b"}, FieldTower::Extension{"th", RationalFunction(Polynomial::variable(0)),
                                                                  RationalFunction(Polynomial::variable(1))});
  for (const TowerPtr& tw : {t, m}) {
    for (int i = 0; i < 25; ++i) {
      FieldElement u = random_element(rng, tw, true);
      FieldElement v = random_element(rng, tw, true);
      FieldElement w = random_element(rng, tw, i % 2 == 0);
      EXPECT_EQ((u + v) + w, u + (v + w));
      EXPECT_EQ((u * v) * w, u * (v * w));
      EXPECT_EQ(u * (v + w), u * v + u * w);
      EXPECT_EQ(u - u, FieldElement(tw));
      if (!u.is_zero()) {
        EXPECT_TRUE((u * u.inv()).is_one());
      }
      FieldElement z = u + FieldElement(tw);
      EXPECT_EQ(z.A(), u.A());
      EXPECT_EQ(z.B(), u.B());
      EXPECT_EQ(z.D(), u.D());
    }
  }
}

TEST(FieldProperties, SubstitutionComposes) {
  std::mt19937_64 rng(5);
  TowerPtr t = FieldTower::make({"a", "b"});
  FieldElement a = FieldElement::indeterminate(t, "a");
  FieldElement b = FieldElement::indeterminate(t, "b");
  int done = 0;
  while (done < 100) {
    FieldElement u = random_element(rng, t, false);
    Substitution s1{{"a", random_element(rng, t, false)}, {"b", random_element(rng, t, false)}};
    Substitution s2{{"a", a * b + 1}, {"b", a - 2}};
    Substitution comp;
    try {
      for (auto& [k, v] : s1) comp[k] = substitute(v, s2, t);
      FieldElement lhs = substitute(substitute(u, s1, t), s2, t);
      FieldElement rhs = substitute(u, comp, t);
      EXPECT_EQ(lhs, rhs);
      ++done;
    } catch (const DenominatorVanishes&) {
      continue;
    } catch (const DivisionByZero&) {
      continue;
    }
  }
}

TEST(FieldProperties, NumericCommutesWithArithmetic) {
  std::mt19937_64 rng(9);
  TowerPtr t = figure8_tower();
  std::uniform_real_distribution<double> ud(1.3, 3.0);
  int checked = 0;
  for (int i = 0; i < 60; ++i) {
    FieldElement u = random_element(rng, t, true);
    FieldElement v = random_element(rng, t, true);
    double lv = ud(rng);
    double xv = lv + 1.0 / lv;
    double b = 1 + xv * xv;
    double c = 2 * xv * xv - 1;
    std::complex<double> br = (b + std::sqrt(std::complex<double>(b * b - 4 * c))) / 2.0;
    std::map<std::string, std::complex<double>> pt{{"lambda", lv}};
    try {
      auto nu = evaluate_numeric(u, pt, br);
      auto nv = evaluate_numeric(v, pt, br);
      auto rel = [](std::complex<double> x, std::complex<double> y) {
        return std::abs(x - y) / std::max(1.0, std::abs(y));
      };
      EXPECT_LT(rel(evaluate_numeric(u * v, pt, br), nu * nv), 1e-6);
      EXPECT_LT(rel(evaluate_numeric(u + v, pt, br), nu + nv), 1e-6);
      if (std::abs(nv) > 1e-3) {
        EXPECT_LT(rel(evaluate_numeric(u / v, pt, br), nu / nv), 1e-6);
      }
      ++checked;
    } catch (const DenominatorNearZero&) {
    } catch (const DivisionByZero&) {
    }
  }
  EXPECT_GT(checked, 40);
}

TEST(FieldElementTest, LaurentCoefficients) {
  TowerPtr t = FieldTower::make({"lambda", "x"});
  FieldElement l = FieldElement::indeterminate(t, "lambda");
  FieldElement x = FieldElement::indeterminate(t, "x");
  FieldElement u = l * x.pow(2) + (l + 1) / l + x.pow(-3) * 5;
  auto c = u.laurent_coefficients(1);
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c.at(2), l);
  EXPECT_EQ(c.at(0), (l + 1) / l);
  EXPECT_EQ(c.at(-3), FieldElement(t, Integer(5)));
  EXPECT_THROW((x + 1).inv().laurent_coefficients(1), PreconditionFailed);
}
