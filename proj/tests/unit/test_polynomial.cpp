#include <gtest/gtest.h>

#include <random>

#include "sl2cert/polynomial.hpp"

using sl2cert::Integer;
using sl2cert::Monomial;
using sl2cert::Polynomial;

namespace {

Polynomial X(int v) { return Polynomial::variable(v); }

Polynomial random_poly(std::mt19937_64& rng, int nvars, int terms, int maxdeg, int coef) {
  std::vector<sl2cert::Term> out;
  std::uniform_int_distribution<int> dc(-coef, coef);
  std::uniform_int_distribution<int> de(0, maxdeg);
  for (int i = 0; i < terms; ++i) {
    Monomial m;
    for (int v = 0; v < nvars; ++v) m.set_exp(v, static_cast<unsigned>(de(rng)));
    out.push_back({m, Integer(dc(rng))});
  }
  return Polynomial::from_terms(out);
}

}  // namespace

TEST(Monomial, GrlexOrder) {
  Monomial x = Monomial::variable(0);
  Monomial y = Monomial::variable(1);
  Monomial y2 = Monomial::variable(1, 2);
  EXPECT_TRUE(x > y);
  EXPECT_TRUE(y2 > x);  // higher total degree wins
  EXPECT_TRUE((x * y) > y2);
  EXPECT_EQ((x * y2).degree(), 3u);
  EXPECT_TRUE(y.divides(x * y2));
  EXPECT_FALSE(x.divides(y2));
}

TEST(Monomial, HighVariableSlots) {
  for (int v = 0; v < sl2cert::kMaxVars; ++v) {
    Monomial m = Monomial::variable(v, 5);
    EXPECT_EQ(m.exp(v), 5u);
    EXPECT_EQ(m.degree(), 5u);
    EXPECT_EQ(m.support(), 1u << v);
  }
}

TEST(Polynomial, CancellationToPlusOne) {
  Polynomial l = X(0);
  Polynomial num = l * l - 1;
  Polynomial den = l - 1;
  EXPECT_EQ(num.divexact(den), l + 1);
  EXPECT_EQ(gcd(num, den), den);
}

TEST(Polynomial, ToString) {
  Polynomial p = X(0) * X(0) * X(1) - 3 * X(0) + 1;
  EXPECT_EQ(p.to_string({"x", "z"}), "x^2*z - 3*x + 1");
  EXPECT_EQ(Polynomial().to_string({}), "0");
  EXPECT_EQ((-X(1)).to_string({"x", "z"}), "-z");
}

TEST(Polynomial, TryDivideRejects) {
  Polynomial a = X(0) * X(0) + 1;
  EXPECT_FALSE(a.try_divide(X(0) + 1).has_value());
  EXPECT_FALSE(a.try_divide(Polynomial(2)).has_value());
}

TEST(Polynomial, SquareRoot) {
  Polynomial s = 3 * X(0) * X(1) - 2 * X(1) * X(1) + X(2) - 5;
  auto r = (s * s).sqrt();
  ASSERT_TRUE(r.has_value());
  EXPECT_TRUE(*r == s || *r == -s);
  EXPECT_FALSE((s * s + 1).sqrt().has_value());
  EXPECT_FALSE((X(0) * X(0) * X(0)).sqrt().has_value());
  Polynomial disc = (X(0) * X(0) - 1) * (X(0) * X(0) - 5);
  EXPECT_FALSE(disc.sqrt().has_value());
}

TEST(Polynomial, ReduceMonicQuadratic) {
  // z^2 -> (1 + x^2) z - 2x^2 + 1
  Polynomial x = X(0);
  Polynomial z = X(1);
  Polynomial p = 1 + x * x;
  Polynomial q = 1 - 2 * x * x;
  Polynomial r = (z * z).reduce_monic_quadratic(1, p, q);
  EXPECT_EQ(r, p * z + q);
  Polynomial f = z * z * z + x;
  Polynomial fr = f.reduce_monic_quadratic(1, p, q);
  EXPECT_LE(fr.degree_in(1), 1);
  // z^3 = z * (p z + q) = p (p z + q) + q z
  EXPECT_EQ(fr, (p * p + q) * z + p * q + x);
}

TEST(Polynomial, GcdMatchesPrsOracle) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 60; ++trial) {
    int nv = 1 + trial % 3;
    Polynomial g = random_poly(rng, nv, 3, 3, 5);
    if (g.is_zero()) continue;
    Polynomial a = g * random_poly(rng, nv, 3, 2, 6);
    Polynomial b = g * random_poly(rng, nv, 3, 2, 6);
    if (a.is_zero() || b.is_zero()) continue;
    Polynomial h = gcd(a, b);
    Polynomial o = sl2cert::detail::prs_gcd(a, b);
    EXPECT_EQ(h, o) << "trial " << trial;
    EXPECT_TRUE(a.try_divide(h).has_value());
    EXPECT_TRUE(b.try_divide(h).has_value());
    EXPECT_TRUE(h.try_divide(g.sign() < 0 ? -g : g).has_value() || !g.is_constant());
  }
}

TEST(Polynomial, GcdWithDisjointVariables) {
  Polynomial a = (X(0) + 1) * (X(1) - 2);
  Polynomial b = (X(0) + 1) * (X(2) + 3);
  EXPECT_EQ(gcd(a, b), X(0) + 1);
  EXPECT_EQ(gcd(X(0) * X(0) * X(1), 6 * X(0) * X(2)), X(0));
  EXPECT_EQ(gcd(Polynomial(6), 4 * X(0) + 2), Polynomial(2));
}

TEST(Polynomial, EvalModMatchesExact) {
  std::mt19937_64 rng(3);
  const uint64_t p = (1ULL << 61) - 1;
  for (int trial = 0; trial < 30; ++trial) {
    Polynomial f = random_poly(rng, 3, 6, 4, 100);
    Polynomial g = random_poly(rng, 3, 6, 4, 100);
    std::vector<uint64_t> pt = {rng() % p, rng() % p, rng() % p};
    unsigned __int128 prod = static_cast<unsigned __int128>(f.eval_mod(pt, p)) * g.eval_mod(pt, p);
    EXPECT_EQ((f * g).eval_mod(pt, p), static_cast<uint64_t>(prod % p));
  }
}
