#include <gtest/gtest.h>

#include <map>
#include <random>
#include <unordered_set>

#include "sl2cert/errors.hpp"
#include "sl2cert/words.hpp"

using namespace sl2cert;

namespace {

Word W(const char* s) { return Word::parse(s); }

std::vector<Symbol> syms(std::initializer_list<const char*> names) {
  std::vector<Symbol> out;
  for (const char* n : names) out.push_back(intern(n));
  return out;
}

Word random_word(std::mt19937& rng, const std::vector<Symbol>& gens, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<size_t> pick(0, gens.size() - 1);
  std::vector<Syllable> s;
  int n = len(rng);
  for (int i = 0; i < n; ++i) s.push_back({gens[pick(rng)], (rng() & 1) ? 1 : -1});
  return Word::from_syllables(s);
}

}  // namespace

TEST(Words, FreeReduction) {
  EXPECT_EQ(W("a*b*b^-1*a"), W("a^2"));
  EXPECT_EQ(W("a b b^-1 a").to_string(), "a^2");
  EXPECT_EQ(cyclic_reduce(W("a*b*a^-1")), W("b"));
  Word r = W("B^-1*A^-1*B*A*B^-1*A*B*A^-1*B^-1*A");
  EXPECT_EQ(r.length(), 10u);
  EXPECT_EQ(free_reduce(r.syllables()), r);
  EXPECT_TRUE(W("a*a^-1").empty());
  EXPECT_EQ(W("1").to_string(), "1");
}

TEST(Words, ParseRoundTrip) {
  for (const char* s : {"B^-1*A^-1*B*A*B^-1*A*B*A^-1*B^-1*A", "x^3*y^-2", "t*a*t^-1*b^-1", "1"}) {
    Word w = W(s);
    EXPECT_EQ(Word::parse(w.to_string()), w) << s;
  }
  EXPECT_EQ(W("(a*b)^2"), W("a*b*a*b"));
  EXPECT_EQ(W("(a b)^-1"), W("b^-1 a^-1"));
  auto ab = syms({"a", "b", "A", "B"});
  EXPECT_EQ(Word::parse("ABab", &ab), W("A*B*a*b"));
  EXPECT_THROW(Word::parse("a^", nullptr), ParseError);
  EXPECT_THROW(Word::parse("(a", nullptr), ParseError);
  EXPECT_THROW(Word::parse("a$b", nullptr), ParseError);
  std::mt19937 rng(7);
  auto gens = syms({"a", "b", "c"});
  for (int i = 0; i < 200; ++i) {
    Word w = random_word(rng, gens, 12);
    EXPECT_EQ(Word::parse(w.to_string()), w);
  }
}

TEST(Words, FreeReduceHomomorphism) {
  std::mt19937 rng(11);
  auto gens = syms({"a", "b"});
  for (int i = 0; i < 300; ++i) {
    std::vector<Syllable> u, v;
    for (int j = 0; j < 8; ++j) u.push_back({gens[rng() % 2], (rng() & 1) ? 1 : -1});
    for (int j = 0; j < 8; ++j) v.push_back({gens[rng() % 2], (rng() & 1) ? 1 : -1});
    std::vector<Syllable> uv = u;
    uv.insert(uv.end(), v.begin(), v.end());
    EXPECT_EQ(free_reduce(uv), free_reduce(u) * free_reduce(v));
    Word w = free_reduce(uv);
    EXPECT_EQ(cyclic_reduce(cyclic_reduce(w)), cyclic_reduce(w));
    auto d = cyclic_decompose(w);
    EXPECT_EQ(d.conjugator * d.core * d.conjugator.inverse(), w);
  }
}

TEST(Words, ProperPowers) {
  auto p = is_proper_power(W("(a*b)^3"));
  EXPECT_TRUE(p.proper);
  EXPECT_EQ(p.root, W("a*b"));
  EXPECT_EQ(p.k, 3);
  Word prim = W("y*x^2*y^-1*x^-3");
  p = is_proper_power(prim);
  EXPECT_FALSE(p.proper);
  EXPECT_EQ(p.root, prim);
  EXPECT_EQ(p.k, 1);
  EXPECT_FALSE(is_proper_power(W("a*b*a^-1*b^-1")).proper);
  p = is_proper_power(W("c*a^4*c^-1"));
  EXPECT_EQ(p.root, W("c*a*c^-1"));
  EXPECT_EQ(p.k, 4);
  EXPECT_THROW(is_proper_power(Word()), TrivialWord);
}

// Oracle: every word of length <= 8 that is r^k (k >= 2) for some r, with
// the largest such k, built by brute force over all candidate roots.
TEST(Words, ProperPowerMatchesExhaustiveRoots) {
  auto gens = syms({"a", "b"});
  auto all = enumerate_words(gens, 8);
  std::unordered_map<Word, long long, WordHash> best;
  for (const Word& r : all) {
    for (long long k = 2;; ++k) {
      Word w = r.pow(k);
      if (w.length() > 8) break;
      long long& slot = best[w];
      slot = std::max(slot, k);
    }
  }
  for (const Word& w : all) {
    auto p = is_proper_power(w);
    auto it = best.find(w);
    if (it == best.end()) {
      EXPECT_FALSE(p.proper) << w.to_string();
    } else {
      EXPECT_TRUE(p.proper) << w.to_string();
      EXPECT_EQ(p.k, it->second) << w.to_string();
      EXPECT_EQ(p.root.pow(p.k), w);
    }
  }
}

TEST(Words, PowerOf) {
  EXPECT_EQ(power_of(W("a^3"), W("a")), 3);
  EXPECT_EQ(power_of(W("(a*b)^-2"), W("a*b")), -2);
  EXPECT_EQ(power_of(W("c*a^5*c^-1"), W("c*a*c^-1")), 5);
  EXPECT_EQ(power_of(Word(), W("a*b")), 0);
  EXPECT_FALSE(power_of(W("a*b"), W("a")).has_value());
  EXPECT_FALSE(power_of(W("b*a"), W("a*b")).has_value());
  EXPECT_TRUE(commute(W("a^2"), W("a^-3")));
  EXPECT_FALSE(commute(W("a"), W("b")));
}

TEST(Words, BrittonCyclic) {
  HnnSpec spec{syms({"a", "b"}), {{W("a"), W("b")}}, intern("t")};
  EXPECT_TRUE(britton_reduce(spec, W("t*a*t^-1*b^-1")).is_identity());
  NormalForm nf = britton_reduce(spec, W("t*a^2*t^-1"));
  EXPECT_TRUE(nf.t_exponents.empty());
  EXPECT_EQ(nf.bases[0], W("b^2"));
  nf = britton_reduce(spec, W("t*b*t^-1"));
  EXPECT_EQ(nf.t_exponents.size(), 2u);
  EXPECT_FALSE(nf.is_identity());
  // Adjacent t^-1 t pairs cancel around an inner pinch.
  nf = britton_reduce(spec, W("t^-1*t*a*t^-1*t"));
  EXPECT_EQ(nf.bases[0], W("a"));
  nf = britton_reduce(spec, W("t^2*a*t^-2"));
  EXPECT_TRUE(nf.t_exponents.size() == 2u);
  EXPECT_EQ(nf.to_word(intern("t")), W("t*b*t^-1"));
  EXPECT_THROW(britton_reduce(spec, W("c")), InvalidSpec);
  HnnSpec bad{syms({"a", "t"}), {{W("a"), W("a")}}, intern("t")};
  EXPECT_THROW(bad.validate(), InvalidSpec);
}

TEST(Words, BrittonAutomorphism) {
  HnnSpec spec{syms({"a", "b"}), {{W("a"), W("a*b*a")}, {W("b"), W("b*a")}}, intern("t")};
  ASSERT_TRUE(spec.automorphism_mode());
  NormalForm nf = britton_reduce(spec, W("t*a*b*a^-1*b^-1*t^-1"));
  EXPECT_TRUE(nf.t_exponents.empty());
  Word aba = W("a*b*a"), ba = W("b*a");
  EXPECT_EQ(nf.bases[0], aba * ba * aba.inverse() * ba.inverse());
  EXPECT_TRUE(britton_reduce(spec, W("t*a*t^-1*(a*b*a)^-1")).is_identity());
  EXPECT_TRUE(britton_reduce(spec, W("t^-1*a*b*a*t*a^-1")).is_identity());
  nf = britton_reduce(spec, W("t*a"));
  EXPECT_EQ(nf.t_exponents, std::vector<long long>{1});
  EXPECT_EQ(nf.bases[0], aba);
  // Inverse map: phi^-1(a) = a b^-1, phi^-1(b) = b^2 a^-1.
  nf = britton_reduce(spec, W("t^-1*a*t"));
  EXPECT_EQ(nf.bases[0], W("a*b^-1"));
  nf = britton_reduce(spec, W("t^-1*b*t"));
  EXPECT_EQ(nf.bases[0], W("b^2*a^-1"));
}

TEST(Words, AmalgamNormalForm) {
  AmalgamSpec spec{syms({"x", "y"}), syms({"c", "d"}), W("x*y*x^-1*y^-1"), W("c*d*c^-1*d^-1")};
  EXPECT_TRUE(amalgam_normal_form(spec, W("x*y*x^-1*y^-1*(c*d*c^-1*d^-1)^-1")).is_identity());
  NormalForm nf = amalgam_normal_form(spec, W("x*c"));
  EXPECT_EQ(nf.blocks.size(), 2u);
  EXPECT_FALSE(nf.is_identity());
  EXPECT_TRUE(amalgam_normal_form(spec, W("(x*y*x^-1*y^-1)^3*(c*d*c^-1*d^-1)^-3")).is_identity());
  // x [c,d] x^-1 = x [x,y] x^-1, a single left block.
  nf = amalgam_normal_form(spec, W("x*c*d*c^-1*d^-1*x^-1"));
  ASSERT_EQ(nf.blocks.size(), 1u);
  EXPECT_EQ(nf.blocks[0].first, 0);
  EXPECT_EQ(nf.blocks[0].second, W("x^2*y*x^-1*y^-1*x^-1"));
  // Canonical forms identify equal elements written differently.
  Word e1 = W("x*y*x^-1*y^-1"), e2 = W("c*d*c^-1*d^-1");
  Word u = W("x") * e1 * W("c");
  Word v = W("x") * e2 * W("c");
  EXPECT_EQ(amalgam_canonical_form(spec, u).to_string(), amalgam_canonical_form(spec, v).to_string());
  EXPECT_EQ(amalgam_canonical_form(spec, e2).to_string(), amalgam_canonical_form(spec, e1).to_string());
  AmalgamSpec bad{syms({"x"}), syms({"x"}), W("x"), W("x")};
  EXPECT_THROW(bad.validate(), InvalidSpec);
}

TEST(Words, Enumeration) {
  auto ab = syms({"a", "b"});
  auto l1 = enumerate_words(ab, 1);
  ASSERT_EQ(l1.size(), 4u);
  EXPECT_EQ(l1[0], W("a"));
  EXPECT_EQ(l1[1], W("a^-1"));
  EXPECT_EQ(l1[2], W("b"));
  EXPECT_EQ(l1[3], W("b^-1"));
  EXPECT_EQ(enumerate_words(ab, 2).size(), 16u);
  EXPECT_EQ(enumerate_words(syms({"a", "b", "c"}), 1).size(), 6u);
  auto l4 = enumerate_words(ab, 4);
  std::unordered_set<Word, WordHash> distinct(l4.begin(), l4.end());
  EXPECT_EQ(distinct.size(), l4.size());
  EXPECT_EQ(l4.size(), 4u + 12u + 36u + 108u);
  EXPECT_THROW(enumerate_words(ab, 13), CapExceeded);
  size_t cr = 0;
  for (const Word& w : enumerate_words(ab, 3)) cr += cyclic_reduce(w) == w;
  EXPECT_EQ(enumerate_cyclically_reduced(ab, 3).size(), cr);
}

TEST(Words, BoundFromEnvironment) {
  setenv("SL2CERT_MAX_BOUND", "3", 1);
  EXPECT_EQ(max_bound(), 3);
  EXPECT_THROW(check_bound(4), CapExceeded);
  setenv("SL2CERT_MAX_BOUND", "40", 1);
  EXPECT_EQ(max_bound(), 12);
  unsetenv("SL2CERT_MAX_BOUND");
  EXPECT_EQ(max_bound(), 12);
}

TEST(Words, AmalgamEnumerationDedupes) {
  AmalgamSpec spec{syms({"a"}), syms({"c"}), W("a^2"), W("c^3")};
  auto forms = enumerate_normal_forms(spec, 4);
  std::unordered_set<std::string> keys;
  for (const Word& w : forms) EXPECT_TRUE(keys.insert(amalgam_canonical_form(spec, w).to_string()).second);
  // a^2 and c^3 are the same element, reached twice but listed once.
  size_t hits = 0;
  for (const Word& w : forms) hits += amalgam_canonical_form(spec, w).to_string() == amalgam_canonical_form(spec, W("a^2")).to_string();
  EXPECT_EQ(hits, 1u);
}
