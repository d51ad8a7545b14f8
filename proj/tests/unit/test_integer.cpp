#include <gtest/gtest.h>

#include <limits>
#include <random>

#include "sl2cert/errors.hpp"
#include "sl2cert/integer.hpp"

using sl2cert::Integer;

TEST(Integer, SmallArithmetic) {
  Integer a(12);
  Integer b(-5);
  EXPECT_EQ((a + b).to_string(), "7");
  EXPECT_EQ((a - b).to_string(), "17");
  EXPECT_EQ((a * b).to_string(), "-60");
  EXPECT_EQ(gcd(Integer(84), Integer(-36)).to_string(), "12");
  EXPECT_TRUE(a.is_small());
}

TEST(Integer, OverflowPromotesAndDemotes) {
  Integer big(std::numeric_limits<long long>::max());
  Integer sum = big + Integer(1);
  EXPECT_FALSE(sum.is_small());
  EXPECT_EQ(sum.to_string(), "9223372036854775808");
  Integer back = sum - Integer(1);
  EXPECT_TRUE(back.is_small());
  EXPECT_EQ(back, big);

  Integer sq = big * big;
  EXPECT_EQ(Integer::divexact(sq, big), big);
  EXPECT_EQ(*sq.exact_sqrt(), big);
}

TEST(Integer, MinValueNegation) {
  Integer m(std::numeric_limits<long long>::min());
  Integer n = -m;
  EXPECT_EQ(n.to_string(), "9223372036854775808");
  EXPECT_EQ(-n, m);
  EXPECT_EQ(n.abs(), n);
}

TEST(Integer, ParseRoundTrip) {
  for (const char* s : {"0", "-1", "123456789012345678901234567890", "-98765432109876543210"}) {
    EXPECT_EQ(Integer::from_string(s).to_string(), s);
  }
  EXPECT_THROW(Integer::from_string("12a"), sl2cert::ParseError);
  EXPECT_THROW(Integer::from_string("-"), sl2cert::ParseError);
  EXPECT_EQ(Integer::from_string("+7").to_string(), "7");
}

TEST(Integer, SymmetricMod) {
  EXPECT_EQ(Integer(7).symmetric_mod(Integer(10)).to_string(), "-3");
  EXPECT_EQ(Integer(5).symmetric_mod(Integer(10)).to_string(), "5");
  EXPECT_EQ(Integer(-6).symmetric_mod(Integer(10)).to_string(), "4");
}

TEST(Integer, SquareRoots) {
  EXPECT_FALSE(Integer(5).exact_sqrt().has_value());
  EXPECT_FALSE(Integer(-4).exact_sqrt().has_value());
  EXPECT_EQ(Integer(49).exact_sqrt()->to_string(), "7");
  EXPECT_EQ(Integer(50).isqrt().to_string(), "7");
}

TEST(Integer, RandomizedAgainstInt128) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    long long x = static_cast<long long>(rng());
    long long y = static_cast<long long>(rng() >> (rng() % 60));
    __int128 p = static_cast<__int128>(x) * y;
    Integer prod = Integer(x) * Integer(y);
    Integer expect = Integer(static_cast<long long>(p >> 64)) * Integer(1LL << 32) * Integer(1LL << 32) +
                     Integer(static_cast<long long>(static_cast<unsigned long long>(p) >> 1)) * Integer(2) +
                     Integer(static_cast<long long>(static_cast<unsigned long long>(p) & 1ULL));
    EXPECT_EQ(prod, expect);
    EXPECT_EQ(prod.mod_u64(1000003), static_cast<uint64_t>(((p % 1000003) + 1000003) % 1000003));
  }
}

TEST(Integer, DivisionByZeroThrows) {
  EXPECT_THROW(Integer::divexact(Integer(4), Integer(0)), sl2cert::DivisionByZero);
}
