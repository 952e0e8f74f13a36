#include <random>

#include <gtest/gtest.h>

#include "normality/combinatorics.hpp"
#include "normality/exact_rational.hpp"
#include "oracles.hpp"

namespace normality {
namespace {

TEST(Binomial, SmallCases) {
  EXPECT_EQ(binomial(0, 0), 1);
  EXPECT_EQ(binomial(4, 2), 6);
  EXPECT_EQ(binomial(3, 5), 0);
}

TEST(Binomial, MatchesPascalOracle) {
  EXPECT_EQ(binomial(50, 25), oracle::pascal_row(50)[25]);
  EXPECT_EQ(binomial(50, 25), BigInt("126410606437752"));
}

TEST(Binomial, PascalRecurrence) {
  for (std::uint64_t n = 1; n <= 100; ++n)
    for (std::uint64_t p = 1; p <= n; ++p)
      ASSERT_EQ(binomial(n, p), binomial(n - 1, p - 1) + binomial(n - 1, p)) << n << "," << p;
}

TEST(Binomial, WeightedRowsSumToOne) {
  for (std::uint64_t r = 2; r <= 12; ++r)
    for (std::uint64_t n = 0; n <= 60; ++n) {
      ExactRational sum(0);
      for (std::uint64_t p = 0; p <= n; ++p)
        sum += ExactRational(binomial(n, p) * ipow(r - 1, n - p), ipow(r, n));
      ASSERT_EQ(sum, ExactRational(1)) << "r=" << r << " n=" << n;
    }
}

TEST(ExactRational, StoredReduced) {
  const ExactRational q(BigInt(6), BigInt(-8));
  EXPECT_EQ(q.numerator(), -3);
  EXPECT_EQ(q.denominator(), 4);
  EXPECT_EQ(ExactRational(BigInt(0), BigInt(-5)).denominator(), 1);
  EXPECT_THROW(ExactRational(BigInt(1), BigInt(0)), std::domain_error);
}

TEST(ExactRational, Power) {
  EXPECT_EQ(rational_pow(ExactRational(1, 2), 4), ExactRational(1, 16));
  EXPECT_EQ(rational_pow(ExactRational(3, 4), 0), ExactRational(1));
  EXPECT_EQ(rational_pow(ExactRational(9, 10), 3), ExactRational(729, 1000));
  EXPECT_EQ(rational_pow(ExactRational(-2, 3), -3), ExactRational(-27, 8));
  EXPECT_THROW(rational_pow(ExactRational(0), -1), std::domain_error);
  EXPECT_EQ(rational_pow(ExactRational(0), 0), ExactRational(1));
}

TEST(ExactRational, Formatting) {
  EXPECT_EQ(ExactRational(3, 16).to_string(), "3/16");
  EXPECT_EQ(ExactRational(BigInt(12), BigInt(4)).to_string(), "3");
  EXPECT_EQ(ExactRational(-1, 3).to_string(), "-1/3");
  EXPECT_EQ(ExactRational(1, 3).to_decimal(12), "0.333333333333");
  EXPECT_EQ(ExactRational(657, 10000).to_decimal(12), "0.0657");
  EXPECT_EQ(ExactRational(2, 3).to_decimal(3), "0.666");
  EXPECT_EQ(ExactRational(1234567, 1).to_decimal(3), "1230000");
  EXPECT_EQ(ExactRational(-5, 2).to_decimal(), "-2.5");
  EXPECT_EQ(ExactRational(0).to_decimal(), "0");
}

TEST(ExactRational, Parsing) {
  EXPECT_EQ(ExactRational::parse("3/16"), ExactRational(3, 16));
  EXPECT_EQ(ExactRational::parse("-4/6"), ExactRational(-2, 3));
  EXPECT_EQ(ExactRational::parse("7"), ExactRational(7));
  EXPECT_EQ(ExactRational::parse("0.125"), ExactRational(1, 8));
  EXPECT_EQ(ExactRational::parse("-.5"), ExactRational(-1, 2));
  EXPECT_THROW(ExactRational::parse("1/0"), std::invalid_argument);
  EXPECT_THROW(ExactRational::parse("abc"), std::invalid_argument);
  EXPECT_THROW(ExactRational::parse("1e-3"), std::invalid_argument);
  EXPECT_THROW(ExactRational::parse(""), std::invalid_argument);
}

TEST(ExactRational, Ordering) {
  EXPECT_LT(ExactRational(1, 3), ExactRational(1, 2));
  EXPECT_GT(ExactRational(-1, 3), ExactRational(-1, 2));
  EXPECT_EQ(abs(ExactRational(-3, 7)), ExactRational(3, 7));
  EXPECT_EQ(floor(ExactRational(-3, 2)), -2);
  EXPECT_EQ(floor(ExactRational(7, 2)), 3);
  EXPECT_EQ(floor(ExactRational(-4, 2)), -2);
}

TEST(ExactRational, FieldIdentitiesOnRandomValues) {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<long long> num(-1'000'000'000LL, 1'000'000'000LL);
  std::uniform_int_distribution<long long> den(1, 1'000'000'000LL);
  for (int i = 0; i < 2000; ++i) {
    const ExactRational a(num(rng), den(rng));
    const ExactRational b(num(rng), den(rng));
    ASSERT_EQ((a + b) - b, a);
    ASSERT_EQ(a + b, b + a);
    ASSERT_EQ(a * b, b * a);
    if (!b.is_zero()) ASSERT_EQ((a * b) / b, a);
    ASSERT_EQ(a * (a + b), a * a + a * b);
    ASSERT_EQ(ExactRational::parse(a.to_string()), a);
  }
}

}  // namespace
}  // namespace normality
