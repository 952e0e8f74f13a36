#include <gtest/gtest.h>

#include "normality/lemma.hpp"
#include "oracles.hpp"

namespace normality {
namespace {

TEST(MomentPolynomial, F0Coefficients) {
  const MomentPolynomial f = build_f0(3, 1);
  EXPECT_EQ(f.coefficients().size(), 4u);
  EXPECT_EQ(f.coefficient(0), ExactRational(1));
  EXPECT_EQ(f.coefficient(1), ExactRational(3));
  EXPECT_EQ(f.coefficient(2), ExactRational(3));
  EXPECT_EQ(f.coefficient(3), ExactRational(1));
  EXPECT_EQ(f.coefficients().count(Exponents{1, 2}), 1u);
}

TEST(MomentPolynomial, F0MatchesPascalRow) {
  for (std::uint64_t n = 1; n <= 40; ++n) {
    const auto row = oracle::pascal_row(n);
    const MomentPolynomial f = build_f0(n, 3);
    for (std::uint64_t p = 0; p <= n; ++p) ASSERT_EQ(f.coefficient(p), ExactRational(row[p]));
  }
}

TEST(MomentPolynomial, OperatorOnSmallCase) {
  // n = 1, s = 1: f_0 = U + Y, so f_1 = U - Y
  const MomentPolynomial f1 = apply_euler_operator(build_f0(1, 1));
  EXPECT_EQ(f1.coefficients().size(), 2u);
  EXPECT_EQ(f1.coefficients().at(Exponents{0, 1}), ExactRational(-1));
  EXPECT_EQ(f1.coefficients().at(Exponents{1, 0}), ExactRational(1));
}

TEST(MomentPolynomial, OperatorDropsVanishingTerms) {
  // n = 2, s = 1: the middle coefficient gets factor 1*1 - 1 = 0
  const MomentPolynomial f1 = apply_euler_operator(build_f0(2, 1));
  EXPECT_EQ(f1.coefficients().size(), 2u);
  EXPECT_EQ(f1.coefficient(1), ExactRational(0));
}

TEST(MomentPolynomial, EvaluateMatchesTermwiseSum) {
  const MomentPolynomial f = build_f0(5, 2);
  const ExactRational u(2, 3);
  const ExactRational y(5, 7);
  ExactRational expected(0);
  for (std::uint64_t p = 0; p <= 5; ++p) expected += f.coefficient(p) * rational_pow(u, p) * rational_pow(y, 5 - p);
  EXPECT_EQ(f.evaluate(u, y), expected);
  // binomial theorem
  EXPECT_EQ(f.evaluate(u, y), rational_pow(u + y, 5));
}

TEST(BinomIdentity, AllSmallCases) {
  for (std::uint64_t n = 1; n <= 30; ++n)
    for (std::uint64_t s = 1; s <= 9; ++s)
      for (unsigned k = 0; k <= 4; ++k) ASSERT_TRUE(verify_binom_identity(n, s, k)) << n << ' ' << s << ' ' << k;
}

TEST(BinomIdentity, CoefficientAgainstPascalOracle) {
  for (std::uint64_t n = 1; n <= 20; ++n) {
    const auto row = oracle::pascal_row(n);
    for (std::uint64_t s = 1; s <= 5; ++s) {
      const MomentPolynomial f2 = apply_euler_operator(build_f0(n, s), 2);
      for (std::uint64_t p = 0; p <= n; ++p) {
        const BigInt factor = BigInt(s) * p - BigInt(n - p);
        ASSERT_EQ(f2.coefficient(p), ExactRational(row[p] * factor * factor));
      }
    }
  }
}

TEST(SpecialPoint, FirstMomentVanishes) {
  for (std::uint64_t r = 2; r <= 10; ++r)
    for (std::uint64_t n = 1; n <= 30; ++n) ASSERT_EQ(eval_moment_specialized(n, Base(r), 1), ExactRational(0));
}

TEST(SpecialPoint, ZerothMomentIsOne) {
  for (std::uint64_t r = 2; r <= 10; ++r) EXPECT_EQ(eval_moment_specialized(7, Base(r), 0), ExactRational(1));
}

TEST(ClosedForm, SpotValues) {
  EXPECT_EQ(eval_f4_specialized(1, Base(2)), ExactRational(1));
  EXPECT_EQ(closed_form_f4(1, Base(2)), ExactRational(1));
  EXPECT_EQ(eval_f4_specialized(1, Base(10)), ExactRational(657));
  EXPECT_EQ(oracle::f4_direct_sum(1, 10), ExactRational(657));
  EXPECT_EQ(eval_f4_specialized(2, Base(2)), ExactRational(8));
  EXPECT_EQ(oracle::f4_direct_sum(2, 2), ExactRational(8));
}

TEST(ClosedForm, AgreesWithOperatorAndDirectSum) {
  for (std::uint64_t r = 2; r <= 12; ++r)
    for (std::uint64_t n = 1; n <= 60; ++n) {
      const ExactRational closed = closed_form_f4(n, Base(r));
      ASSERT_EQ(eval_f4_specialized(n, Base(r)), closed) << "n=" << n << " r=" << r;
      ASSERT_EQ(oracle::f4_direct_sum(n, r), closed) << "n=" << n << " r=" << r;
    }
}

TEST(Constants, KnownBases) {
  const LemmaConstants two = derive_constants(Base(2));
  EXPECT_EQ(two.C, ExactRational(3));
  EXPECT_EQ(two.D, ExactRational(3, 16));
  const LemmaConstants three = derive_constants(Base(3));
  EXPECT_EQ(three.C, ExactRational(12));
  EXPECT_EQ(three.D, ExactRational(4, 27));
  const LemmaConstants ten = derive_constants(Base(10));
  EXPECT_EQ(ten.C, ExactRational(657));
  EXPECT_EQ(ten.D, ExactRational(657, 10'000));
}

TEST(Constants, DominateClosedForm) {
  for (std::uint64_t r = 2; r <= 30; ++r) {
    const LemmaConstants k = derive_constants(Base(r));
    for (std::uint64_t n = 1; n <= 100; ++n)
      ASSERT_LE(closed_form_f4(n, Base(r)), k.C * ExactRational(BigInt(n) * n)) << r << ' ' << n;
  }
}

TEST(MainLemma, SpotValues) {
  EXPECT_EQ(main_lemma_sum(1, Base(2)), ExactRational(1, 16));
  EXPECT_EQ(main_lemma_sum(1, Base(10)), ExactRational(657, 10'000));
}

// sum = f_4 / (r n)^4
TEST(MainLemma, EqualsClosedFormOverScale) {
  for (std::uint64_t r = 2; r <= 12; ++r)
    for (std::uint64_t n = 1; n <= 80; ++n) {
      const BigInt scale = ipow(BigInt(r) * n, 4);
      ASSERT_EQ(main_lemma_sum(n, Base(r)), closed_form_f4(n, Base(r)) / ExactRational(scale));
    }
}

TEST(MainLemma, BoundHoldsInSweep) {
  for (std::uint64_t r = 2; r <= 12; ++r) {
    const auto rows = check_main_lemma(Base(r), r <= 3 ? 300 : 120);
    for (const auto& row : rows) {
      ASSERT_TRUE(row.holds) << "r=" << r << " n=" << row.n;
      ASSERT_LE(row.ratio, ExactRational(1));
      ASSERT_EQ(row.bound * ExactRational(BigInt(row.n) * row.n), derive_constants(Base(r)).D);
    }
  }
}

TEST(MainLemma, RejectsZero) {
  EXPECT_THROW(main_lemma_sum(0, Base(2)), std::invalid_argument);
  EXPECT_THROW(MomentPolynomial(0, 1), std::invalid_argument);
}

}  // namespace
}  // namespace normality
