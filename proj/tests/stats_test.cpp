#include <numeric>
#include <random>
#include <string>

#include <gtest/gtest.h>

#include "normality/sources.hpp"
#include "normality/stats.hpp"
#include "oracles.hpp"

namespace normality {
namespace {

const std::filesystem::path kPiFile = std::filesystem::path(NORMALITY_TEST_ASSETS) / "pi_base10.digits";

TEST(CountDigit, PiThreesInFirstFifty) {
  DigitStream pi = file_digit_stream(kPiFile);
  EXPECT_EQ(count_digit(pi, 3, 50), 8u);
  EXPECT_EQ(pi.position(), 50u);
}

TEST(CountDigit, CountsPartitionThePrefix) {
  for (std::uint64_t r : {2u, 3u, 10u, 16u}) {
    std::uint64_t total = 0;
    for (Digit b = 0; b < r; ++b) {
      DigitStream s = champernowne_stream(Base(r));
      total += count_digit(s, b, 5000);
    }
    EXPECT_EQ(total, 5000u);
    DigitStream s = champernowne_stream(Base(r));
    const FrequencyTable t = tally(s, 5000);
    EXPECT_EQ(std::accumulate(t.counts.begin(), t.counts.end(), std::uint64_t{0}), 5000u);
  }
}

TEST(CountDigit, OneThirdInBaseTwo) {
  DigitStream s = rational_stream(ExactRational(1, 3), Base(2));
  EXPECT_EQ(count_digit(s, 1, 100), 50u);
}

TEST(CountDigit, RejectsDigitOutsideBase) {
  DigitStream s = champernowne_stream(Base(2));
  EXPECT_THROW(count_digit(s, 2, 10), std::invalid_argument);
}

TEST(CountBlock, ElevenDigitExample) {
  DigitStream s = make_finite_stream(Base(2), {1, 1, 0, 1, 0, 1, 1, 1, 0, 1, 1});
  EXPECT_EQ(count_block(s, Word(Base(2), {1, 0, 1}), 11), 3u);
  // 0.11010111011 in base 2 is 1723/2048
  DigitStream q = rational_stream(ExactRational(1723, 2048), Base(2));
  EXPECT_EQ(count_block(q, Word(Base(2), {1, 0, 1}), 11), 3u);
}

TEST(CountBlock, OverlapsCount) {
  DigitStream s = make_finite_stream(Base(2), {1, 1, 1, 1});
  EXPECT_EQ(count_block(s, Word(Base(2), {1, 1}), 4), 3u);
}

TEST(CountBlock, SingleDigitWordAgreesWithCountDigit) {
  for (Digit b = 0; b < 10; ++b) {
    DigitStream a = file_digit_stream(kPiFile);
    DigitStream c = file_digit_stream(kPiFile);
    ASSERT_EQ(count_block(a, Word(Base(10), {b}), 2000), count_digit(c, b, 2000));
  }
}

TEST(CountBlock, AgreesWithWindowOracleAndGrowsWithPrefix) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t r = 2 + rng() % 3;
    std::vector<Digit> digits(1 + rng() % 60);
    for (auto& d : digits) d = rng() % r;
    std::vector<Digit> w(1 + rng() % 3);
    for (auto& d : w) d = rng() % r;
    std::uint64_t previous = 0;
    for (std::size_t n = 1; n <= digits.size(); ++n) {
      DigitStream s = make_finite_stream(Base(r), digits);
      const std::uint64_t got = count_block(s, Word(Base(r), w), n);
      const std::vector<Digit> prefix(digits.begin(), digits.begin() + static_cast<std::ptrdiff_t>(n));
      ASSERT_EQ(got, oracle::windows_starting_up_to(prefix, w, n));
      ASSERT_GE(got, previous);
      previous = got;
    }
  }
}

TEST(Word, Validation) {
  EXPECT_THROW(Word(Base(2), {}), std::invalid_argument);
  EXPECT_THROW(Word(Base(2), {0, 2}), std::invalid_argument);
  EXPECT_EQ(Word(Base(2), {1, 1}).as_power_base_digit(), 3u);
  EXPECT_EQ(Word(Base(10), {1, 2, 3}).as_power_base_digit(), 123u);
}

TEST(Report, OneThirdBaseTwoIsBalanced) {
  DigitStream s = rational_stream(ExactRational(1, 3), Base(2));
  const NormalityReport rep = simple_normality_report(s, 100);
  EXPECT_EQ(rep.max_deviation, ExactRational(0));
}

TEST(Report, OneThirdBaseFourDeviations) {
  DigitStream s = rational_stream(ExactRational(1, 3), Base(4));
  const NormalityReport rep = simple_normality_report(s, 40);
  EXPECT_EQ(rep.deviations, (std::vector<ExactRational>{ExactRational(1, 4), ExactRational(3, 4), ExactRational(1, 4),
                                                          ExactRational(1, 4)}));
  EXPECT_EQ(rep.max_deviation, ExactRational(3, 4));
}

// Leading ones of the six-digit numbers 100000..185185 keep digit 1 far
// above 1/10 at this prefix length.
TEST(Report, ChampernowneBaseTenMillionDigits) {
  std::string text;
  for (std::uint64_t i = 1; text.size() < 1'000'000; ++i) text += std::to_string(i);
  text.resize(1'000'000);
  std::vector<std::uint64_t> expected(10, 0);
  for (char c : text) ++expected[static_cast<std::size_t>(c - '0')];

  DigitStream s = champernowne_stream(Base(10));
  const NormalityReport rep = simple_normality_report(s, 1'000'000);
  EXPECT_EQ(rep.counts, expected);
  EXPECT_EQ(rep.counts[1], 179'810u);
  EXPECT_EQ(rep.max_deviation, ExactRational(7981, 100'000));
}

TEST(Report, DeviationRange) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 100; ++i) {
    const std::uint64_t r = 2 + rng() % 10;
    DigitStream s = random_stream(Base(r), rng());
    const NormalityReport rep = simple_normality_report(s, 1 + rng() % 200);
    for (const auto& d : rep.deviations) {
      ASSERT_GE(d, ExactRational(0));
      ASSERT_LE(d, ExactRational(static_cast<long long>(r) - 1, static_cast<long long>(r)));
    }
  }
}

TEST(Battery, OneThirdBaseTwoSecondPower) {
  DigitTee tee(rational_stream(ExactRational(1, 3), Base(2)));
  const auto cells = normality_battery(tee, 2, 100);
  ASSERT_EQ(cells.size(), 3u);
  EXPECT_EQ(cells[0].m, 0u);
  EXPECT_EQ(cells[0].n, 1u);
  EXPECT_EQ(cells[0].report.max_deviation, ExactRational(0));
  // 0.010101... regroups to the base-4 digit 1 forever
  EXPECT_EQ(cells[1].m, 0u);
  EXPECT_EQ(cells[1].n, 2u);
  EXPECT_EQ(cells[1].report.deviations[1], ExactRational(3, 4));
  EXPECT_EQ(cells[2].m, 1u);
  EXPECT_EQ(cells[2].report.deviations[2], ExactRational(3, 4));
}

TEST(Battery, ChampernowneBaseTwo) {
  DigitTee tee(champernowne_stream(Base(2)));
  const auto cells = normality_battery(tee, 3, 100'000);
  ASSERT_EQ(cells.size(), 6u);
  for (const auto& cell : cells)
    EXPECT_LT(cell.report.max_deviation, ExactRational(1, 20)) << "m=" << cell.m << " n=" << cell.n;
}

TEST(Battery, NeedsEnoughDigits) {
  DigitTee tee(make_finite_stream(Base(2), std::vector<Digit>(10, 0)));
  EXPECT_THROW(normality_battery(tee, 2, 5), InsufficientDigits);
  EXPECT_NO_THROW(normality_battery(tee, 2, 4));
}

TEST(PowerBaseCount, BaseTwoExample) {
  const std::vector<Digit> bits = parse_digit_literal("001001000011101101111110000100000110101100011110001", Base(2));
  const PowerBaseBlockCount got = count_block_via_power_base(DigitTee(make_finite_stream(Base(2), bits)),
                                                             Word(Base(2), {1, 1}), 25);
  EXPECT_EQ(got.per_shift, (std::vector<std::uint64_t>{6, 7}));
  EXPECT_EQ(got.total, 13u);
  EXPECT_EQ(oracle::windows_starting_up_to(bits, {1, 1}, 50), 13u);
}

TEST(PowerBaseCount, MatchesWindowOracle) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 300; ++i) {
    const std::uint64_t r = 2 + rng() % 2;
    std::vector<Digit> w(1 + rng() % 3);
    for (auto& d : w) d = rng() % r;
    const std::size_t k = 1 + rng() % 100;
    std::vector<Digit> digits(k * w.size() + w.size() - 1);
    for (auto& d : digits) d = rng() % r;
    const PowerBaseBlockCount got =
        count_block_via_power_base(DigitTee(make_finite_stream(Base(r), digits)), Word(Base(r), w), k);
    ASSERT_EQ(got.total, oracle::windows_starting_up_to(digits, w, k * w.size()));
  }
}

TEST(PowerBaseCount, ShortStreamThrows) {
  DigitTee tee(make_finite_stream(Base(2), std::vector<Digit>(5, 1)));
  EXPECT_THROW(count_block_via_power_base(tee, Word(Base(2), {1, 1}), 3), InsufficientDigits);
}

}  // namespace
}  // namespace normality
