#pragma once

// The verify-paper battery: every concrete numeric claim and exact identity,
// each keyed by the anchor of the claim it checks.

#include <filesystem>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "normality/exact_rational.hpp"
#include "normality/lemma.hpp"
#include "normality/measure.hpp"
#include "normality/radix.hpp"
#include "normality/sources.hpp"
#include "normality/stats.hpp"

namespace normality {

enum class CheckStatus { pass, fail, skipped };

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "FAIL";
    case CheckStatus::skipped: return "skipped";
  }
  return "?";
}

struct CheckResult {
  std::string anchor;
  std::string name;
  CheckStatus status = CheckStatus::fail;
  std::string detail;
};

struct PaperCheckOptions {
  /// Base-10 digit file of pi; checks that need it are skipped when absent.
  std::optional<std::filesystem::path> pi_file;
  /// Added to the closed form before comparison. Nonzero only in tests of
  /// the failure path.
  ExactRational closed_form_offset{0};
  std::uint64_t lemma_n_max_small_bases = 500;  // r = 2, 3
  std::uint64_t lemma_n_max = 200;              // r = 4 .. 12
  std::uint64_t closed_form_n_max = 200;
};

namespace detail {

struct Outcome {
  bool ok = false;
  std::string detail;
};

inline std::string join_digits(const std::vector<Digit>& digits) {
  std::string s;
  for (Digit d : digits) s += std::to_string(d);
  return s;
}

}  // namespace detail

inline std::vector<CheckResult> run_paper_checks(const PaperCheckOptions& options = {}) {
  using detail::Outcome;
  std::vector<CheckResult> results;

  auto run = [&](std::string anchor, std::string name, const std::function<Outcome()>& body) {
    CheckResult r{std::move(anchor), std::move(name), CheckStatus::fail, {}};
    try {
      Outcome o = body();
      r.status = o.ok ? CheckStatus::pass : CheckStatus::fail;
      r.detail = std::move(o.detail);
    } catch (const std::exception& e) {
      r.detail = std::string("error: ") + e.what();
    }
    results.push_back(std::move(r));
  };
  auto skip = [&](std::string anchor, std::string name, std::string why) {
    results.push_back({std::move(anchor), std::move(name), CheckStatus::skipped, std::move(why)});
  };

  const Base two(2), four(4), ten(10);

  run("§3 uniqueness", "1/2 in base 2 is 0.1000..., d = -1", [&] {
    const DigitExpansion e = expand_rational(ExactRational(1, 2), two, 4);
    const std::string digits = detail::join_digits(e.fractional_digits().take(4));
    return Outcome{digits == "1000" && e.leading_index == -1 && !has_max_digit_tail(e), "digits " + digits};
  });

  if (options.pi_file && std::filesystem::exists(*options.pi_file)) {
    const SourceSpec pi = FileSpec{*options.pi_file};
    run("Eq. (1)", "p_{3,50,pi} = 8", [&] {
      DigitStream s = open_stream(pi, ten);
      const auto count = count_digit(s, 3, 50);
      return Outcome{count == 8, "count " + std::to_string(count)};
    });
    run("§3 bracket notation", "pi in base 100 starts [3].[14][15][92]", [&] {
      const std::string text = format_bracket(open_expansion(pi, Base(100), 3), 3);
      return Outcome{text == "[3].[14][15][92]", text};
    });
  } else {
    skip("Eq. (1)", "p_{3,50,pi} = 8", "pi digit file not available");
    skip("§3 bracket notation", "pi in base 100 starts [3].[14][15][92]", "pi digit file not available");
  }

  run("Eq. (2)", "1/3 is simply normal in base 2 (deviation 0 at n = 1000)", [&] {
    DigitStream s = rational_stream(ExactRational(1, 3), two);
    const NormalityReport rep = simple_normality_report(s, 1000);
    return Outcome{rep.max_deviation.is_zero(), "max deviation " + rep.max_deviation.to_string()};
  });

  run("Lemma 3", "1/3 is not simply normal in base 4 (m = 0, n = 2)", [&] {
    const DigitExpansion e = expand_rational(ExactRational(1, 3), four, 16);
    const std::string digits = detail::join_digits(e.fractional_digits().take(16));
    const auto cells = normality_battery(DigitTee(rational_stream(ExactRational(1, 3), two)), 2, 1000);
    for (const auto& c : cells) {
      if (c.m == 0 && c.n == 2) {
        const bool ok = digits == std::string(16, '1') && c.report.deviations[1] == ExactRational(3, 4);
        return Outcome{ok, "base-4 digits " + digits + ", digit-1 deviation " + c.report.deviations[1].to_string()};
      }
    }
    return Outcome{false, "battery produced no (m=0, n=2) cell"};
  });

  run("Lemma 3", "shift example 10^7 and 10^1 times 0.123(345042)", [&] {
    // 0.123 followed by the repeating block 345042
    const ExactRational alpha = ExactRational(123, 1000) + ExactRational(345042, 999999LL * 1000);
    std::ostringstream summary;
    bool ok = true;
    {
      ShiftedDigits s7 = shift_fractional(rational_stream(alpha, ten), 7);
      const std::string head = detail::join_digits(s7.integer_digits);
      const std::string tail = detail::join_digits(s7.fractional.take(12));
      DigitStream grouped = regroup_to_power_base(shift_fractional(rational_stream(alpha, ten), 7).fractional, 3);
      const std::string text1000 = format_digits(Base(1000), integer_digits(digits_value(s7.integer_digits, ten), Base(1000)),
                                                 grouped.take(4));
      ok = ok && head == "1233450" && tail == "423450423450" && text1000 == "[1][233][450].[423][450][423][450]";
      summary << head << "." << tail << " = " << text1000;
    }
    {
      ShiftedDigits s1 = shift_fractional(rational_stream(alpha, ten), 1);
      const std::string head = detail::join_digits(s1.integer_digits);
      const std::string tail = detail::join_digits(s1.fractional.take(14));
      DigitStream grouped = regroup_to_power_base(shift_fractional(rational_stream(alpha, ten), 1).fractional, 3);
      const std::string text1000 = format_digits(Base(1000), {1}, grouped.take(4));
      ok = ok && head == "1" && tail == "23345042345042" && text1000 == "[1].[233][450][423][450]";
      summary << "; " << head << "." << tail << " = " << text1000;
    }
    return Outcome{ok, summary.str()};
  });

  run("§3 block count", "p_{101,11} = 3 for 0.11010111011", [&] {
    DigitStream s = make_finite_stream(two, {1, 1, 0, 1, 0, 1, 1, 1, 0, 1, 1});
    const auto count = count_block(s, Word(two, {1, 0, 1}), 11);
    return Outcome{count == 3, "count " + std::to_string(count)};
  });

  run("Lemma-freq", "word 11 via base-4 digit 3 in the base-2 example", [&] {
    const std::vector<Digit> bits = parse_digit_literal("001001000011101101111110000100000110101100011110001", two);
    const PowerBaseBlockCount got = count_block_via_power_base(DigitTee(make_finite_stream(two, bits)), Word(two, {1, 1}), 25);
    const bool ok = got.per_shift == std::vector<std::uint64_t>{6, 7} && got.total == 13;
    return Outcome{ok, "shift 0: " + std::to_string(got.per_shift.at(0)) + ", shift 1: " +
                           std::to_string(got.per_shift.at(1))};
  });

  run("Eq. (binom)", "operator recursion matches closed coefficients, n <= 30, s <= 9, k <= 4", [&] {
    for (std::uint64_t n = 1; n <= 30; ++n)
      for (std::uint64_t s = 1; s <= 9; ++s)
        for (unsigned k = 0; k <= 4; ++k)
          if (!verify_binom_identity(n, s, k))
            return Outcome{false, "mismatch at n=" + std::to_string(n) + " s=" + std::to_string(s) + " k=" + std::to_string(k)};
    return Outcome{true, "1350 cases"};
  });

  run("Lemma 4", "f_4 at the special point equals 3(r-1)^2 n^2 + (r^3-7r^2+12r-6) n", [&] {
    std::size_t cases = 0;
    for (std::uint64_t r = 2; r <= 12; ++r)
      for (std::uint64_t n = 1; n <= options.closed_form_n_max; ++n, ++cases) {
        const ExactRational direct = eval_f4_specialized(n, Base(r));
        const ExactRational closed = closed_form_f4(n, Base(r)) + options.closed_form_offset;
        if (direct != closed)
          return Outcome{false, "n=" + std::to_string(n) + " r=" + std::to_string(r) + ": " + direct.to_string() +
                                    " != " + closed.to_string()};
      }
    return Outcome{true, std::to_string(cases) + " cases"};
  });

  run("Lemma 4", "sum * n^2 <= D with D = C/r^4", [&] {
    std::size_t cases = 0;
    for (std::uint64_t r = 2; r <= 12; ++r) {
      const std::uint64_t n_max = r <= 3 ? options.lemma_n_max_small_bases : options.lemma_n_max;
      for (const auto& row : check_main_lemma(Base(r), n_max)) {
        ++cases;
        if (!row.holds) return Outcome{false, "fails at r=" + std::to_string(r) + " n=" + std::to_string(row.n)};
      }
    }
    return Outcome{true, std::to_string(cases) + " cases, D(2) = " + derive_constants(two).D.to_string()};
  });

  run("§5 prefix interval", "numbers starting 0.141 form a set of measure 1/1000", [&] {
    const ExactRational m = prefix_interval_measure(Word(ten, {1, 4, 1}));
    return Outcome{m == ExactRational(1, 1000), m.to_string()};
  });

  run("Eq. (meas1)", "count measures over p = 0..n sum to 1", [&] {
    for (std::uint64_t r = 2; r <= 12; ++r)
      for (std::uint64_t n = 1; n <= 60; ++n) {
        ExactRational total(0);
        for (std::uint64_t p = 0; p <= n; ++p) total += exact_count_measure(Base(r), n, p);
        if (total != ExactRational(1)) return Outcome{false, "r=" + std::to_string(r) + " n=" + std::to_string(n)};
      }
    return Outcome{true, "r <= 12, n <= 60"};
  });

  const std::vector<ExactRational> epsilons{ExactRational(1, 10), ExactRational(1, 4), ExactRational(1, 3),
                                            ExactRational(1, 2)};

  run("§5 M_b(n,eps)", "formula equals full enumeration (r=2, n<=12; r=3, n<=9)", [&] {
    std::size_t cases = 0;
    for (std::uint64_t r : {2, 3})
      for (std::uint64_t n = 1; n <= (r == 2 ? 12u : 9u); ++n)
        for (Digit b = 0; b < r; ++b)
          for (const auto& eps : epsilons) {
            const DeviationSetSpec spec(Base(r), b, n, eps);
            ++cases;
            if (deviation_set_measure(spec).exact_measure != deviation_set_measure_bruteforce(spec))
              return Outcome{false, "r=" + std::to_string(r) + " n=" + std::to_string(n) + " b=" +
                                        std::to_string(b) + " eps=" + eps.to_string()};
          }
    return Outcome{true, std::to_string(cases) + " cases"};
  });

  run("Eq. (const)", "measure <= D/(eps^4 n^2), n <= 200, r <= 12", [&] {
    std::size_t cases = 0;
    for (std::uint64_t r = 2; r <= 12; ++r)
      for (std::uint64_t n = 1; n <= 200; ++n)
        for (const auto& eps : epsilons) {
          const MeasureReport rep = deviation_set_measure(DeviationSetSpec(Base(r), 0, n, eps));
          ++cases;
          if (rep.exact_measure > rep.bound)
            return Outcome{false, "r=" + std::to_string(r) + " n=" + std::to_string(n) + " eps=" + eps.to_string()};
        }
    return Outcome{true, std::to_string(cases) + " cases"};
  });

  run("§5 S_b(m,eps)", "tail bound 3/(m-1) in base 2 at eps = 1/2; witness m = 4 for target 1", [&] {
    for (std::uint64_t m = 2; m <= 1000; ++m)
      if (tail_measure_bound(two, ExactRational(1, 2), m) != ExactRational(BigInt(3), BigInt(m - 1)))
        return Outcome{false, "m=" + std::to_string(m)};
    const BigInt w = null_witness_m(two, ExactRational(1, 2), ExactRational(1));
    return Outcome{w == 4, "witness m = " + w.str()};
  });

  run("Lemma 1", "covering intervals of length eps/2^(k+1) total eps(1 - 2^-count)", [&] {
    std::vector<ExactRational> points;
    for (int d = 1; d <= 8; ++d)
      for (int num = 0; num < d; ++num) points.emplace_back(num, d);
    const ExactRational eps(1, 100);
    const auto cover = cover_enumerated_prefix(points, eps);
    bool ok = total_length(cover) ==
              eps * (ExactRational(1) - ExactRational(BigInt(1), ipow(2, points.size())));
    ok = ok && total_length(cover) < eps;
    for (std::size_t k = 0; k < points.size(); ++k) ok = ok && cover[k].contains(points[k]);
    return Outcome{ok, std::to_string(points.size()) + " points"};
  });

  return results;
}

inline bool all_passed(const std::vector<CheckResult>& results) {
  for (const auto& r : results)
    if (r.status == CheckStatus::fail) return false;
  return true;
}

}  // namespace normality
