#pragma once

// Exact Lebesgue measures of digit-constraint subsets of [0,1).
//
// The set of alpha whose first n base-r digits contain the digit b exactly p
// times is a disjoint union of C(n,p) (r-1)^(n-p) intervals of length r^-n.
// M_b(n, eps) collects the counts p with |p/n - 1/r| >= eps; its measure is
// bounded through the fourth-moment lemma by D / (eps^4 n^2).

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "normality/combinatorics.hpp"
#include "normality/exact_rational.hpp"
#include "normality/lemma.hpp"
#include "normality/radix.hpp"
#include "normality/sources.hpp"
#include "normality/stats.hpp"

namespace normality {

/// Parameters of M_b(n, eps): base, digit, prefix length, threshold.
class DeviationSetSpec {
 public:
  DeviationSetSpec(Base r, Digit b, std::uint64_t n, ExactRational epsilon)
      : r_(r), b_(b), n_(n), epsilon_(std::move(epsilon)) {
    if (!r.contains(b))
      throw std::invalid_argument("digit " + std::to_string(b) + " is not in base " + std::to_string(r.radix()));
    if (n == 0) throw std::invalid_argument("prefix length must be at least 1");
    if (epsilon_ <= ExactRational(0) || epsilon_ >= ExactRational(1))
      throw std::invalid_argument("epsilon must lie in (0,1), got " + epsilon_.to_string());
  }

  Base r() const { return r_; }
  Digit b() const { return b_; }
  std::uint64_t n() const { return n_; }
  const ExactRational& epsilon() const { return epsilon_; }

  /// |p/n - 1/r| >= eps, decided exactly.
  bool deviates(std::uint64_t p) const {
    const ExactRational gap = abs(ExactRational(BigInt(p), BigInt(n_)) - ExactRational(1, static_cast<long long>(r_.radix())));
    return gap >= epsilon_;
  }

 private:
  Base r_;
  Digit b_;
  std::uint64_t n_;
  ExactRational epsilon_;
};

struct MeasureReport {
  DeviationSetSpec spec;
  ExactRational exact_measure;
  ExactRational bound;
  std::vector<std::uint64_t> admissible_p;
};

/// Measure of the numbers whose expansion starts with w: r^-|w|.
inline ExactRational prefix_interval_measure(const Word& w) {
  return ExactRational(BigInt(1), ipow(w.base().radix(), w.size()));
}

/// C(n,p) (r-1)^(n-p) / r^n.
inline ExactRational exact_count_measure(Base r, std::uint64_t n, std::uint64_t p) {
  if (p > n)
    throw std::domain_error("count " + std::to_string(p) + " exceeds prefix length " + std::to_string(n));
  const BigInt rr = r.radix();
  return ExactRational(binomial(n, p) * ipow(rr - 1, n - p), ipow(rr, n));
}

/// D / (eps^4 n^2).
inline ExactRational deviation_bound(Base r, const ExactRational& epsilon, std::uint64_t n) {
  if (epsilon <= ExactRational(0) || epsilon >= ExactRational(1))
    throw std::invalid_argument("epsilon must lie in (0,1), got " + epsilon.to_string());
  if (n == 0) throw std::invalid_argument("prefix length must be at least 1");
  return derive_constants(r).D / (rational_pow(epsilon, 4) * ExactRational(BigInt(n) * n));
}

inline MeasureReport deviation_set_measure(const DeviationSetSpec& spec) {
  MeasureReport report{spec, ExactRational(0), deviation_bound(spec.r(), spec.epsilon(), spec.n()), {}};
  // every term shares the denominator r^n
  const BigInt rr = spec.r().radix();
  BigInt numerator = 0;
  for (std::uint64_t p = 0; p <= spec.n(); ++p) {
    if (!spec.deviates(p)) continue;
    report.admissible_p.push_back(p);
    numerator += binomial(spec.n(), p) * ipow(rr - 1, spec.n() - p);
  }
  report.exact_measure = ExactRational(std::move(numerator), ipow(rr, spec.n()));
  return report;
}

inline constexpr std::uint64_t kDefaultEnumerationBudget = 20'000'000;

/// The brute-force oracle would need more strings than allowed.
class EnumerationBudgetExceeded : public std::runtime_error {
 public:
  EnumerationBudgetExceeded(BigInt required, std::uint64_t budget)
      : std::runtime_error("enumeration needs " + required.str() + " digit strings, budget is " +
                           std::to_string(budget) + " (raise it with --budget)"),
        required_(std::move(required)),
        budget_(budget) {}

  const BigInt& required() const { return required_; }
  std::uint64_t budget() const { return budget_; }

 private:
  BigInt required_;
  std::uint64_t budget_;
};

/// Walks all r^n digit strings and returns the fraction whose digit-b
/// frequency deviates by at least eps. Refuses when r^n exceeds the budget.
inline ExactRational deviation_set_measure_bruteforce(const DeviationSetSpec& spec,
                                                      std::uint64_t budget = kDefaultEnumerationBudget) {
  const BigInt total = ipow(spec.r().radix(), spec.n());
  if (total > budget) throw EnumerationBudgetExceeded(total, budget);

  const std::uint64_t radix = spec.r().radix();
  const auto n = static_cast<std::size_t>(spec.n());
  // |count/n - 1/r| >= num/den  <=>  |r*count - n| * den >= num * r * n
  const BigInt eps_num = spec.epsilon().numerator();
  const BigInt eps_den = spec.epsilon().denominator();
  const BigInt rhs = eps_num * radix * n;

  std::vector<Digit> digits(n, 0);
  std::uint64_t count_b = spec.b() == 0 ? n : 0;
  std::uint64_t hits = 0;
  for (;;) {
    const auto gap = static_cast<long long>(radix * count_b) - static_cast<long long>(n);
    if (BigInt(gap < 0 ? -gap : gap) * eps_den >= rhs) ++hits;

    // odometer increment, tracking the number of b digits
    std::size_t i = 0;
    for (; i < n; ++i) {
      if (digits[i] == spec.b()) --count_b;
      if (++digits[i] < radix) {
        if (digits[i] == spec.b()) ++count_b;
        break;
      }
      digits[i] = 0;
      if (spec.b() == 0) ++count_b;
    }
    if (i == n) break;
  }
  return ExactRational(BigInt(hits), total);
}

/// Rigorous rational upper bound on sum_{n >= m} 1/n^2: 2 for m = 1 and
/// 1/(m-1) otherwise (telescoping 1/n^2 <= 1/(n(n-1))).
inline ExactRational tail_sum_bound(std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("tail index must be at least 1");
  if (m == 1) return ExactRational(2);
  return ExactRational(BigInt(1), BigInt(m - 1));
}

/// Bound on the measure of S_b(m, eps), the union of M_b(n, eps) over n >= m.
inline ExactRational tail_measure_bound(Base r, const ExactRational& epsilon, std::uint64_t m) {
  if (epsilon <= ExactRational(0)) throw std::invalid_argument("epsilon must be positive");
  return derive_constants(r).D / rational_pow(epsilon, 4) * tail_sum_bound(m);
}

/// Smallest m whose tail bound is at most `target`.
inline BigInt null_witness_m(Base r, const ExactRational& epsilon, const ExactRational& target) {
  if (target <= ExactRational(0)) throw std::invalid_argument("target must be positive");
  if (epsilon <= ExactRational(0)) throw std::invalid_argument("epsilon must be positive");
  const ExactRational scale = derive_constants(r).D / rational_pow(epsilon, 4);
  if (scale * ExactRational(2) <= target) return 1;
  // scale / (m-1) <= target  <=>  m - 1 >= scale / target
  const ExactRational ratio = scale / target;
  BigInt m_minus_one = floor(ratio);
  if (ExactRational(m_minus_one) < ratio) m_minus_one += 1;
  if (m_minus_one < 1) m_minus_one = 1;
  return m_minus_one + 1;
}

struct CoverInterval {
  ExactRational center;
  ExactRational halfwidth;

  ExactRational length() const { return halfwidth * ExactRational(2); }
  bool contains(const ExactRational& x) const { return abs(x - center) <= halfwidth; }
};

/// Interval k, centred on points[k], has length eps / 2^(k+1); the total is
/// eps (1 - 2^-count) < eps.
inline std::vector<CoverInterval> cover_enumerated_prefix(const std::vector<ExactRational>& points,
                                                          const ExactRational& epsilon) {
  if (epsilon <= ExactRational(0)) throw std::invalid_argument("epsilon must be positive");
  std::vector<CoverInterval> cover;
  cover.reserve(points.size());
  ExactRational halfwidth = epsilon / ExactRational(4);
  for (const auto& x : points) {
    cover.push_back({x, halfwidth});
    halfwidth /= ExactRational(2);
  }
  return cover;
}

inline ExactRational total_length(const std::vector<CoverInterval>& cover) {
  ExactRational sum(0);
  for (const auto& iv : cover) sum += iv.length();
  return sum;
}

/// Fraction of `samples` uniform digit strings of length n that land in
/// M_b(n, eps). Strings are consecutive blocks of random_stream(r, seed).
inline ExactRational monte_carlo_deviation(const DeviationSetSpec& spec, std::uint64_t samples, std::uint64_t seed) {
  if (samples == 0) throw std::invalid_argument("need at least one sample");
  // whether each count qualifies is decided once, exactly
  std::vector<bool> qualifies(spec.n() + 1);
  for (std::uint64_t p = 0; p <= spec.n(); ++p) qualifies[p] = spec.deviates(p);

  DigitStream stream = random_stream(spec.r(), seed);
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < samples; ++i) hits += qualifies[count_digit(stream, spec.b(), spec.n())];
  return ExactRational(BigInt(hits), BigInt(samples));
}

}  // namespace normality
