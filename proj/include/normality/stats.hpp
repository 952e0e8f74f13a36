#pragma once

// Digit and block frequencies over stream prefixes, simple-normality reports,
// and the shift/regroup battery that checks r^m * alpha in base r^n.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <future>
#include <stdexcept>
#include <string>
#include <vector>

#include "normality/exact_rational.hpp"
#include "normality/radix.hpp"

namespace normality {

/// Digit counts p_{b,n} for the first n digits of one stream.
struct FrequencyTable {
  Base base;
  std::size_t n = 0;
  std::vector<std::uint64_t> counts;  // indexed by digit
};

/// Counts every digit among the next n digits of the stream.
inline FrequencyTable tally(DigitStream& stream, std::size_t n) {
  FrequencyTable table{stream.base(), n, std::vector<std::uint64_t>(stream.base().radix(), 0)};
  const std::size_t target = stream.position() + n;
  for (std::size_t i = 0; i < n; ++i) {
    auto d = stream.try_next();
    if (!d) throw InsufficientDigits(stream.position(), target);
    ++table.counts[*d];
  }
  return table;
}

/// Occurrences of digit b among the next n digits; consumes exactly n digits.
inline std::uint64_t count_digit(DigitStream& stream, Digit b, std::size_t n) {
  if (!stream.base().contains(b))
    throw std::invalid_argument("digit " + std::to_string(b) + " is not in base " +
                                std::to_string(stream.base().radix()));
  std::uint64_t count = 0;
  const std::size_t target = stream.position() + n;
  for (std::size_t i = 0; i < n; ++i) {
    auto d = stream.try_next();
    if (!d) throw InsufficientDigits(stream.position(), target);
    count += (*d == b);
  }
  return count;
}

/// Nonempty digit sequence in a fixed base.
class Word {
 public:
  Word(Base base, std::vector<Digit> digits) : base_(base), digits_(std::move(digits)) {
    if (digits_.empty()) throw std::invalid_argument("a word needs at least one digit");
    for (Digit d : digits_)
      if (!base_.contains(d))
        throw std::invalid_argument("digit " + std::to_string(d) + " is not in base " + std::to_string(base_.radix()));
  }

  Base base() const { return base_; }
  const std::vector<Digit>& digits() const { return digits_; }
  std::size_t size() const { return digits_.size(); }

  /// The word read as a single digit of base r^|w|.
  Digit as_power_base_digit() const {
    (void)base_.power(static_cast<unsigned>(digits_.size()));  // overflow check
    Digit value = 0;
    for (Digit d : digits_) value = value * base_.radix() + d;
    return value;
  }

 private:
  Base base_;
  std::vector<Digit> digits_;
};

/// Windows j with j + |w| - 1 <= n matching w, overlaps included. Consumes
/// exactly n digits.
inline std::uint64_t count_block(DigitStream& stream, const Word& w, std::size_t n) {
  if (!(stream.base() == w.base())) throw std::invalid_argument("word and stream use different bases");
  const auto& pattern = w.digits();
  std::deque<Digit> window;
  std::uint64_t count = 0;
  const std::size_t target = stream.position() + n;
  for (std::size_t i = 0; i < n; ++i) {
    auto d = stream.try_next();
    if (!d) throw InsufficientDigits(stream.position(), target);
    window.push_back(*d);
    if (window.size() > pattern.size()) window.pop_front();
    if (window.size() == pattern.size() && std::equal(window.begin(), window.end(), pattern.begin())) ++count;
  }
  return count;
}

/// Exact deviations |p_{b,n}/n - 1/r| for every digit b at one prefix length.
struct NormalityReport {
  Base base;
  std::size_t n = 0;
  std::vector<std::uint64_t> counts;
  std::vector<ExactRational> deviations;
  ExactRational max_deviation;
};

inline NormalityReport make_report(const FrequencyTable& table) {
  if (table.n == 0) throw std::invalid_argument("normality report needs n >= 1");
  const ExactRational expected(1, table.base.radix());
  NormalityReport report{table.base, table.n, table.counts, {}, ExactRational(0)};
  report.deviations.reserve(table.counts.size());
  for (std::uint64_t c : table.counts) {
    ExactRational dev = abs(ExactRational(BigInt(c), BigInt(table.n)) - expected);
    if (dev > report.max_deviation) report.max_deviation = dev;
    report.deviations.push_back(std::move(dev));
  }
  return report;
}

inline NormalityReport simple_normality_report(DigitStream& stream, std::size_t n) {
  return make_report(tally(stream, n));
}

/// One cell of the battery: r^m * alpha examined in base r^n.
struct BatteryCell {
  unsigned m = 0;
  unsigned n = 0;
  NormalityReport report;
};

/// Reports for every pair m < n <= max_power, each over `prefix` digits of
/// base r^n. This is the finite-prefix form of the reduction that simple
/// normality of r^m * alpha in base r^n for all m < n implies normality.
/// Cells run concurrently; the result is ordered by (n, m).
inline std::vector<BatteryCell> normality_battery(const DigitTee& source, unsigned max_power, std::size_t prefix) {
  if (max_power == 0) throw std::invalid_argument("battery needs a maximum power of at least 1");
  if (prefix == 0) throw std::invalid_argument("battery needs a prefix of at least one digit");
  const std::size_t needed = prefix * max_power + max_power - 1;
  if (const std::size_t have = source.materialize(needed); have < needed) throw InsufficientDigits(have, needed);

  std::vector<std::future<BatteryCell>> pending;
  for (unsigned n = 1; n <= max_power; ++n) {
    (void)source.base().power(n);
    for (unsigned m = 0; m < n; ++m) {
      pending.push_back(std::async(std::launch::async, [&source, m, n, prefix] {
        ShiftedDigits shifted = shift_fractional(source.fork(), m);
        DigitStream grouped = regroup_to_power_base(std::move(shifted.fractional), n);
        return BatteryCell{m, n, simple_normality_report(grouped, prefix)};
      }));
    }
  }
  std::vector<BatteryCell> cells;
  cells.reserve(pending.size());
  for (auto& f : pending) cells.push_back(f.get());
  return cells;
}

struct PowerBaseBlockCount {
  std::uint64_t total = 0;
  /// Contribution of frac(r^c * alpha) for c = 0 .. |w|-1.
  std::vector<std::uint64_t> per_shift;
};

/// Counts w by reading it as one digit of base r^|w| in each of the |w|
/// shifted, regrouped streams. Shift c sees exactly the occurrences starting
/// at positions j = c+1, c+1+|w|, ... with j <= k|w|, so the total covers
/// all start positions up to k|w| inside the first k|w| + |w| - 1 digits.
inline PowerBaseBlockCount count_block_via_power_base(const DigitTee& source, const Word& w, std::size_t k) {
  if (!(source.base() == w.base())) throw std::invalid_argument("word and source use different bases");
  const auto n = static_cast<unsigned>(w.size());
  const Digit target = w.as_power_base_digit();
  PowerBaseBlockCount result;
  for (unsigned c = 0; c < n; ++c) {
    ShiftedDigits shifted = shift_fractional(source.fork(), c);
    DigitStream grouped = regroup_to_power_base(std::move(shifted.fractional), n);
    const std::uint64_t hits = count_digit(grouped, target, k);
    result.per_shift.push_back(hits);
    result.total += hits;
  }
  return result;
}

}  // namespace normality
