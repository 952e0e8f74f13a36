#pragma once

// Digit expansions in an integer base r >= 2.
//
// Digits after the radix point are delivered by DigitStream, a single-pass,
// pull-based sequence. DigitTee buffers one stream so several consumers can
// read it independently. Rationals are expanded by long division with
// remainder tracking, which also yields the (preperiod, period) structure.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "normality/exact_rational.hpp"

namespace normality {

using Digit = std::uint64_t;

class Base {
 public:
  explicit Base(std::uint64_t radix) : radix_(radix) {
    if (radix < 2) throw std::invalid_argument("base must be at least 2, got " + std::to_string(radix));
  }

  std::uint64_t radix() const { return radix_; }
  bool contains(Digit d) const { return d < radix_; }

  /// r^n; throws std::overflow_error when it does not fit in 64 bits.
  Base power(unsigned n) const {
    if (n == 0) throw std::invalid_argument("power base needs a positive exponent");
    std::uint64_t value = 1;
    for (unsigned i = 0; i < n; ++i) {
      if (value > UINT64_MAX / radix_)
        throw std::overflow_error("base " + std::to_string(radix_) + "^" + std::to_string(n) +
                                  " exceeds 64 bits");
      value *= radix_;
    }
    return Base(value);
  }

  friend bool operator==(const Base&, const Base&) = default;

 private:
  std::uint64_t radix_;
};

/// A stream ran out before the requested number of digits.
class InsufficientDigits : public std::runtime_error {
 public:
  InsufficientDigits(std::size_t available, std::size_t requested)
      : std::runtime_error("insufficient digits: requested " + std::to_string(requested) + ", only " +
                           std::to_string(available) + " available"),
        available_(available),
        requested_(requested) {}

  std::size_t available() const { return available_; }
  std::size_t requested() const { return requested_; }

 private:
  std::size_t available_;
  std::size_t requested_;
};

/// Producer behind a DigitStream. Returns std::nullopt once exhausted.
class DigitSource {
 public:
  virtual ~DigitSource() = default;
  virtual std::optional<Digit> pull() = 0;
};

class DigitStream {
 public:
  DigitStream(Base base, std::unique_ptr<DigitSource> source) : base_(base), source_(std::move(source)) {}

  Base base() const { return base_; }
  /// Number of digits yielded so far.
  std::size_t position() const { return position_; }

  std::optional<Digit> try_next() {
    std::optional<Digit> d = source_->pull();
    if (!d) return std::nullopt;
    if (!base_.contains(*d))
      throw std::logic_error("digit source produced " + std::to_string(*d) + " in base " +
                             std::to_string(base_.radix()));
    ++position_;
    return d;
  }

  Digit next() {
    if (auto d = try_next()) return *d;
    throw InsufficientDigits(position_, position_ + 1);
  }

  std::vector<Digit> take(std::size_t count) {
    std::vector<Digit> out;
    out.reserve(count);
    const std::size_t target = position_ + count;
    for (std::size_t i = 0; i < count; ++i) {
      auto d = try_next();
      if (!d) throw InsufficientDigits(position_, target);
      out.push_back(*d);
    }
    return out;
  }

  void skip(std::size_t count) {
    const std::size_t target = position_ + count;
    for (std::size_t i = 0; i < count; ++i)
      if (!try_next()) throw InsufficientDigits(position_, target);
  }

 private:
  Base base_;
  std::unique_ptr<DigitSource> source_;
  std::size_t position_ = 0;
};

/// Finite, in-memory digit source.
class VectorDigitSource final : public DigitSource {
 public:
  explicit VectorDigitSource(std::vector<Digit> digits) : digits_(std::move(digits)) {}
  std::optional<Digit> pull() override {
    if (index_ == digits_.size()) return std::nullopt;
    return digits_[index_++];
  }

 private:
  std::vector<Digit> digits_;
  std::size_t index_ = 0;
};

inline DigitStream make_finite_stream(Base base, std::vector<Digit> digits) {
  return DigitStream(base, std::make_unique<VectorDigitSource>(std::move(digits)));
}

/// Shared buffer over one upstream stream. Every fork() reads the full
/// sequence from the start; the upstream is pulled at most once per digit.
/// Forks may be read from different threads.
class DigitTee {
 public:
  explicit DigitTee(DigitStream upstream) : state_(std::make_shared<State>(std::move(upstream))) {}

  Base base() const { return state_->base; }

  DigitStream fork() const { return DigitStream(state_->base, std::make_unique<Reader>(state_)); }

  /// Buffers up to `count` digits; returns how many are available (< count
  /// only when the upstream is exhausted).
  std::size_t materialize(std::size_t count) const {
    std::lock_guard lock(state_->mutex);
    state_->fill_to(count);
    return state_->size;
  }

 private:
  static constexpr std::size_t kChunk = 4096;

  struct State {
    explicit State(DigitStream up) : base(up.base()), upstream(std::move(up)) {}

    // Caller holds the mutex. Chunks never move once allocated.
    void fill_to(std::size_t count) {
      while (size < count && !exhausted) {
        auto d = upstream.try_next();
        if (!d) {
          exhausted = true;
          break;
        }
        if (size % kChunk == 0) chunks.push_back(std::make_unique<Digit[]>(kChunk));
        chunks.back()[size % kChunk] = *d;
        ++size;
      }
    }

    Base base;
    std::mutex mutex;
    DigitStream upstream;
    std::deque<std::unique_ptr<Digit[]>> chunks;
    std::size_t size = 0;
    bool exhausted = false;
  };

  class Reader final : public DigitSource {
   public:
    explicit Reader(std::shared_ptr<State> state) : state_(std::move(state)) {}

    std::optional<Digit> pull() override {
      if (index_ < visible_end_) return chunk_[index_++ % kChunk];
      std::lock_guard lock(state_->mutex);
      state_->fill_to(index_ + 1);
      if (index_ >= state_->size) return std::nullopt;
      chunk_ = state_->chunks[index_ / kChunk].get();
      const std::size_t chunk_end = (index_ / kChunk + 1) * kChunk;
      visible_end_ = std::min(chunk_end, state_->size);
      return chunk_[index_++ % kChunk];
    }

   private:
    std::shared_ptr<State> state_;
    std::size_t index_ = 0;
    std::size_t visible_end_ = 0;
    const Digit* chunk_ = nullptr;
  };

  std::shared_ptr<State> state_;
};

/// (preperiod length, period length) of an eventually periodic expansion.
struct Period {
  std::size_t preperiod = 0;
  std::size_t length = 0;
  friend bool operator==(const Period&, const Period&) = default;
};

/// Long division of a fraction in [0,1). Digits are cached; once a remainder
/// repeats the period is known and further digits are read from the cycle.
class LongDivision {
 public:
  LongDivision(const ExactRational& fraction, Base base)
      : remainder_(fraction.numerator()), denominator_(fraction.denominator()), base_(base) {
    if (fraction.sign() < 0 || fraction >= ExactRational(1))
      throw std::domain_error("long division expects a value in [0,1), got " + fraction.to_string());
  }

  Base base() const { return base_; }
  const std::optional<Period>& period() const { return period_; }
  std::size_t computed() const { return digits_.size(); }

  /// One division step. Returns false once the period is known.
  bool advance() {
    if (period_) return false;
    const std::size_t step = digits_.size();
    if (auto it = seen_.find(remainder_); it != seen_.end()) {
      period_ = Period{it->second, step - it->second};
      seen_.clear();
      return false;
    }
    seen_.emplace(remainder_, step);
    remainder_ *= base_.radix();
    BigInt digit = remainder_ / denominator_;
    remainder_ -= digit * denominator_;
    digits_.push_back(static_cast<Digit>(digit));
    return true;
  }

  Digit digit_at(std::size_t index) {
    while (index >= digits_.size() && advance()) {
    }
    if (index < digits_.size()) return digits_[index];
    return digits_[period_->preperiod + (index - period_->preperiod) % period_->length];
  }

 private:
  BigInt remainder_;
  BigInt denominator_;
  Base base_;
  std::vector<Digit> digits_;
  std::map<BigInt, std::size_t> seen_;
  std::optional<Period> period_;
};

/// Infinite stream over a shared LongDivision.
class LongDivisionSource final : public DigitSource {
 public:
  explicit LongDivisionSource(std::shared_ptr<LongDivision> division) : division_(std::move(division)) {}
  std::optional<Digit> pull() override { return division_->digit_at(index_++); }

 private:
  std::shared_ptr<LongDivision> division_;
  std::size_t index_ = 0;
};

/// Base-r digits of a non-negative integer, most significant first; empty for 0.
inline std::vector<Digit> integer_digits(BigInt value, Base base) {
  if (value < 0) throw std::domain_error("negative integer has no digit expansion here");
  std::vector<Digit> out;
  while (value != 0) {
    out.push_back(static_cast<Digit>(value % base.radix()));
    value /= base.radix();
  }
  return {out.rbegin(), out.rend()};
}

/// Value of a most-significant-first digit list.
inline BigInt digits_value(const std::vector<Digit>& digits, Base base) {
  BigInt value = 0;
  for (Digit d : digits) value = value * base.radix() + d;
  return value;
}

struct DigitExpansion {
  Base base;
  /// Most significant first; empty when the integer part is 0.
  std::vector<Digit> integer_digits;
  /// d in alpha = sum_{j >= -d} alpha_j r^-j, with alpha_{-d} the leading
  /// nonzero digit; -1 for zero. Unknown when no nonzero digit was found in
  /// the inspected prefix of a stream-backed expansion.
  std::optional<std::int64_t> leading_index;
  DigitTee fractional;
  /// Known for rational expansions whose period was detected.
  std::optional<Period> period;

  /// A fresh reader over the fractional digits, starting after the radix point.
  DigitStream fractional_digits() const { return fractional.fork(); }
};

/// Expansion of q >= 0. Materializes at least `count` fractional digits and
/// keeps dividing (up to `detection_budget` further steps) until the period
/// is found. Long division never produces an infinite tail of r-1 digits.
inline DigitExpansion expand_rational(const ExactRational& q, Base base, std::size_t count,
                                      std::size_t detection_budget = std::size_t{1} << 20) {
  if (q.sign() < 0) throw std::domain_error("negative numbers are not expanded: " + q.to_string());
  const BigInt whole = floor(q);
  const ExactRational fraction = q - ExactRational(whole);

  auto division = std::make_shared<LongDivision>(fraction, base);
  while (division->computed() < count && division->advance()) {
  }
  for (std::size_t i = 0; i < detection_budget && division->advance(); ++i) {
  }

  std::optional<std::int64_t> leading;
  std::vector<Digit> int_digits = integer_digits(whole, base);
  if (!int_digits.empty()) {
    leading = static_cast<std::int64_t>(int_digits.size()) - 1;
  } else if (fraction.is_zero()) {
    leading = -1;
  } else {
    // smallest j >= 1 with q * r^j >= 1
    std::int64_t j = 1;
    BigInt scaled = fraction.numerator() * base.radix();
    while (scaled < fraction.denominator()) {
      scaled *= base.radix();
      ++j;
    }
    leading = -j;
  }

  DigitTee tee(DigitStream(base, std::make_unique<LongDivisionSource>(division)));
  tee.materialize(count);
  return DigitExpansion{base, std::move(int_digits), leading, std::move(tee), division->period()};
}

/// Expansion backed by an arbitrary fractional stream plus a known integer
/// part. The leading index is located by scanning at most `scan_limit` digits.
inline DigitExpansion expansion_from_stream(const BigInt& integer_part, DigitStream fractional,
                                            std::size_t scan_limit = 4096) {
  const Base base = fractional.base();
  std::vector<Digit> int_digits = integer_digits(integer_part, base);
  DigitTee tee(std::move(fractional));
  std::optional<std::int64_t> leading;
  if (!int_digits.empty()) {
    leading = static_cast<std::int64_t>(int_digits.size()) - 1;
  } else {
    DigitStream probe = tee.fork();
    for (std::int64_t j = 1; j <= static_cast<std::int64_t>(scan_limit); ++j) {
      auto d = probe.try_next();
      if (!d) {
        leading = -1;  // finite prefix of zeros: the value shown is 0
        break;
      }
      if (*d != 0) {
        leading = -j;
        break;
      }
    }
  }
  return DigitExpansion{base, std::move(int_digits), leading, std::move(tee), std::nullopt};
}

/// True when the detected cycle consists only of the digit r-1 (the
/// representation that uniqueness condition (ii) forbids).
inline bool has_max_digit_tail(const DigitExpansion& e) {
  if (!e.period) return false;
  DigitStream s = e.fractional_digits();
  s.skip(e.period->preperiod);
  for (std::size_t i = 0; i < e.period->length; ++i)
    if (s.next() != e.base.radix() - 1) return false;
  return true;
}

namespace detail {

class RegroupSource final : public DigitSource {
 public:
  RegroupSource(DigitStream upstream, unsigned group) : upstream_(std::move(upstream)), group_(group) {}

  std::optional<Digit> pull() override {
    Digit value = 0;
    for (unsigned i = 0; i < group_; ++i) {
      auto d = upstream_.try_next();
      if (!d) return std::nullopt;
      value = value * upstream_.base().radix() + *d;
    }
    return value;
  }

 private:
  DigitStream upstream_;
  unsigned group_;
};

}  // namespace detail

/// Base r^n stream whose k-th digit combines base-r digits (k-1)n+1 .. kn.
/// A trailing partial group counts as exhaustion.
inline DigitStream regroup_to_power_base(DigitStream stream, unsigned n) {
  const Base target = stream.base().power(n);
  if (n == 1) return stream;
  return DigitStream(target, std::make_unique<detail::RegroupSource>(std::move(stream), n));
}

struct ShiftedDigits {
  /// The first m digits: integer part of r^m * alpha, leading zeros kept.
  std::vector<Digit> integer_digits;
  /// Fractional digits of r^m * alpha.
  DigitStream fractional;
};

/// Multiplication of alpha in [0,1) by r^m, as a digit shift.
inline ShiftedDigits shift_fractional(DigitStream stream, std::size_t m) {
  std::vector<Digit> head = stream.take(m);
  return ShiftedDigits{std::move(head), std::move(stream)};
}

/// Single digit in the display notation: bare for bases up to 10, "[a]" above.
inline std::string format_digit(Digit d, Base base) {
  if (base.radix() <= 10) return std::to_string(d);
  return "[" + std::to_string(d) + "]";
}

/// Integer digits, radix point, then the given fractional digits.
inline std::string format_digits(Base base, const std::vector<Digit>& integer_part,
                                 const std::vector<Digit>& fractional_part) {
  std::string out;
  if (integer_part.empty()) {
    out += format_digit(0, base);
  } else {
    for (Digit d : integer_part) out += format_digit(d, base);
  }
  out += '.';
  for (Digit d : fractional_part) out += format_digit(d, base);
  return out;
}

/// Bracket-notation rendering with exactly `count` fractional digits.
inline std::string format_bracket(const DigitExpansion& e, std::size_t count) {
  DigitStream digits = e.fractional_digits();
  return format_digits(e.base, e.integer_digits, digits.take(count));
}

}  // namespace normality
