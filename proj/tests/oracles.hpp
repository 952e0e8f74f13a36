#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library routine it is used to check.

#include <cstdint>
#include <vector>

#include "normality/exact_rational.hpp"

namespace normality::oracle {

/// Row n of Pascal's triangle by the additive recurrence.
inline std::vector<BigInt> pascal_row(std::uint64_t n) {
  std::vector<BigInt> row{1};
  for (std::uint64_t i = 1; i <= n; ++i) {
    std::vector<BigInt> next(row.size() + 1, 0);
    for (std::size_t j = 0; j < row.size(); ++j) {
      next[j] += row[j];
      next[j + 1] += row[j];
    }
    row = std::move(next);
  }
  return row;
}

/// First `count` base-r digits of num/den in [0,1) by schoolbook division on
/// machine integers (den * r must fit in 64 bits).
inline std::vector<std::uint64_t> small_long_division(std::uint64_t num, std::uint64_t den, std::uint64_t r,
                                                      std::size_t count) {
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i < count; ++i) {
    num *= r;
    out.push_back(num / den);
    num %= den;
  }
  return out;
}

/// Occurrences of w starting at 1-based positions 1..last_start.
inline std::uint64_t windows_starting_up_to(const std::vector<std::uint64_t>& digits,
                                            const std::vector<std::uint64_t>& w, std::size_t last_start) {
  std::uint64_t count = 0;
  for (std::size_t j = 0; j < last_start && j + w.size() <= digits.size(); ++j) {
    bool match = true;
    for (std::size_t i = 0; i < w.size(); ++i) match = match && digits[j + i] == w[i];
    count += match;
  }
  return count;
}

/// sum_p C(n,p) (rp - n)^4 (1/r)^p ((r-1)/r)^(n-p), term by term in rationals.
inline ExactRational f4_direct_sum(std::uint64_t n, std::uint64_t r) {
  const auto row = pascal_row(n);
  const ExactRational u(1, static_cast<long long>(r));
  const ExactRational y(static_cast<long long>(r) - 1, static_cast<long long>(r));
  ExactRational sum(0);
  for (std::uint64_t p = 0; p <= n; ++p) {
    const BigInt gap = BigInt(r) * p - BigInt(n);
    ExactRational term(row[p] * gap * gap * gap * gap);
    for (std::uint64_t i = 0; i < p; ++i) term *= u;
    for (std::uint64_t i = p; i < n; ++i) term *= y;
    sum += term;
  }
  return sum;
}

}  // namespace normality::oracle
