#pragma once

#include <cstdint>

#include "normality/exact_rational.hpp"

namespace normality {

/// C(n, p); zero when p > n.
inline BigInt binomial(std::uint64_t n, std::uint64_t p) {
  if (p > n) return 0;
  if (p > n - p) p = n - p;
  BigInt result = 1;
  // result stays integral: after step i it equals C(n - p + i, i)
  for (std::uint64_t i = 1; i <= p; ++i) {
    result *= n - p + i;
    result /= i;
  }
  return result;
}

}  // namespace normality
