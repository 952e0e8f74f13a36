#pragma once

// Exact rational arithmetic over arbitrary-precision integers.
//
// Every measure, bound and frequency in the library is an ExactRational, so
// comparisons such as |p/n - 1/r| >= eps are decided exactly, including the
// boundary case of equality.

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace normality {

using BigInt = boost::multiprecision::cpp_int;

/// Integer power with a non-negative exponent.
inline BigInt ipow(BigInt base, std::uint64_t exponent) {
  BigInt result = 1;
  while (exponent != 0) {
    if (exponent & 1u) result *= base;
    exponent >>= 1;
    if (exponent != 0) base *= base;
  }
  return result;
}

/// Parses an optionally signed decimal integer. Throws std::invalid_argument.
inline BigInt parse_bigint(std::string_view text) {
  std::string_view digits = text;
  bool negative = false;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) {
    negative = digits.front() == '-';
    digits.remove_prefix(1);
  }
  if (digits.empty()) throw std::invalid_argument("empty integer literal");
  BigInt value = 0;
  for (char c : digits) {
    if (c < '0' || c > '9')
      throw std::invalid_argument("invalid integer literal '" + std::string(text) + "'");
    value = value * 10 + (c - '0');
  }
  return negative ? BigInt(-value) : value;
}

class ExactRational {
 public:
  ExactRational() : num_(0), den_(1) {}
  ExactRational(BigInt integer) : num_(std::move(integer)), den_(1) {}  // NOLINT(google-explicit-constructor)
  ExactRational(long long integer) : num_(integer), den_(1) {}          // NOLINT(google-explicit-constructor)
  ExactRational(int integer) : num_(integer), den_(1) {}                // NOLINT(google-explicit-constructor)

  ExactRational(BigInt numerator, BigInt denominator)
      : num_(std::move(numerator)), den_(std::move(denominator)) {
    normalize();
  }

  const BigInt& numerator() const { return num_; }
  const BigInt& denominator() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return num_ < 0 ? -1 : (num_ > 0 ? 1 : 0); }

  ExactRational operator-() const {
    ExactRational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  ExactRational& operator+=(const ExactRational& rhs) {
    if (den_ == rhs.den_) {
      num_ += rhs.num_;
    } else {
      num_ = num_ * rhs.den_ + rhs.num_ * den_;
      den_ *= rhs.den_;
    }
    normalize();
    return *this;
  }
  ExactRational& operator-=(const ExactRational& rhs) { return *this += -rhs; }
  ExactRational& operator*=(const ExactRational& rhs) {
    num_ *= rhs.num_;
    den_ *= rhs.den_;
    normalize();
    return *this;
  }
  ExactRational& operator/=(const ExactRational& rhs) {
    if (rhs.is_zero()) throw std::domain_error("division by zero");
    num_ *= rhs.den_;
    den_ *= rhs.num_;
    normalize();
    return *this;
  }

  friend ExactRational operator+(ExactRational a, const ExactRational& b) { return a += b; }
  friend ExactRational operator-(ExactRational a, const ExactRational& b) { return a -= b; }
  friend ExactRational operator*(ExactRational a, const ExactRational& b) { return a *= b; }
  friend ExactRational operator/(ExactRational a, const ExactRational& b) { return a /= b; }

  // Reduced storage makes equality structural.
  friend bool operator==(const ExactRational& a, const ExactRational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const ExactRational& a, const ExactRational& b) {
    const BigInt lhs = a.num_ * b.den_;
    const BigInt rhs = b.num_ * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  /// "num/den", or just "num" for integers.
  std::string to_string() const {
    if (den_ == 1) return num_.str();
    return num_.str() + "/" + den_.str();
  }

  /// Decimal rendering with `significant` significant digits, truncated
  /// toward zero. Approximate by nature; never used for decisions.
  std::string to_decimal(int significant = 12) const;

  /// Accepts "a/b", "a", or an exact decimal literal such as "0.125".
  static ExactRational parse(std::string_view text);

 private:
  void normalize() {
    if (den_ == 0) throw std::domain_error("zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    if (num_ == 0) {
      den_ = 1;
      return;
    }
    BigInt g = boost::multiprecision::gcd(num_, den_);
    if (g < 0) g = -g;
    if (g != 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  BigInt num_;
  BigInt den_;
};

inline ExactRational abs(const ExactRational& q) { return q.sign() < 0 ? -q : q; }

/// floor(q) as an integer.
inline BigInt floor(const ExactRational& q) {
  BigInt quotient = q.numerator() / q.denominator();  // truncates toward zero
  if (q.sign() < 0 && quotient * q.denominator() != q.numerator()) quotient -= 1;
  return quotient;
}

/// Exact integer power; a zero base with a negative exponent is a domain error.
inline ExactRational rational_pow(const ExactRational& q, std::int64_t exponent) {
  if (exponent < 0) {
    if (q.is_zero()) throw std::domain_error("zero raised to a negative power");
    const auto e = static_cast<std::uint64_t>(-(exponent + 1)) + 1u;
    return ExactRational(ipow(q.denominator(), e), ipow(q.numerator(), e));
  }
  const auto e = static_cast<std::uint64_t>(exponent);
  return ExactRational(ipow(q.numerator(), e), ipow(q.denominator(), e));
}

inline std::string ExactRational::to_decimal(int significant) const {
  if (significant < 1) significant = 1;
  if (num_ == 0) return "0";
  std::string out = num_ < 0 ? "-" : "";
  const BigInt n = num_ < 0 ? BigInt(-num_) : num_;

  // Find the decimal exponent e with 10^e <= n/den < 10^(e+1).
  long long e = static_cast<long long>(n.str().size()) - static_cast<long long>(den_.str().size());
  auto at_least = [&](long long k) {  // n/den >= 10^k
    return k >= 0 ? n >= den_ * ipow(10, static_cast<std::uint64_t>(k))
                  : n * ipow(10, static_cast<std::uint64_t>(-k)) >= den_;
  };
  while (!at_least(e)) --e;
  while (at_least(e + 1)) ++e;

  // digits = floor(n/den * 10^(significant-1-e))
  const long long shift = significant - 1 - e;
  BigInt digits = shift >= 0 ? (n * ipow(10, static_cast<std::uint64_t>(shift))) / den_
                             : n / (den_ * ipow(10, static_cast<std::uint64_t>(-shift)));
  std::string s = digits.str();
  if (e >= 0) {
    const auto int_len = static_cast<std::size_t>(e + 1);
    if (s.size() <= int_len) {
      out += s + std::string(int_len - s.size(), '0');
      return out;
    }
    out += s.substr(0, int_len) + "." + s.substr(int_len);
  } else {
    out += "0." + std::string(static_cast<std::size_t>(-e - 1), '0') + s;
  }
  while (out.back() == '0') out.pop_back();
  if (out.back() == '.') out.pop_back();
  return out;
}

inline ExactRational ExactRational::parse(std::string_view text) {
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt den = parse_bigint(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return {parse_bigint(text.substr(0, slash)), std::move(den)};
  }
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const std::string_view whole = text.substr(0, dot);
    const std::string_view frac = text.substr(dot + 1);
    if (frac.empty() || frac.front() == '-' || frac.front() == '+')
      throw std::invalid_argument("invalid decimal literal '" + std::string(text) + "'");
    const bool negative = !whole.empty() && whole.front() == '-';
    BigInt int_part = (whole.empty() || whole == "-" || whole == "+") ? BigInt(0) : parse_bigint(whole);
    if (int_part < 0) int_part = -int_part;
    const BigInt scale = ipow(10, frac.size());
    BigInt value = int_part * scale + parse_bigint(frac);
    return {negative ? BigInt(-value) : value, scale};
  }
  return ExactRational(parse_bigint(text));
}

inline std::ostream& operator<<(std::ostream& os, const ExactRational& q) { return os << q.to_string(); }

}  // namespace normality
