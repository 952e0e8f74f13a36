#pragma once

// Exact check of the fourth-moment bound
//
//   sum_p C(n,p) (r-1)^(n-p) / r^n * (p/n - 1/r)^4 <= D / n^2.
//
// The generating polynomial f_0 = sum_p C(n,p) x^(sp) y^(n-p) is stored over
// U = x^s, so the operator x d/dx - y d/dy acts on the monomial U^p Y^q as
// multiplication by (s*p - q). Evaluating at U = 1/r, Y = (r-1)/r with
// s = r-1 (where s*x^s - y vanishes) stays inside the rationals.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "normality/combinatorics.hpp"
#include "normality/exact_rational.hpp"
#include "normality/radix.hpp"

namespace normality {

/// Exponent pair of the monomial U^p Y^q.
struct Exponents {
  std::uint64_t p = 0;
  std::uint64_t q = 0;
  friend auto operator<=>(const Exponents&, const Exponents&) = default;
};

class MomentPolynomial {
 public:
  MomentPolynomial(std::uint64_t n, std::uint64_t s) : n_(n), s_(s) {
    if (n == 0 || s == 0) throw std::invalid_argument("moment polynomial needs n >= 1 and s >= 1");
  }

  std::uint64_t n() const { return n_; }
  std::uint64_t s() const { return s_; }
  const std::map<Exponents, ExactRational>& coefficients() const { return coeffs_; }

  /// Zero when the monomial is absent.
  ExactRational coefficient(std::uint64_t p) const {
    auto it = coeffs_.find(Exponents{p, n_ - p});
    return it == coeffs_.end() ? ExactRational(0) : it->second;
  }

  /// Only monomials U^p Y^(n-p) are representable; zero coefficients are dropped.
  void set(std::uint64_t p, ExactRational value) {
    if (p > n_) throw std::out_of_range("exponent " + std::to_string(p) + " exceeds n = " + std::to_string(n_));
    if (value.is_zero()) {
      coeffs_.erase(Exponents{p, n_ - p});
    } else {
      coeffs_.insert_or_assign(Exponents{p, n_ - p}, std::move(value));
    }
  }

  /// Value at U = u, Y = y.
  ExactRational evaluate(const ExactRational& u, const ExactRational& y) const {
    // Scale every term by L * den(u)^n * den(y)^n, L the lcm of the
    // coefficient denominators, so the sum runs over integers.
    BigInt lcm_den = 1;
    for (const auto& [e, c] : coeffs_) lcm_den = boost::multiprecision::lcm(lcm_den, c.denominator());
    const BigInt& un = u.numerator();
    const BigInt& ud = u.denominator();
    const BigInt& yn = y.numerator();
    const BigInt& yd = y.denominator();
    BigInt numerator = 0;
    for (const auto& [e, c] : coeffs_) {
      const BigInt scaled = c.numerator() * (lcm_den / c.denominator());
      numerator += scaled * ipow(un, e.p) * ipow(ud, n_ - e.p) * ipow(yn, e.q) * ipow(yd, n_ - e.q);
    }
    return ExactRational(std::move(numerator), lcm_den * ipow(ud, n_) * ipow(yd, n_));
  }

  friend bool operator==(const MomentPolynomial&, const MomentPolynomial&) = default;

 private:
  std::uint64_t n_;
  std::uint64_t s_;
  std::map<Exponents, ExactRational> coeffs_;
};

inline MomentPolynomial build_f0(std::uint64_t n, std::uint64_t s) {
  MomentPolynomial f(n, s);
  for (std::uint64_t p = 0; p <= n; ++p) f.set(p, ExactRational(binomial(n, p)));
  return f;
}

/// x d/dx - y d/dy: multiplies the coefficient of U^p Y^q by (s*p - q).
inline MomentPolynomial apply_euler_operator(const MomentPolynomial& f) {
  MomentPolynomial out(f.n(), f.s());
  for (const auto& [e, c] : f.coefficients()) {
    const BigInt factor = BigInt(f.s()) * e.p - BigInt(e.q);
    out.set(e.p, c * ExactRational(factor));
  }
  return out;
}

inline MomentPolynomial apply_euler_operator(MomentPolynomial f, unsigned times) {
  for (unsigned i = 0; i < times; ++i) f = apply_euler_operator(f);
  return f;
}

/// Closed coefficient of U^p Y^(n-p) in f_k: C(n,p) ((s+1)p - n)^k.
inline BigInt binom_identity_coefficient(std::uint64_t n, std::uint64_t s, unsigned k, std::uint64_t p) {
  const BigInt base = BigInt(s + 1) * p - BigInt(n);
  return binomial(n, p) * (k == 0 ? BigInt(1) : ipow(base, k));
}

/// True iff k operator applications to f_0 agree with the closed
/// coefficients for every p.
inline bool verify_binom_identity(std::uint64_t n, std::uint64_t s, unsigned k) {
  const MomentPolynomial fk = apply_euler_operator(build_f0(n, s), k);
  for (std::uint64_t p = 0; p <= n; ++p)
    if (fk.coefficient(p) != ExactRational(binom_identity_coefficient(n, s, k, p))) return false;
  // nothing outside the support of f_0
  for (const auto& [e, c] : fk.coefficients())
    if (e.p > n || e.q != n - e.p) return false;
  return true;
}

/// The point U = 1/r, Y = (r-1)/r used with s = r-1.
struct SpecialPoint {
  ExactRational u;
  ExactRational y;
};

inline SpecialPoint special_point(Base r) {
  const auto radix = static_cast<long long>(r.radix());
  return {ExactRational(1, radix), ExactRational(radix - 1, radix)};
}

/// f_k(n) evaluated at the special point, through the operator polynomial.
inline ExactRational eval_moment_specialized(std::uint64_t n, Base r, unsigned k) {
  const MomentPolynomial fk = apply_euler_operator(build_f0(n, r.radix() - 1), k);
  const SpecialPoint pt = special_point(r);
  return fk.evaluate(pt.u, pt.y);
}

inline ExactRational eval_f4_specialized(std::uint64_t n, Base r) { return eval_moment_specialized(n, r, 4); }

/// 3(r-1)^2 n^2 + (r^3 - 7r^2 + 12r - 6) n
inline ExactRational closed_form_f4(std::uint64_t n, Base r) {
  const BigInt rr = r.radix();
  const BigInt nn = n;
  return ExactRational(3 * (rr - 1) * (rr - 1) * nn * nn + (rr * rr * rr - 7 * rr * rr + 12 * rr - 6) * nn);
}

struct LemmaConstants {
  Base r;
  ExactRational C;
  ExactRational D;  // C / r^4
};

/// C = 3(r-1)^2 + max(0, r^3 - 7r^2 + 12r - 6) dominates the closed form
/// by C n^2 for all n >= 1, since n <= n^2.
inline LemmaConstants derive_constants(Base r) {
  const BigInt rr = r.radix();
  const BigInt linear = rr * rr * rr - 7 * rr * rr + 12 * rr - 6;
  const BigInt c = 3 * (rr - 1) * (rr - 1) + (linear > 0 ? linear : BigInt(0));
  const ExactRational C(c);
  return {r, C, C / ExactRational(ipow(rr, 4))};
}

/// sum_p C(n,p) (r-1)^(n-p) / r^n * (p/n - 1/r)^4, summed directly.
inline ExactRational main_lemma_sum(std::uint64_t n, Base r) {
  if (n == 0) throw std::invalid_argument("main lemma sum needs n >= 1");
  const BigInt rr = r.radix();
  const BigInt nn = n;
  // (p/n - 1/r)^4 = (rp - n)^4 / (rn)^4
  BigInt numerator = 0;
  BigInt weight_tail = 1;  // (r-1)^(n-p), built from p = n downward
  for (std::uint64_t p = n + 1; p-- > 0;) {
    const BigInt gap = rr * p - nn;
    numerator += binomial(n, p) * weight_tail * ipow(gap, 4);
    weight_tail *= rr - 1;
  }
  return ExactRational(std::move(numerator), ipow(rr, n) * ipow(rr * nn, 4));
}

struct MainLemmaRow {
  std::uint64_t n = 0;
  ExactRational sum;
  ExactRational bound;  // D / n^2
  ExactRational ratio;  // sum * n^2 / D, at most 1 when the bound holds
  bool holds = false;
};

inline std::vector<MainLemmaRow> check_main_lemma(Base r, std::uint64_t n_max) {
  const LemmaConstants k = derive_constants(r);
  std::vector<MainLemmaRow> rows;
  rows.reserve(n_max);
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    ExactRational sum = main_lemma_sum(n, r);
    const ExactRational n2(BigInt(n) * n);
    ExactRational bound = k.D / n2;
    ExactRational ratio = sum * n2 / k.D;
    const bool holds = sum <= bound;
    rows.push_back({n, std::move(sum), std::move(bound), std::move(ratio), holds});
  }
  return rows;
}

}  // namespace normality
