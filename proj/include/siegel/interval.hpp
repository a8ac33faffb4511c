#pragma once

#include "siegel/rational.hpp"

#include <boost/multiprecision/integer.hpp>

#include <cstdint>
#include <stdexcept>

namespace siegel {

/// Closed interval [lo, hi] with exact rational endpoints. Every operation
/// returns an enclosure of the exact result, so comparisons decided on the
/// endpoints are certified.
struct RationalInterval {
  Rational lo;
  Rational hi;

  static RationalInterval point(const Rational& v) { return {v, v}; }

  Rational width() const { return hi - lo; }
  bool contains(const Rational& v) const { return lo <= v && v <= hi; }

  friend RationalInterval operator+(const RationalInterval& x, const RationalInterval& y) {
    return {x.lo + y.lo, x.hi + y.hi};
  }
  friend RationalInterval operator-(const RationalInterval& x, const RationalInterval& y) {
    return {x.lo - y.hi, x.hi - y.lo};
  }
  friend RationalInterval operator*(const RationalInterval& x, const RationalInterval& y) {
    Rational c[4] = {x.lo * y.lo, x.lo * y.hi, x.hi * y.lo, x.hi * y.hi};
    Rational mn = c[0], mx = c[0];
    for (const auto& v : c) {
      if (v < mn) mn = v;
      if (v > mx) mx = v;
    }
    return {mn, mx};
  }
  RationalInterval reciprocal() const {
    if (lo <= 0 && hi >= 0) throw std::domain_error("reciprocal of an interval containing zero");
    return {Rational(1) / hi, Rational(1) / lo};
  }
};

namespace detail {
// arctan(1/x) as alternating series; consecutive partial sums bracket the limit.
inline RationalInterval arctan_inverse(std::int64_t x, int terms) {
  Rational sum = 0;
  BigInt power = x;  // x^(2k+1)
  const BigInt x2 = BigInt(x) * x;
  Rational next;
  for (int k = 0; k <= terms; ++k) {
    Rational term = Rational(BigInt(1), BigInt(2 * k + 1) * power);
    if (k == terms) {
      next = (k % 2 == 0) ? Rational(sum + term) : Rational(sum - term);
      break;
    }
    sum = (k % 2 == 0) ? Rational(sum + term) : Rational(sum - term);
    power *= x2;
  }
  return sum < next ? RationalInterval{sum, next} : RationalInterval{next, sum};
}
}  // namespace detail

/// Enclosure of pi of width below 10^-digits (Machin's formula).
inline RationalInterval pi_enclosure(int digits) {
  // 1/5 series gains ~1.4 digits per term; 1/239 about 4.7.
  int terms5 = digits + 2;
  int terms239 = digits / 4 + 2;
  RationalInterval a = detail::arctan_inverse(5, terms5);
  RationalInterval b = detail::arctan_inverse(239, terms239);
  return RationalInterval::point(16) * a - RationalInterval::point(4) * b;
}

/// Enclosure of sqrt(n) of width 10^-digits.
inline RationalInterval sqrt_enclosure(std::int64_t n, int digits) {
  if (n < 0) throw std::domain_error("sqrt_enclosure of a negative number");
  BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(digits));
  BigInt s = boost::multiprecision::sqrt(BigInt(n) * scale * scale);
  if (s * s == BigInt(n) * scale * scale) return RationalInterval::point(Rational(s, scale));
  return {Rational(s, scale), Rational(s + 1, scale)};
}

}  // namespace siegel
