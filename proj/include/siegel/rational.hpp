#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace siegel {

using BigInt = boost::multiprecision::cpp_int;

// Always normalized: gcd(|num|, den) = 1 and den > 0.
using Rational = boost::multiprecision::cpp_rational;

class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline BigInt numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

inline Rational make_rational(std::int64_t p, std::int64_t q = 1) {
  if (q == 0) throw std::domain_error("rational with zero denominator");
  return Rational(BigInt(p), BigInt(q));
}

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

inline BigInt floor_of(const Rational& r) {
  BigInt q = numerator(r) / denominator(r);  // truncates toward zero
  if (r < 0 && q * denominator(r) != numerator(r)) q -= 1;
  return q;
}
inline BigInt ceil_of(const Rational& r) { return -floor_of(-r); }

namespace detail {
inline BigInt parse_bigint(std::string_view s) {
  if (s.empty()) throw ParseError("empty integer literal");
  std::size_t i = 0;
  if (s[0] == '-' || s[0] == '+') i = 1;
  if (i == s.size()) throw ParseError("malformed integer literal '" + std::string(s) + "'");
  for (std::size_t k = i; k < s.size(); ++k) {
    if (s[k] < '0' || s[k] > '9') throw ParseError("malformed integer literal '" + std::string(s) + "'");
  }
  return BigInt(std::string(s));
}
}  // namespace detail

/// Parses "p" or "p/q" (q nonzero). Non-canonical inputs such as "2/4" are accepted and normalized.
inline Rational parse_rational(std::string_view s) {
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(detail::parse_bigint(s));
  BigInt p = detail::parse_bigint(s.substr(0, slash));
  BigInt q = detail::parse_bigint(s.substr(slash + 1));
  if (q == 0) throw ParseError("zero denominator in '" + std::string(s) + "'");
  return Rational(p, q);
}

/// Canonical text form: "p" for integers, otherwise "p/q".
inline std::string to_string(const Rational& r) {
  if (is_integer(r)) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

}  // namespace siegel
