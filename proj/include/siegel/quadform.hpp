#pragma once

#include "siegel/interval.hpp"
#include "siegel/parallel.hpp"
#include "siegel/rational.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace siegel {

/// Even-encoded half-integral index [a^b c] = [[a/2, b/2], [b/2, c/2]].
/// Valid forms have a, c even and positive and a*c - b^2 > 0.
struct IndexForm {
  std::int64_t a = 2;
  std::int64_t b = 0;
  std::int64_t c = 2;

  friend auto operator<=>(const IndexForm&, const IndexForm&) = default;

  bool valid() const { return a > 0 && c > 0 && a % 2 == 0 && c % 2 == 0 && a * c - b * b > 0; }

  /// Display label, e.g. "[2^1 6]".
  std::string label() const {
    return "[" + std::to_string(a) + "^" + std::to_string(b) + " " + std::to_string(c) + "]";
  }
  friend std::ostream& operator<<(std::ostream& os, const IndexForm& t) { return os << t.label(); }
};

inline IndexForm make_index_form(std::int64_t a, std::int64_t b, std::int64_t c) {
  IndexForm t{a, b, c};
  if (!t.valid())
    throw std::invalid_argument("not a positive definite even-encoded index " + t.label());
  return t;
}

/// Symmetric positive definite sending matrix [[s1, s2], [s2, s4]].
struct SendingMatrix {
  std::int64_t s1 = 1;
  std::int64_t s2 = 0;
  std::int64_t s4 = 1;

  friend auto operator<=>(const SendingMatrix&, const SendingMatrix&) = default;

  std::int64_t det() const { return s1 * s4 - s2 * s2; }
  bool valid() const { return s1 > 0 && det() > 0; }
  std::string label() const {
    return "[[" + std::to_string(s1) + "," + std::to_string(s2) + "],[" + std::to_string(s2) + "," +
           std::to_string(s4) + "]]";
  }
};

inline SendingMatrix make_sending_matrix(std::int64_t s1, std::int64_t s2, std::int64_t s4) {
  SendingMatrix s{s1, s2, s4};
  if (!s.valid()) throw std::invalid_argument("sending matrix " + s.label() + " is not positive definite");
  return s;
}

/// Integral 2x2 matrix [[m, n], [o, p]].
struct Unimodular {
  std::int64_t m = 1, n = 0, o = 0, p = 1;
  std::int64_t det() const { return m * p - n * o; }
};

/// M V M^T on the integer matrix V = [[a, b], [b, c]].
inline IndexForm act(const IndexForm& t, const Unimodular& u) {
  return IndexForm{u.m * u.m * t.a + 2 * u.m * u.n * t.b + u.n * u.n * t.c,
                   u.m * t.a * u.o + u.n * t.b * u.o + u.m * t.b * u.p + u.n * t.c * u.p,
                   u.o * u.o * t.a + 2 * u.p * t.b * u.o + u.p * u.p * t.c};
}

/// u^T S u.
inline SendingMatrix act(const SendingMatrix& s, const Unimodular& u) {
  return SendingMatrix{u.m * u.m * s.s1 + 2 * u.m * u.o * s.s2 + u.o * u.o * s.s4,
                       u.m * u.n * s.s1 + (u.m * u.p + u.n * u.o) * s.s2 + u.o * u.p * s.s4,
                       u.n * u.n * s.s1 + 2 * u.n * u.p * s.s2 + u.p * u.p * s.s4};
}

/// w([a^b c]) = (a + c - |b|) / 2.
inline Rational dyadic_trace(const IndexForm& t) {
  return Rational(BigInt(t.a + t.c - std::abs(t.b)), BigInt(2));
}

inline bool is_reduced(const IndexForm& t) { return 0 <= 2 * t.b && 2 * t.b <= t.a && t.a <= t.c; }

/// Canonical GL_2(Z) representative: Gauss reduction of (a/2) x^2 + b xy + (c/2) y^2
/// followed by b -> |b|.
inline IndexForm reduce(const IndexForm& t) {
  if (!t.valid()) throw std::invalid_argument("reduce: invalid index " + t.label());
  std::int64_t A = t.a / 2, B = t.b, C = t.c / 2;
  for (;;) {
    if (A > C) std::swap(A, C);
    if (std::abs(B) > A) {
      // x -> x + k y with k nearest to -B/(2A)
      std::int64_t twoA = 2 * A;
      std::int64_t k = -B / twoA;
      std::int64_t r = B + k * twoA;  // |r| < 2A
      if (r > A) {
        --k;
        r -= twoA;
      } else if (r < -A) {
        ++k;
        r += twoA;
      }
      C = A * k * k + B * k + C;
      B = r;
      continue;
    }
    if (A > C) continue;
    break;
  }
  return IndexForm{2 * A, std::abs(B), 2 * C};
}

/// <t, s> = trace(t s) = a s1/2 + b s2 + c s4/2.
inline Rational inner(const IndexForm& t, const SendingMatrix& s) {
  return Rational(BigInt(t.a * s.s1 + 2 * t.b * s.s2 + t.c * s.s4), BigInt(2));
}

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// (p, i) with n = p^i, p prime, i >= 1; nullopt otherwise.
inline std::optional<std::pair<std::int64_t, int>> prime_power(std::int64_t n) {
  if (n < 2) return std::nullopt;
  std::int64_t p = 2;
  while (p * p <= n && n % p != 0) ++p;
  if (n % p != 0) p = n;
  int i = 0;
  while (n % p == 0) {
    n /= p;
    ++i;
  }
  if (n != 1) return std::nullopt;
  return std::make_pair(p, i);
}

class AmbiguousBound : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Strict upper bound on dyadic traces. Exact when lo == hi; otherwise a
/// certified enclosure of an irrational bound.
struct Threshold {
  RationalInterval bound;

  bool exact() const { return bound.lo == bound.hi; }

  /// Decides w < bound. Throws AmbiguousBound if w falls inside the enclosure.
  bool admits(const Rational& w) const {
    if (w < bound.lo) return true;
    if (w >= bound.hi) return false;
    throw AmbiguousBound("dyadic trace " + to_string(w) + " lies inside the bound enclosure [" +
                         to_string(bound.lo) + ", " + to_string(bound.hi) + "]");
  }

  double approx() const { return static_cast<double>((bound.lo + bound.hi) / 2); }
};

namespace detail {
// True if no half-integer lies in [lo, hi].
inline bool separates_half_integers(const RationalInterval& iv) {
  return ceil_of(iv.lo * 2) > floor_of(iv.hi * 2);
}
}  // namespace detail

/// Bound on dyadic traces of the determining set of S_k(Gamma_0^(2)(p^i)):
/// (1 + p) k / 6 for i = 1 (exact), and
/// 3/2 + (p^i k / (sqrt(3) pi) - 3/2) * prod_{j<=i} (1 + p^-j) for i > 1,
/// enclosed tightly enough (width < 1/4, no half-integer inside) to classify
/// every dyadic trace.
inline Threshold determining_bound(std::int64_t p, int i, std::int64_t k) {
  if (!is_prime(p)) throw std::invalid_argument("determining_bound: " + std::to_string(p) + " is not prime");
  if (i < 1 || k < 1) throw std::invalid_argument("determining_bound: exponent and weight must be positive");
  if (i == 1) return Threshold{RationalInterval::point(Rational(BigInt((1 + p) * k), BigInt(6)))};

  BigInt pi_pow = 1;
  Rational prod = 1;
  for (int j = 1; j <= i; ++j) {
    pi_pow *= p;
    prod *= Rational(1) + Rational(BigInt(1), pi_pow);
  }
  for (int digits = 20; digits <= 1280; digits *= 2) {
    RationalInterval denom = sqrt_enclosure(3, digits) * pi_enclosure(digits);
    RationalInterval main = RationalInterval::point(Rational(pi_pow * k)) * denom.reciprocal() -
                            RationalInterval::point(Rational(3, 2));
    RationalInterval b = RationalInterval::point(Rational(3, 2)) + main * RationalInterval::point(prod);
    if (b.width() < Rational(1, 4) && detail::separates_half_integers(b)) return Threshold{b};
  }
  throw AmbiguousBound("determining_bound: enclosure does not separate half-integer traces");
}

/// Reduced index forms with dyadic trace strictly below a threshold, sorted
/// lexicographically by (a, b, c). This order fixes variable order downstream.
struct DeterminingSet {
  std::int64_t level = 1;
  std::int64_t weight = 1;
  Threshold threshold;
  std::vector<IndexForm> forms;

  std::size_t size() const { return forms.size(); }

  std::optional<std::size_t> index_of(const IndexForm& t) const {
    auto it = std::lower_bound(forms.begin(), forms.end(), t);
    if (it == forms.end() || *it != t) return std::nullopt;
    return static_cast<std::size_t>(it - forms.begin());
  }
  bool contains(const IndexForm& t) const { return index_of(t).has_value(); }
};

/// All reduced forms with w < threshold. Loop ranges follow from the bound:
/// a + c - b >= 3a/2 forces a < 4B/3, and c < 2B - a + b.
inline std::vector<IndexForm> enumerate_below(const Threshold& th) {
  const Rational two_b = th.bound.hi * 2;  // a + c - b < 2B <= 2 hi
  const std::int64_t a_max = static_cast<std::int64_t>(floor_of(two_b * 2 / 3)) + 1;
  std::vector<std::int64_t> a_values;
  for (std::int64_t a = 2; a <= a_max; a += 2) a_values.push_back(a);

  auto rows = parallel_map(a_values.size(), [&](std::size_t idx) {
    std::vector<IndexForm> out;
    const std::int64_t a = a_values[idx];
    for (std::int64_t b = 0; 2 * b <= a; ++b) {
      for (std::int64_t c = a;; c += 2) {
        if (Rational(c + a - b) >= two_b) break;
        IndexForm t{a, b, c};
        if (th.admits(dyadic_trace(t))) out.push_back(t);
      }
    }
    return out;
  });
  std::vector<IndexForm> forms;
  for (auto& r : rows) forms.insert(forms.end(), r.begin(), r.end());
  std::sort(forms.begin(), forms.end());
  return forms;
}

inline DeterminingSet enumerate_determining(std::int64_t p, int i, std::int64_t k) {
  DeterminingSet set;
  set.level = 1;
  for (int j = 0; j < i; ++j) set.level *= p;
  set.weight = k;
  set.threshold = determining_bound(p, i, k);
  set.forms = enumerate_below(set.threshold);
  return set;
}

/// Determining set at an explicit threshold (w < bound), e.g. to reproduce
/// listings computed with a different cutoff.
inline DeterminingSet enumerate_with_threshold(std::int64_t level, std::int64_t k, const Rational& bound) {
  DeterminingSet set;
  set.level = level;
  set.weight = k;
  set.threshold = Threshold{RationalInterval::point(bound)};
  set.forms = enumerate_below(set.threshold);
  return set;
}

/// Determining set for a prime-power level, optionally with an explicit threshold.
inline DeterminingSet determining_set_for_level(std::int64_t level, std::int64_t k,
                                                const std::optional<Rational>& threshold = std::nullopt) {
  auto pp = prime_power(level);
  if (!pp) throw std::invalid_argument("level " + std::to_string(level) + " is not a prime power");
  if (threshold) return enumerate_with_threshold(level, k, *threshold);
  return enumerate_determining(pp->first, pp->second, k);
}

}  // namespace siegel
