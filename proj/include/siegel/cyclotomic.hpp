#pragma once

#include "siegel/rational.hpp"

#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace siegel {

inline std::int64_t euler_phi(std::int64_t n) {
  if (n < 1) throw std::domain_error("euler_phi: n must be positive");
  std::int64_t result = n;
  std::int64_t m = n;
  for (std::int64_t p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      result -= result / p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

/// Integer coefficients of the n-th cyclotomic polynomial, lowest degree first.
inline const std::vector<BigInt>& cyclotomic_polynomial(std::int64_t n) {
  if (n < 1) throw std::domain_error("cyclotomic_polynomial: n must be positive");
  static std::mutex mu;
  static std::map<std::int64_t, std::vector<BigInt>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  // x^n - 1 divided by Phi_d for every proper divisor d.
  std::vector<BigInt> num(static_cast<std::size_t>(n) + 1, BigInt(0));
  num[0] = -1;
  num[static_cast<std::size_t>(n)] = 1;
  for (std::int64_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    const std::vector<BigInt>& den = cyclotomic_polynomial(d);
    // exact division by a monic polynomial
    std::size_t dn = num.size() - 1, dd = den.size() - 1;
    std::vector<BigInt> quo(dn - dd + 1, BigInt(0));
    for (std::size_t k = dn - dd + 1; k-- > 0;) {
      BigInt lead = num[k + dd];
      quo[k] = lead;
      if (lead == 0) continue;
      for (std::size_t i = 0; i <= dd; ++i) num[k + i] -= lead * den[i];
    }
    num = std::move(quo);
  }
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(n, std::move(num)).first->second;
}

/// Exact element of Q(zeta_n), stored over the power basis 1, z, ..., z^(phi(n)-1)
/// reduced modulo Phi_n. Two values of different orders compare and combine in
/// Q(zeta_lcm).
class CycNum {
public:
  CycNum() : order_(1), coeffs_{Rational(0)} {}
  CycNum(const Rational& r) : order_(1), coeffs_{r} {}  // NOLINT: rationals embed implicitly
  CycNum(std::int64_t v) : order_(1), coeffs_{Rational(v)} {}  // NOLINT
  CycNum(int v) : CycNum(static_cast<std::int64_t>(v)) {}  // NOLINT

  /// Reduces an arbitrary-length coefficient vector modulo Phi_n.
  static CycNum make(std::int64_t n, std::vector<Rational> coeffs) {
    if (n < 1) throw std::domain_error("CycNum: root-of-unity order must be positive");
    CycNum x;
    x.order_ = n;
    x.coeffs_ = reduce(n, std::move(coeffs));
    return x;
  }

  /// zeta_n^k, for any integer k.
  static CycNum root(std::int64_t n, std::int64_t k) {
    if (n < 1) throw std::domain_error("CycNum::root: n must be positive");
    std::int64_t e = ((k % n) + n) % n;
    std::vector<Rational> c(static_cast<std::size_t>(e) + 1, Rational(0));
    c[static_cast<std::size_t>(e)] = 1;
    return make(n, std::move(c));
  }

  std::int64_t order() const { return order_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (c != 0) return false;
    return true;
  }
  bool is_rational() const {
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
      if (coeffs_[i] != 0) return false;
    return true;
  }
  /// Constant coordinate; equals the value when is_rational().
  const Rational& constant() const { return coeffs_[0]; }

  /// Image in Q(zeta_m); requires order() | m.
  CycNum lift(std::int64_t m) const {
    if (m < 1 || m % order_ != 0)
      throw std::domain_error("CycNum::lift: target order must be a multiple of the current order");
    if (m == order_) return *this;
    std::int64_t step = m / order_;
    std::vector<Rational> c(static_cast<std::size_t>(step) * coeffs_.size(), Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i * static_cast<std::size_t>(step)] = coeffs_[i];
    return make(m, std::move(c));
  }

  CycNum operator-() const {
    CycNum r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  friend CycNum operator+(const CycNum& x, const CycNum& y) {
    auto [a, b] = common(x, y);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) a.coeffs_[i] += b.coeffs_[i];
    return a;
  }
  friend CycNum operator-(const CycNum& x, const CycNum& y) { return x + (-y); }

  friend CycNum operator*(const CycNum& x, const CycNum& y) {
    if (x.order_ == 1 && y.order_ != 1) return y.scaled(x.coeffs_[0]);
    if (y.order_ == 1) return x.scaled(y.coeffs_[0]);
    auto [a, b] = common(x, y);
    std::vector<Rational> prod(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) prod[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return make(a.order_, std::move(prod));
  }

  /// Multiplicative inverse; throws std::domain_error on zero.
  CycNum inv() const {
    if (is_zero()) throw std::domain_error("CycNum: division by zero");
    if (order_ == 1) return CycNum(Rational(1) / coeffs_[0]);
    // Solve (this * u) = 1 through the multiplication matrix on the power basis.
    const std::size_t d = coeffs_.size();
    std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d + 1, Rational(0)));
    for (std::size_t j = 0; j < d; ++j) {
      std::vector<Rational> e(j + 1, Rational(0));
      e[j] = 1;
      CycNum col = *this * make(order_, std::move(e));
      for (std::size_t i = 0; i < d; ++i) m[i][j] = col.coeffs_[i];
    }
    m[0][d] = 1;
    for (std::size_t c = 0; c < d; ++c) {
      std::size_t piv = c;
      while (piv < d && m[piv][c] == 0) ++piv;
      if (piv == d) throw std::logic_error("CycNum::inv: singular multiplication matrix");
      std::swap(m[piv], m[c]);
      Rational s = m[c][c];
      for (auto& v : m[c]) v /= s;
      for (std::size_t r = 0; r < d; ++r) {
        if (r == c || m[r][c] == 0) continue;
        Rational f = m[r][c];
        for (std::size_t k = c; k <= d; ++k) m[r][k] -= f * m[c][k];
      }
    }
    std::vector<Rational> u(d);
    for (std::size_t i = 0; i < d; ++i) u[i] = m[i][d];
    return make(order_, std::move(u));
  }

  friend CycNum operator/(const CycNum& x, const CycNum& y) { return x * y.inv(); }

  CycNum& operator+=(const CycNum& y) { return *this = *this + y; }
  CycNum& operator-=(const CycNum& y) { return *this = *this - y; }
  CycNum& operator*=(const CycNum& y) { return *this = *this * y; }

  CycNum pow(std::int64_t e) const {
    if (e < 0) return inv().pow(-e);
    CycNum result(1), base = *this;
    while (e > 0) {
      if (e & 1) result *= base;
      base *= base;
      e >>= 1;
    }
    return result;
  }

  /// Galois conjugate zeta_n -> zeta_n^{-1} (complex conjugation).
  CycNum conj() const {
    if (order_ <= 2) return *this;
    std::vector<Rational> c(static_cast<std::size_t>(order_), Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      std::size_t e = i == 0 ? 0 : static_cast<std::size_t>(order_) - i;
      c[e] += coeffs_[i];
    }
    return make(order_, std::move(c));
  }

  friend bool operator==(const CycNum& x, const CycNum& y) {
    if (x.order_ == y.order_) return x.coeffs_ == y.coeffs_;
    auto [a, b] = common(x, y);
    return a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const CycNum& x, const CycNum& y) { return !(x == y); }

  /// Human-readable form in the variable `var`, highest power first, e.g. "-9z + 9".
  std::string format(const std::string& var = "z") const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
      const Rational& c = coeffs_[i];
      if (c == 0) continue;
      bool neg = c < 0;
      Rational mag = neg ? Rational(-c) : c;
      if (first) {
        if (neg) os << "-";
      } else {
        os << (neg ? " - " : " + ");
      }
      if (i == 0 || mag != 1) os << siegel::to_string(mag);
      if (i >= 1) os << var;
      if (i >= 2) os << "^" << i;
      first = false;
    }
    if (first) os << "0";
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const CycNum& x) { return os << x.format(); }

private:
  static std::vector<Rational> reduce(std::int64_t n, std::vector<Rational> c) {
    const auto& phi = cyclotomic_polynomial(n);
    const std::size_t d = phi.size() - 1;
    for (std::size_t k = c.size(); k-- > d;) {
      if (c[k] == 0) continue;
      Rational lead = c[k];
      for (std::size_t i = 0; i <= d; ++i) c[k - d + i] -= lead * Rational(phi[i]);
    }
    c.resize(d, Rational(0));
    return c;
  }

  static std::pair<CycNum, CycNum> common(const CycNum& x, const CycNum& y) {
    if (x.order_ == y.order_) return {x, y};
    std::int64_t m = std::lcm(x.order_, y.order_);
    return {x.lift(m), y.lift(m)};
  }

  CycNum scaled(const Rational& s) const {
    CycNum r = *this;
    for (auto& c : r.coeffs_) c *= s;
    return r;
  }

  std::int64_t order_;
  std::vector<Rational> coeffs_;
};

inline CycNum cyc_make(std::int64_t n, std::vector<Rational> coeffs) { return CycNum::make(n, std::move(coeffs)); }
inline CycNum cyc_root(std::int64_t n, std::int64_t k) { return CycNum::root(n, k); }
inline CycNum cyc_inv(const CycNum& x) { return x.inv(); }

/// Order of the smallest cyclotomic field holding both operands.
inline std::int64_t common_order(const CycNum& x, const CycNum& y) { return std::lcm(x.order(), y.order()); }

/// If x = zeta_n^k for some 0 <= k < n (n = x.order()), returns k; otherwise -1.
inline std::int64_t root_exponent(const CycNum& x) {
  for (std::int64_t k = 0; k < x.order(); ++k)
    if (x == CycNum::root(x.order(), k)) return k;
  // Odd n: -zeta_n^k are roots of unity of order 2n, not powers of zeta_n.
  return -1;
}

}  // namespace siegel
