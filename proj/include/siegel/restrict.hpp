#pragma once

#include "siegel/cyclotomic.hpp"
#include "siegel/parallel.hpp"
#include "siegel/quadform.hpp"

#include <boost/multiprecision/integer.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace siegel {

/// Linear form sum_t coeff_t * a0(t) in the unknown Siegel coefficients.
/// Zero coefficients are never stored.
class LinForm {
public:
  using Terms = std::map<IndexForm, CycNum>;

  LinForm() = default;

  void add(const IndexForm& t, const CycNum& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(t);
    if (it == terms_.end()) {
      terms_.emplace(t, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  CycNum coeff(const IndexForm& t) const {
    auto it = terms_.find(t);
    return it == terms_.end() ? CycNum(0) : it->second;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  friend LinForm operator+(LinForm x, const LinForm& y) {
    for (const auto& [t, c] : y.terms_) x.add(t, c);
    return x;
  }
  friend LinForm operator-(LinForm x, const LinForm& y) {
    for (const auto& [t, c] : y.terms_) x.add(t, -c);
    return x;
  }
  friend LinForm operator*(const CycNum& s, const LinForm& x) {
    LinForm r;
    if (s.is_zero()) return r;
    for (const auto& [t, c] : x.terms_) r.add(t, s * c);
    return r;
  }
  friend bool operator==(const LinForm& x, const LinForm& y) { return x.terms_ == y.terms_; }

  /// e.g. "a0[2^0 2] + 2 a0[2^1 2]" or "(-9z + 9) a0[2^0 2] + ...".
  std::string format(const std::string& var = "z") const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [t, c] : terms_) {
      std::string body = "a0" + t.label();
      if (c.is_rational()) {
        Rational v = c.constant();
        bool neg = v < 0;
        Rational mag = neg ? Rational(-v) : v;
        os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
        if (mag != 1) os << to_string(mag) << " ";
      } else {
        os << (first ? "" : " + ") << "(" << c.format(var) << ") ";
      }
      os << body;
      first = false;
    }
    return os.str();
  }

private:
  Terms terms_;
};

/// q-expansion whose coefficient at q^j (1 <= j <= jmax) is a LinForm.
struct SymbolicQExp {
  std::int64_t jmax = 0;
  std::map<std::int64_t, LinForm> coeffs;

  LinForm coeff(std::int64_t j) const {
    auto it = coeffs.find(j);
    return it == coeffs.end() ? LinForm{} : it->second;
  }

  void set(std::int64_t j, LinForm f) {
    if (f.is_zero())
      coeffs.erase(j);
    else
      coeffs[j] = std::move(f);
  }

  friend SymbolicQExp operator+(const SymbolicQExp& x, const SymbolicQExp& y) {
    SymbolicQExp r;
    r.jmax = std::max(x.jmax, y.jmax);
    for (std::int64_t j = 1; j <= r.jmax; ++j) r.set(j, x.coeff(j) + y.coeff(j));
    return r;
  }
  friend SymbolicQExp operator*(const CycNum& s, const SymbolicQExp& x) {
    SymbolicQExp r;
    r.jmax = x.jmax;
    for (const auto& [j, f] : x.coeffs) r.set(j, s * f);
    return r;
  }
  friend bool operator==(const SymbolicQExp& x, const SymbolicQExp& y) {
    return x.jmax == y.jmax && x.coeffs == y.coeffs;
  }

  /// "(a0[2^0 2] + 2 a0[2^1 2]) q^2 + ..." ; "0" when empty.
  std::string format(const std::string& var = "z") const {
    if (coeffs.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [j, f] : coeffs) {
      if (!first) os << "\n+ ";
      os << "(" << f.format(var) << ") q^" << j;
      first = false;
    }
    return os.str();
  }
};

namespace detail {
// a + c <= 2 j tr(s) / det(s), from lambda_min(s) >= det(s) / tr(s).
inline std::int64_t trace_budget(std::int64_t j, const SendingMatrix& s) {
  return (2 * j * (s.s1 + s.s4)) / s.det();
}
}  // namespace detail

/// Number of positive definite even-encoded forms v with <v, s> = j in each
/// reduced class, for every class that occurs. Enumerates v directly: a and b
/// range over the trace budget and c is solved from the inner-product equation.
inline std::map<IndexForm, std::int64_t> representation_counts(std::int64_t j, const SendingMatrix& s) {
  if (!s.valid()) throw std::invalid_argument("sending matrix " + s.label() + " is not positive definite");
  std::map<IndexForm, std::int64_t> counts;
  if (j < 1) return counts;
  const std::int64_t budget = detail::trace_budget(j, s);
  for (std::int64_t a = 2; a <= budget; a += 2) {
    for (std::int64_t b = -budget; b <= budget; ++b) {
      std::int64_t rest = 2 * j - a * s.s1 - 2 * b * s.s2;  // = c * s4
      if (rest <= 0 || rest % s.s4 != 0) continue;
      std::int64_t c = rest / s.s4;
      if (c % 2 != 0) continue;
      IndexForm v{a, b, c};
      if (!v.valid()) continue;
      ++counts[reduce(v)];
    }
  }
  return counts;
}

/// v(j, s, t) = #{v in [t] : <v, s> = j}; t must be reduced.
inline std::int64_t vcount(std::int64_t j, const SendingMatrix& s, const IndexForm& t) {
  if (!t.valid() || !is_reduced(t)) throw std::invalid_argument("vcount: index " + t.label() + " is not reduced");
  auto counts = representation_counts(j, s);
  auto it = counts.find(t);
  return it == counts.end() ? 0 : it->second;
}

/// Search box for the unimodular-enumeration count. Unset limits are derived
/// from positivity; explicit limits reproduce fixed-box listings.
struct OracleBox {
  std::optional<std::int64_t> a_max;
  std::optional<std::int64_t> b_max;
  std::optional<std::int64_t> d_max;
  std::optional<std::int64_t> entry_max;

  /// The fixed box of the original listing program: a, d <= 10, |b| <= 10, entries in [-8, 8].
  static OracleBox listing_box() { return OracleBox{10, 10, 10, 8}; }
};

struct OracleResult {
  std::int64_t count = 0;
  std::int64_t a_max = 0;
  std::int64_t b_max = 0;
  std::int64_t d_max = 0;
  std::int64_t entry_max = 0;  // largest |entry| bound used for M
};

/// Counts candidates v = (a, b, d) in a box with <v, s> = j for which some
/// M = [[m, n], [o, p]] with det M = +-1 satisfies M V M^T = t. Rows of M are
/// vectors x with x^T V x equal to a diagonal entry of t, hence
/// |x|^2 <= t_ii (a + d) / (a d - b^2).
inline OracleResult vcount_oracle(std::int64_t j, const SendingMatrix& s, const IndexForm& t,
                                  const OracleBox& box = {}) {
  if (!t.valid() || !is_reduced(t)) throw std::invalid_argument("vcount_oracle: index " + t.label() + " is not reduced");
  if (!s.valid()) throw std::invalid_argument("sending matrix " + s.label() + " is not positive definite");
  OracleResult res;
  const std::int64_t budget = detail::trace_budget(j, s);
  res.a_max = box.a_max.value_or(budget);
  res.d_max = box.d_max.value_or(budget);
  res.b_max = box.b_max.value_or(budget);
  const std::int64_t t_det = t.a * t.c - t.b * t.b;
  const std::int64_t diag_max = std::max(t.a, t.c);

  for (std::int64_t a = 2; a <= res.a_max; a += 2) {
    for (std::int64_t b = -res.b_max; b <= res.b_max; ++b) {
      for (std::int64_t d = 2; d <= res.d_max; d += 2) {
        const std::int64_t det = a * d - b * b;
        if (det <= 0) continue;
        if (a * s.s1 + 2 * b * s.s2 + d * s.s4 != 2 * j) continue;
        if (det != t_det) continue;  // unimodular congruence preserves det
        std::int64_t e;
        if (box.entry_max) {
          e = *box.entry_max;
        } else {
          std::int64_t r2 = (diag_max * (a + d)) / det;
          e = static_cast<std::int64_t>(boost::multiprecision::sqrt(BigInt(r2)));
        }
        res.entry_max = std::max(res.entry_max, e);

        auto qv = [&](std::int64_t x, std::int64_t y) { return x * x * a + 2 * x * y * b + y * y * d; };
        std::vector<std::pair<std::int64_t, std::int64_t>> rows1, rows2;
        for (std::int64_t x = -e; x <= e; ++x) {
          for (std::int64_t y = -e; y <= e; ++y) {
            std::int64_t q = qv(x, y);
            if (q == t.a) rows1.emplace_back(x, y);
            if (q == t.c) rows2.emplace_back(x, y);
          }
        }
        bool found = false;
        for (const auto& [m, n] : rows1) {
          for (const auto& [o, p] : rows2) {
            std::int64_t dm = m * p - n * o;
            if (dm != 1 && dm != -1) continue;
            if (m * a * o + n * b * o + m * b * p + n * d * p == t.b) {
              found = true;
              break;
            }
          }
          if (found) break;
        }
        if (found) ++res.count;
      }
    }
  }
  return res;
}

/// 1 + max <t, s> over the set, so every unknown can appear.
inline std::int64_t default_jmax(const DeterminingSet& det, const SendingMatrix& s) {
  std::int64_t m = 0;
  for (const auto& t : det.forms) {
    Rational v = inner(t, s);
    std::int64_t iv = static_cast<std::int64_t>(floor_of(v));
    m = std::max(m, iv);
  }
  return m + 1;
}

/// Coefficient of q^j is sum_t v(j, s, t) a0(t) over the determining set.
inline SymbolicQExp restrict_expansion(const DeterminingSet& det, const SendingMatrix& s, std::int64_t jmax) {
  if (jmax < 1) throw std::invalid_argument("restrict_expansion: jmax must be positive");
  auto rows = parallel_map(static_cast<std::size_t>(jmax), [&](std::size_t idx) {
    const std::int64_t j = static_cast<std::int64_t>(idx) + 1;
    auto counts = representation_counts(j, s);
    LinForm f;
    for (const auto& t : det.forms) {
      auto it = counts.find(t);
      if (it != counts.end()) f.add(t, CycNum(it->second));
    }
    return f;
  });
  SymbolicQExp exp;
  exp.jmax = jmax;
  for (std::size_t i = 0; i < rows.size(); ++i) exp.set(static_cast<std::int64_t>(i) + 1, std::move(rows[i]));
  return exp;
}

/// Same expansion built from vcount_oracle; slow, used to cross-check and to
/// reproduce fixed-box listings.
inline SymbolicQExp restrict_expansion_oracle(const DeterminingSet& det, const SendingMatrix& s, std::int64_t jmax,
                                              const OracleBox& box = {}) {
  if (jmax < 1) throw std::invalid_argument("restrict_expansion: jmax must be positive");
  auto rows = parallel_map(static_cast<std::size_t>(jmax), [&](std::size_t idx) {
    const std::int64_t j = static_cast<std::int64_t>(idx) + 1;
    LinForm f;
    for (const auto& t : det.forms) f.add(t, CycNum(vcount_oracle(j, s, t, box).count));
    return f;
  });
  SymbolicQExp exp;
  exp.jmax = jmax;
  for (std::size_t i = 0; i < rows.size(); ++i) exp.set(static_cast<std::int64_t>(i) + 1, std::move(rows[i]));
  return exp;
}

}  // namespace siegel
