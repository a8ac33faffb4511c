#pragma once

#include "siegel/cyclotomic.hpp"
#include "siegel/quadform.hpp"
#include "siegel/restrict.hpp"

#include <cstdint>
#include <map>
#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace siegel {

class LinsysError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

using Matrix = std::vector<std::vector<CycNum>>;

struct JRange {
  std::int64_t lo = 1;
  std::int64_t hi = 1;
  bool contains(std::int64_t j) const { return lo <= j && j <= hi; }
};

/// Elliptic basis form known through q^precision.
struct BasisForm {
  std::string label;
  std::int64_t level = 1;
  std::int64_t weight = 1;  // elliptic weight 2k
  std::int64_t precision = 0;
  std::map<std::int64_t, CycNum> coeffs;

  CycNum coeff(std::int64_t j) const {
    if (j > precision) throw LinsysError("basis form " + label + " is only known through q^" + std::to_string(precision));
    auto it = coeffs.find(j);
    return it == coeffs.end() ? CycNum(0) : it->second;
  }
  bool is_zero() const {
    for (const auto& [j, c] : coeffs)
      if (j <= precision && !c.is_zero()) return false;
    return true;
  }
};

/// Matrix of an operator on a space of elliptic cusp forms.
struct OperatorMatrix {
  std::string label;
  std::int64_t level = 1;
  std::int64_t weight = 1;
  Matrix entries;
  bool surrogate = false;
  std::string provenance;

  std::size_t dim() const { return entries.size(); }
};

/// lhs = 0.
struct Constraint {
  LinForm lhs;
  std::string origin;
  std::int64_t j = 0;
};

struct RrefResult {
  Matrix reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

/// Reduced row echelon form over Q(zeta_n); pivots are chosen left to right, so
/// rank and pivot columns depend only on the column order.
inline RrefResult rref(Matrix m) {
  RrefResult res;
  if (m.empty()) return res;
  const std::size_t cols = m[0].size();
  std::int64_t order = 1;
  for (const auto& row : m) {
    if (row.size() != cols) throw LinsysError("rref: ragged matrix");
    for (const auto& v : row) order = std::lcm(order, v.order());
  }
  for (auto& row : m)
    for (auto& v : row) v = v.lift(order);

  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && m[piv][c].is_zero()) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[r]);
    CycNum inv = m[r][c].inv();
    for (auto& v : m[r]) v = v * inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      CycNum f = m[i][c];
      for (std::size_t k = c; k < cols; ++k)
        if (!m[r][k].is_zero()) m[i][k] -= f * m[r][k];
    }
    res.pivots.push_back(c);
    ++r;
  }
  res.rank = r;
  res.reduced = std::move(m);
  return res;
}

inline std::size_t rank(const Matrix& m) { return rref(m).rank; }

inline Matrix transpose(const Matrix& m) {
  if (m.empty()) return {};
  Matrix t(m[0].size(), std::vector<CycNum>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

struct KernelResult {
  std::vector<Constraint> constraints;
  std::size_t nullity = 0;
  bool refused = false;
};

/// If A - cI is injective, phi in ker(A - cI) forces phi = 0: every coefficient
/// of `exp` in `jr` vanishes. Otherwise nothing is emitted and the nullity is reported.
inline KernelResult kernel_vanishing(const SymbolicQExp& exp, const OperatorMatrix& A, const CycNum& c, JRange jr,
                                     std::optional<std::pair<std::int64_t, std::int64_t>> expected_level_weight = std::nullopt,
                                     const std::string& origin = "kernel") {
  for (const auto& row : A.entries)
    if (row.size() != A.dim()) throw LinsysError("operator " + A.label + " is not square");
  if (expected_level_weight) {
    auto [lvl, wt] = *expected_level_weight;
    if (A.level != lvl || A.weight != wt)
      throw LinsysError("operator " + A.label + " acts on level " + std::to_string(A.level) + ", weight " +
                        std::to_string(A.weight) + "; restricted form has level " + std::to_string(lvl) +
                        ", weight " + std::to_string(wt));
  }
  if (jr.hi > exp.jmax) throw LinsysError("kernel_vanishing: j range exceeds expansion jmax");
  Matrix shifted = A.entries;
  for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i][i] -= c;
  KernelResult res;
  res.nullity = A.dim() - rank(shifted);
  if (res.nullity > 0) {
    res.refused = true;
    return res;
  }
  for (std::int64_t j = jr.lo; j <= jr.hi; ++j) {
    LinForm f = exp.coeff(j);
    if (!f.is_zero()) res.constraints.push_back({f, origin, j});
  }
  return res;
}

/// Writes exp = sum lambda_i b_i over the echelonized basis: lambda_i is the
/// expansion coefficient at the i-th pivot, and every other q^j in `jr` yields
/// exp_j - sum lambda_i b_i(j) = 0.
inline std::vector<Constraint> basis_match(const SymbolicQExp& exp, const std::vector<BasisForm>& basis, JRange jr,
                                           const std::string& origin = "basis") {
  if (jr.hi > exp.jmax) throw LinsysError("basis_match: j range exceeds expansion jmax");
  std::vector<Constraint> out;
  if (basis.empty()) {
    for (std::int64_t j = jr.lo; j <= jr.hi; ++j) {
      LinForm f = exp.coeff(j);
      if (!f.is_zero()) out.push_back({f, origin, j});
    }
    return out;
  }
  Matrix m;
  for (const auto& b : basis) {
    if (b.precision < jr.hi)
      throw LinsysError("basis form " + b.label + " known only through q^" + std::to_string(b.precision) +
                        ", need q^" + std::to_string(jr.hi));
    std::vector<CycNum> row;
    for (std::int64_t j = 1; j <= jr.hi; ++j) row.push_back(b.coeff(j));
    m.push_back(std::move(row));
  }
  RrefResult e = rref(m);
  if (e.rank < basis.size())
    throw LinsysError("basis is degenerate through q^" + std::to_string(jr.hi) + " (rank " + std::to_string(e.rank) +
                      " < " + std::to_string(basis.size()) + ")");
  std::vector<std::int64_t> pivot_j;
  for (auto p : e.pivots) pivot_j.push_back(static_cast<std::int64_t>(p) + 1);
  for (auto pj : pivot_j)
    if (!jr.contains(pj))
      throw LinsysError("basis pivot q^" + std::to_string(pj) + " lies outside the comparison range");

  std::vector<LinForm> lambda;
  for (auto pj : pivot_j) lambda.push_back(exp.coeff(pj));
  for (std::int64_t j = jr.lo; j <= jr.hi; ++j) {
    if (std::find(pivot_j.begin(), pivot_j.end(), j) != pivot_j.end()) continue;
    LinForm f = exp.coeff(j);
    for (std::size_t i = 0; i < lambda.size(); ++i)
      f = f - e.reduced[i][static_cast<std::size_t>(j - 1)] * lambda[i];
    if (!f.is_zero()) out.push_back({f, origin, j});
  }
  return out;
}

/// exp1_j - c exp2_j = 0 for j in `jr`, dropping identically-zero rows.
inline std::vector<Constraint> proportionality(const SymbolicQExp& exp1, const SymbolicQExp& exp2, const CycNum& c,
                                               JRange jr, const DeterminingSet& det,
                                               const std::string& origin = "proportionality") {
  for (const auto* e : {&exp1, &exp2})
    for (const auto& [j, f] : e->coeffs)
      for (const auto& [t, v] : f.terms())
        if (!det.contains(t)) throw LinsysError("proportionality: variable " + t.label() + " not in the determining set");
  std::vector<Constraint> out;
  for (std::int64_t j = jr.lo; j <= jr.hi; ++j) {
    LinForm f = exp1.coeff(j) - c * exp2.coeff(j);
    if (!f.is_zero()) out.push_back({f, origin, j});
  }
  return out;
}

struct BoundReport {
  std::size_t num_vars = 0;
  std::size_t rank = 0;
  std::size_t upper_bound = 0;
  std::vector<IndexForm> variables;
  std::vector<IndexForm> free_variables;
  std::vector<Constraint> equations;  // deduplicated, input order
};

namespace detail {
inline std::vector<CycNum> dense_row(const LinForm& f, const DeterminingSet& det) {
  std::vector<CycNum> row(det.size(), CycNum(0));
  for (const auto& [t, c] : f.terms()) {
    auto idx = det.index_of(t);
    if (!idx) throw LinsysError("constraint variable " + t.label() + " is not in the determining set");
    row[*idx] = c;
  }
  return row;
}

// Scales so the first nonzero entry is 1.
inline std::vector<CycNum> normalized(std::vector<CycNum> row) {
  for (const auto& v : row) {
    if (v.is_zero()) continue;
    CycNum inv = v.inv();
    for (auto& x : row) x = x * inv;
    break;
  }
  return row;
}
}  // namespace detail

/// upper bound = |determining set| - rank. Rows equal up to a nonzero scalar are
/// echoed once.
inline BoundReport solve_bound(const std::vector<Constraint>& constraints, const DeterminingSet& det) {
  BoundReport rep;
  rep.num_vars = det.size();
  rep.variables = det.forms;
  Matrix rows;
  std::vector<std::vector<CycNum>> seen;
  for (const auto& c : constraints) {
    auto row = detail::dense_row(c.lhs, det);
    auto key = detail::normalized(row);
    bool dup = false;
    for (const auto& s : seen)
      if (s == key) {
        dup = true;
        break;
      }
    if (dup) continue;
    seen.push_back(std::move(key));
    rows.push_back(std::move(row));
    rep.equations.push_back(c);
  }
  RrefResult r = rref(rows);
  rep.rank = r.rank;
  rep.upper_bound = det.size() - r.rank;
  std::vector<bool> is_pivot(det.size(), false);
  for (auto p : r.pivots) is_pivot[p] = true;
  for (std::size_t i = 0; i < det.size(); ++i)
    if (!is_pivot[i]) rep.free_variables.push_back(det.forms[i]);
  return rep;
}

}  // namespace siegel
