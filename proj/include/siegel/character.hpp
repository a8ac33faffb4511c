#pragma once

#include "siegel/cyclotomic.hpp"

#include <cstdint>
#include <deque>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace siegel {

class CharacterError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline std::int64_t mod_floor(std::int64_t a, std::int64_t n) { return ((a % n) + n) % n; }

/// Dirichlet character mod N with values in <zeta_n>, realized as a complete table
/// over (Z/NZ)^x. Values are stored as exponents k with chi(a) = zeta_n^k.
class DirichletChar {
public:
  /// Closes the assignments under multiplication. Every assigned value must be a
  /// power of zeta_n; the residues must generate the unit group.
  static DirichletChar from_generators(std::int64_t modulus, std::int64_t zeta_order,
                                       const std::vector<std::pair<std::int64_t, CycNum>>& assignments,
                                       std::string label = {}) {
    if (modulus < 1) throw CharacterError("character modulus must be positive");
    if (zeta_order < 1) throw CharacterError("zeta order must be positive");
    DirichletChar chi;
    chi.modulus_ = modulus;
    chi.zeta_order_ = zeta_order;
    chi.label_ = std::move(label);
    chi.table_.assign(static_cast<std::size_t>(modulus), std::nullopt);

    std::vector<std::pair<std::int64_t, std::int64_t>> gens;
    for (const auto& [residue, value] : assignments) {
      std::int64_t r = mod_floor(residue, modulus);
      if (std::gcd(r, modulus) != 1)
        throw CharacterError("assigned residue " + std::to_string(residue) + " is not a unit mod " +
                             std::to_string(modulus));
      if (zeta_order % value.order() != 0)
        throw CharacterError("assigned value " + value.format() + " does not lie in Q(zeta_" +
                             std::to_string(zeta_order) + ")");
      std::int64_t k = root_exponent(value.lift(zeta_order));
      if (k < 0)
        throw CharacterError("assigned value " + value.format() + " is not a power of zeta_" +
                             std::to_string(zeta_order));
      gens.emplace_back(r, k);
    }

    // Breadth-first closure from chi(1) = 1; any residue reached twice must agree.
    std::deque<std::int64_t> queue;
    chi.table_[static_cast<std::size_t>(1 % modulus)] = 0;
    queue.push_back(1 % modulus);
    while (!queue.empty()) {
      std::int64_t a = queue.front();
      queue.pop_front();
      std::int64_t ka = *chi.table_[static_cast<std::size_t>(a)];
      for (const auto& [g, kg] : gens) {
        std::int64_t b = (a * g) % modulus;
        std::int64_t kb = (ka + kg) % zeta_order;
        auto& slot = chi.table_[static_cast<std::size_t>(b)];
        if (!slot) {
          slot = kb;
          queue.push_back(b);
        } else if (*slot != kb) {
          throw CharacterError("inconsistent assignments: residue " + std::to_string(b) +
                               " receives conflicting values zeta^" + std::to_string(*slot) + " and zeta^" +
                               std::to_string(kb));
        }
      }
    }
    for (std::int64_t a = 0; a < modulus; ++a) {
      if (std::gcd(a, modulus) == 1 && !chi.table_[static_cast<std::size_t>(a)])
        throw CharacterError("assigned residues do not generate (Z/" + std::to_string(modulus) + "Z)^x");
    }
    return chi;
  }

  static DirichletChar trivial(std::int64_t modulus, std::string label = "trivial") {
    if (modulus < 1) throw CharacterError("character modulus must be positive");
    DirichletChar chi;
    chi.modulus_ = modulus;
    chi.zeta_order_ = 1;
    chi.label_ = std::move(label);
    chi.table_.assign(static_cast<std::size_t>(modulus), std::nullopt);
    for (std::int64_t a = 0; a < modulus; ++a)
      if (std::gcd(a, modulus) == 1) chi.table_[static_cast<std::size_t>(a)] = 0;
    return chi;
  }

  std::int64_t modulus() const { return modulus_; }
  std::int64_t zeta_order() const { return zeta_order_; }
  const std::string& label() const { return label_; }

  bool is_unit(std::int64_t a) const { return table_[static_cast<std::size_t>(mod_floor(a, modulus_))].has_value(); }

  /// Exponent k with chi(a) = zeta_n^k. Non-units are an error.
  std::int64_t exponent(std::int64_t a) const {
    const auto& slot = table_[static_cast<std::size_t>(mod_floor(a, modulus_))];
    if (!slot)
      throw CharacterError("character mod " + std::to_string(modulus_) + " evaluated at non-unit " +
                           std::to_string(a));
    return *slot;
  }

  CycNum operator()(std::int64_t a) const { return CycNum::root(zeta_order_, exponent(a)); }

  /// chi'(a) = chi(a mod N) on units mod N*m.
  DirichletChar extend(std::int64_t m) const {
    if (m < 1) throw CharacterError("extension factor must be positive");
    DirichletChar ext;
    ext.modulus_ = modulus_ * m;
    ext.zeta_order_ = zeta_order_;
    ext.label_ = label_;
    ext.table_.assign(static_cast<std::size_t>(ext.modulus_), std::nullopt);
    for (std::int64_t a = 0; a < ext.modulus_; ++a)
      if (std::gcd(a, ext.modulus_) == 1) ext.table_[static_cast<std::size_t>(a)] = exponent(a % modulus_);
    return ext;
  }

  /// Least r >= 1 with chi^r trivial.
  std::int64_t order() const {
    std::int64_t r = 1;
    for (const auto& slot : table_) {
      if (!slot) continue;
      std::int64_t ord = zeta_order_ / std::gcd(*slot, zeta_order_);
      r = std::lcm(r, ord);
    }
    return r;
  }

  bool is_trivial() const { return order() == 1; }

  /// Units mod N in increasing order.
  std::vector<std::int64_t> units() const {
    std::vector<std::int64_t> u;
    for (std::int64_t a = 0; a < modulus_; ++a)
      if (table_[static_cast<std::size_t>(a)]) u.push_back(a);
    return u;
  }

private:
  DirichletChar() = default;

  std::int64_t modulus_ = 1;
  std::int64_t zeta_order_ = 1;
  std::string label_;
  std::vector<std::optional<std::int64_t>> table_;
};

inline DirichletChar char_from_generators(std::int64_t modulus, std::int64_t zeta_order,
                                          const std::vector<std::pair<std::int64_t, CycNum>>& assignments) {
  return DirichletChar::from_generators(modulus, zeta_order, assignments);
}
inline CycNum char_eval(const DirichletChar& chi, std::int64_t a) { return chi(a); }
inline DirichletChar char_extend(const DirichletChar& chi, std::int64_t m) { return chi.extend(m); }
inline std::int64_t char_order(const DirichletChar& chi) { return chi.order(); }

}  // namespace siegel
