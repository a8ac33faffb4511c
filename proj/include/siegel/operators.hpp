#pragma once

#include "siegel/character.hpp"
#include "siegel/cyclotomic.hpp"
#include "siegel/quadform.hpp"

#include <boost/multiprecision/integer.hpp>

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace siegel {

class OperatorError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Data shared by the Atkin-Lehner scalar computations. `level` is the Siegel
/// level l, `lprime` = det(s), `weight` the Siegel weight k (elliptic weight 2k).
struct ALContext {
  std::int64_t level;
  std::int64_t lprime;
  std::int64_t weight;
  DirichletChar chi;
  SendingMatrix s;

  static ALContext make(std::int64_t level, std::int64_t weight, DirichletChar chi, SendingMatrix s) {
    if (!s.valid()) throw OperatorError("sending matrix " + s.label() + " is not positive definite");
    ALContext ctx{level, s.det(), weight, std::move(chi), s};
    if (std::gcd(level, ctx.lprime) != 1)
      throw OperatorError("det(s) = " + std::to_string(ctx.lprime) + " shares a factor with level " +
                          std::to_string(level));
    if (ctx.chi.modulus() != level)
      throw OperatorError("character modulus " + std::to_string(ctx.chi.modulus()) + " differs from level " +
                          std::to_string(level));
    if (weight < 1) throw OperatorError("weight must be positive");
    return ctx;
  }
};

/// Integers with x*l*w - y*l'*z = 1, so that [[lx, y], [l l' z, lw]] = [[x, y], [l' z, l w]] diag(l, 1).
struct WlDecomposition {
  std::int64_t x, y, z, w;
};

enum class ScalarKind { WL, WLPRIME, FRICKE, FRICKE_COMBINED };

inline std::string to_string(ScalarKind k) {
  switch (k) {
    case ScalarKind::WL: return "WL";
    case ScalarKind::WLPRIME: return "WLPRIME";
    case ScalarKind::FRICKE: return "FRICKE";
    case ScalarKind::FRICKE_COMBINED: return "FRICKE_COMBINED";
  }
  return "?";
}

struct OperatorScalar {
  CycNum value;
  ScalarKind provenance;
  std::optional<WlDecomposition> decomposition;  // WL, FRICKE_COMBINED
  std::optional<std::int64_t> lhat;               // WLPRIME
  std::optional<std::int64_t> character_argument;  // residue fed to chi, mod l
};

namespace detail {
inline std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
  if (m == 1) return 0;
  std::int64_t g = m, x = 0, r = mod_floor(a, m), y = 1;
  while (r != 0) {
    std::int64_t q = g / r;
    std::int64_t t = g - q * r;
    g = r;
    r = t;
    t = x - q * y;
    x = y;
    y = t;
  }
  if (g != 1) throw OperatorError(std::to_string(a) + " is not invertible mod " + std::to_string(m));
  return mod_floor(x, m);
}

// Representative of z mod m in (-m/2, m/2].
inline std::int64_t centered(std::int64_t z, std::int64_t m) {
  z = mod_floor(z, m);
  return 2 * z > m ? z - m : z;
}
}  // namespace detail

/// Canonical decomposition with y = 1: z is the representative of -l'^{-1} mod l
/// of least absolute value, then x*w = (1 + l' z) / l with |w| minimal.
inline WlDecomposition wl_decomposition(std::int64_t l, std::int64_t lprime) {
  if (l < 2 || lprime < 1) throw OperatorError("wl_decomposition: need l >= 2 and l' >= 1");
  if (std::gcd(l, lprime) != 1)
    throw OperatorError("wl_decomposition: gcd(" + std::to_string(l) + ", " + std::to_string(lprime) + ") != 1");
  const std::int64_t y = 1;
  std::int64_t z = detail::centered(-detail::inverse_mod(lprime, l), l);
  std::int64_t xw = (1 + lprime * y * z) / l;
  WlDecomposition d{xw, y, z, 1};
  if (xw == 0) d = {1, y, z, 0};
  if (d.x * l * d.w - d.y * lprime * d.z != 1) throw std::logic_error("wl_decomposition: Bezout identity failed");
  return d;
}

/// W_l phi_s^* f = l^k chi(l' z^2) phi_{ls}^*(f|E_2): returns l^k chi(l' z^2 mod l).
inline OperatorScalar al_scalar_wl(const ALContext& ctx, const WlDecomposition& d) {
  if (d.x * ctx.level * d.w - d.y * ctx.lprime * d.z != 1)
    throw OperatorError("decomposition does not satisfy x l w - y l' z = 1");
  std::int64_t arg = mod_floor(mod_floor(ctx.lprime, ctx.level) * mod_floor(d.z * d.z, ctx.level), ctx.level);
  if (!ctx.chi.is_unit(arg))
    throw OperatorError("l' z^2 = " + std::to_string(arg) + " is not a unit mod " + std::to_string(ctx.level));
  BigInt lk = boost::multiprecision::pow(BigInt(ctx.level), static_cast<unsigned>(ctx.weight));
  return OperatorScalar{CycNum(Rational(lk)) * ctx.chi(arg), ScalarKind::WL, d, std::nullopt, arg};
}

inline OperatorScalar al_scalar_wl(const ALContext& ctx) {
  return al_scalar_wl(ctx, wl_decomposition(ctx.level, ctx.lprime));
}

/// phi_s^* f | W_l' = chi(det((1 - l lhat) s^{-1})) phi_s^* f, with lhat the least
/// positive inverse of l mod l'; the determinant is (1 - l lhat)^2 / l'.
inline OperatorScalar al_scalar_wlprime(const ALContext& ctx) {
  std::int64_t lhat = ctx.lprime == 1 ? 1 : detail::inverse_mod(ctx.level, ctx.lprime);
  if (lhat == 0) lhat = ctx.lprime;
  const std::int64_t u = 1 - ctx.level * lhat;
  const std::int64_t sq = u * u;
  if (sq % ctx.lprime != 0) throw std::logic_error("al_scalar_wlprime: (1 - l lhat)^2 not divisible by l'");
  std::int64_t arg = mod_floor(sq / ctx.lprime, ctx.level);
  if (!ctx.chi.is_unit(arg))
    throw OperatorError("(1 - l lhat)^2 / l' = " + std::to_string(arg) + " is not a unit mod " +
                        std::to_string(ctx.level));
  return OperatorScalar{ctx.chi(arg), ScalarKind::WLPRIME, std::nullopt, lhat, arg};
}

/// W_{l l'} phi_s^* f = (1/l)^k phi_{ls}^*(f|E_2).
inline OperatorScalar fricke_factor(const ALContext& ctx) {
  BigInt lk = boost::multiprecision::pow(BigInt(ctx.level), static_cast<unsigned>(ctx.weight));
  return OperatorScalar{CycNum(Rational(BigInt(1), lk)), ScalarKind::FRICKE, std::nullopt, std::nullopt,
                        std::nullopt};
}

/// W_{l l'} phi = l^{-2k} chi^{-1}(l' z^2) W_l phi: the ratio of the Fricke factor
/// to the W_l scalar.
inline OperatorScalar fricke_combined(const ALContext& ctx) {
  OperatorScalar wl = al_scalar_wl(ctx);
  OperatorScalar fr = fricke_factor(ctx);
  return OperatorScalar{fr.value / wl.value, ScalarKind::FRICKE_COMBINED, wl.decomposition, std::nullopt,
                        wl.character_argument};
}

inline OperatorScalar al_scalar(const ALContext& ctx, ScalarKind kind) {
  switch (kind) {
    case ScalarKind::WL: return al_scalar_wl(ctx);
    case ScalarKind::WLPRIME: return al_scalar_wlprime(ctx);
    case ScalarKind::FRICKE: return fricke_factor(ctx);
    case ScalarKind::FRICKE_COMBINED: return fricke_combined(ctx);
  }
  throw std::logic_error("unknown scalar kind");
}

}  // namespace siegel
