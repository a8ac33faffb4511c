#pragma once

#include "siegel/character.hpp"
#include "siegel/cyclotomic.hpp"
#include "siegel/linsys.hpp"
#include "siegel/operators.hpp"
#include "siegel/quadform.hpp"
#include "siegel/restrict.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace siegel {

using Json = nlohmann::json;

/// Malformed or inconsistent input, with a JSON-path-like location.
class IngestError : public std::runtime_error {
public:
  IngestError(const std::string& where, const std::string& what)
      : std::runtime_error(where.empty() ? what : where + ": " + what), where_(where) {}
  const std::string& where() const { return where_; }

private:
  std::string where_;
};

// ---------------------------------------------------------------------------
// Scalar encoding.
//
// CycNum: {"n": <order>, "c": ["p/q", ...]} over the power basis, exactly
// phi(n) entries on output. Coefficients inside expansions, bases, operators and
// reports are written as a bare rational string when rational, else as a CycNum
// object; readers accept either.
// ---------------------------------------------------------------------------

inline Json encode_cyc(const CycNum& x) {
  Json c = Json::array();
  for (const auto& r : x.coeffs()) c.push_back(to_string(r));
  return Json{{"n", x.order()}, {"c", c}};
}

inline CycNum decode_cyc(const Json& j, const std::string& where = "") {
  if (!j.is_object()) throw IngestError(where, "expected a cyclotomic number object {\"n\", \"c\"}");
  if (!j.contains("n") || !j["n"].is_number_integer()) throw IngestError(where, "missing integer field \"n\"");
  if (!j.contains("c") || !j["c"].is_array()) throw IngestError(where, "missing array field \"c\"");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "n" && it.key() != "c") throw IngestError(where, "unexpected field \"" + it.key() + "\"");
  std::int64_t n = j["n"].get<std::int64_t>();
  if (n < 1) throw IngestError(where, "root-of-unity order must be positive");
  std::vector<Rational> c;
  for (std::size_t i = 0; i < j["c"].size(); ++i) {
    const Json& e = j["c"][i];
    if (!e.is_string()) throw IngestError(where + ".c[" + std::to_string(i) + "]", "coefficients must be strings");
    try {
      c.push_back(parse_rational(e.get<std::string>()));
    } catch (const ParseError& ex) {
      throw IngestError(where + ".c[" + std::to_string(i) + "]", ex.what());
    }
  }
  return CycNum::make(n, std::move(c));
}

inline Json encode_coeff(const CycNum& x) {
  if (x.is_rational()) return to_string(x.constant());
  return encode_cyc(x);
}

inline CycNum decode_coeff(const Json& j, const std::string& where = "") {
  if (j.is_string()) {
    try {
      return CycNum(parse_rational(j.get<std::string>()));
    } catch (const ParseError& ex) {
      throw IngestError(where, ex.what());
    }
  }
  return decode_cyc(j, where);
}

inline Json encode_form(const IndexForm& t) { return Json::array({t.a, t.b, t.c}); }

inline IndexForm decode_form(const Json& j, const std::string& where = "") {
  if (!j.is_array() || j.size() != 3) throw IngestError(where, "index form must be [a, b, c]");
  for (const auto& e : j)
    if (!e.is_number_integer()) throw IngestError(where, "index form entries must be integers");
  IndexForm t{j[0].get<std::int64_t>(), j[1].get<std::int64_t>(), j[2].get<std::int64_t>()};
  if (!t.valid()) throw IngestError(where, "not a positive definite even-encoded index " + t.label());
  return t;
}

inline Json encode_linform(const LinForm& f) {
  Json terms = Json::array();
  for (const auto& [t, c] : f.terms()) terms.push_back(Json::array({encode_form(t), encode_coeff(c)}));
  return terms;
}

inline LinForm decode_linform(const Json& j, const std::string& where = "") {
  if (!j.is_array()) throw IngestError(where, "linear form must be an array of [form, coeff] pairs");
  LinForm f;
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::string w = where + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].size() != 2) throw IngestError(w, "expected [form, coeff]");
    f.add(decode_form(j[i][0], w + "[0]"), decode_coeff(j[i][1], w + "[1]"));
  }
  return f;
}

/// {"jmax": J, "coeffs": {"2": [[[2,0,2],"1"], ...], ...}}
inline Json encode_qexp(const SymbolicQExp& e) {
  Json coeffs = Json::object();
  for (const auto& [j, f] : e.coeffs) coeffs[std::to_string(j)] = encode_linform(f);
  return Json{{"jmax", e.jmax}, {"coeffs", coeffs}};
}

inline SymbolicQExp decode_qexp(const Json& j, const std::string& where = "") {
  if (!j.is_object() || !j.contains("jmax") || !j.contains("coeffs"))
    throw IngestError(where, "expansion needs \"jmax\" and \"coeffs\"");
  SymbolicQExp e;
  e.jmax = j["jmax"].get<std::int64_t>();
  for (auto it = j["coeffs"].begin(); it != j["coeffs"].end(); ++it) {
    std::int64_t q = std::stoll(it.key());
    if (q < 1 || q > e.jmax) throw IngestError(where + ".coeffs." + it.key(), "exponent outside 1..jmax");
    e.set(q, decode_linform(it.value(), where + ".coeffs." + it.key()));
  }
  return e;
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IngestError(path.string(), "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return Json::parse(ss.str());
  } catch (const Json::parse_error& ex) {
    throw IngestError(path.string(), std::string("invalid JSON: ") + ex.what());
  }
}

namespace detail {
inline const Json& require(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw IngestError(where, "missing field \"" + key + "\"");
  return j[key];
}
inline std::int64_t require_int(const Json& j, const std::string& key, const std::string& where) {
  const Json& v = require(j, key, where);
  if (!v.is_number_integer()) throw IngestError(where + "." + key, "expected an integer");
  return v.get<std::int64_t>();
}
inline std::string require_string(const Json& j, const std::string& key, const std::string& where) {
  const Json& v = require(j, key, where);
  if (!v.is_string()) throw IngestError(where + "." + key, "expected a string");
  return v.get<std::string>();
}
}  // namespace detail

// ---------------------------------------------------------------------------
// Characters: {"label", "modulus", "zeta_order", "generators": [[r, CycNum], ...]}
// ---------------------------------------------------------------------------

struct CharacterFile {
  DirichletChar chi = DirichletChar::trivial(1);
  std::vector<std::pair<std::int64_t, CycNum>> generators;
  Json provenance;
};

inline CharacterFile parse_character_file(const Json& j, const std::string& where = "character") {
  std::int64_t modulus = detail::require_int(j, "modulus", where);
  std::int64_t zeta = detail::require_int(j, "zeta_order", where);
  std::string label = detail::require_string(j, "label", where);
  const Json& gens = detail::require(j, "generators", where);
  if (!gens.is_array()) throw IngestError(where + ".generators", "expected an array");
  CharacterFile f;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    std::string w = where + ".generators[" + std::to_string(i) + "]";
    if (!gens[i].is_array() || gens[i].size() != 2 || !gens[i][0].is_number_integer())
      throw IngestError(w, "expected [residue, value]");
    f.generators.emplace_back(gens[i][0].get<std::int64_t>(), decode_cyc(gens[i][1], w + "[1]"));
  }
  if (j.contains("provenance")) f.provenance = j["provenance"];
  try {
    f.chi = DirichletChar::from_generators(modulus, zeta, f.generators, label);
  } catch (const CharacterError& ex) {
    throw IngestError(where, ex.what());
  }
  return f;
}

inline DirichletChar parse_character(const Json& j, const std::string& where = "character") {
  return parse_character_file(j, where).chi;
}

inline Json encode_character(const CharacterFile& f) {
  Json gens = Json::array();
  for (const auto& [r, v] : f.generators) gens.push_back(Json::array({r, encode_cyc(v)}));
  Json j{{"label", f.chi.label()}, {"modulus", f.chi.modulus()}, {"zeta_order", f.chi.zeta_order()},
         {"generators", gens}};
  if (!f.provenance.is_null()) j["provenance"] = f.provenance;
  return j;
}

inline CharacterFile load_character_file(const std::filesystem::path& path) {
  return parse_character_file(read_json_file(path), path.string());
}

inline DirichletChar load_character(const std::filesystem::path& path) { return load_character_file(path).chi; }

// ---------------------------------------------------------------------------
// Bases: {"label", "level", "weight", "character", "precision",
//         "forms": [{"label", "coeffs": [[j, coeff], ...]}], "provenance"?}
// ---------------------------------------------------------------------------

struct BasisFile {
  std::string label;
  std::int64_t level = 1;
  std::int64_t weight = 1;
  std::string character;
  std::int64_t precision = 0;
  std::vector<BasisForm> forms;
  Json provenance;  // null when absent
};

inline BasisFile parse_basis(const Json& j, const std::string& where = "basis") {
  BasisFile b;
  b.label = detail::require_string(j, "label", where);
  b.level = detail::require_int(j, "level", where);
  b.weight = detail::require_int(j, "weight", where);
  b.character = detail::require_string(j, "character", where);
  b.precision = detail::require_int(j, "precision", where);
  if (b.level < 1 || b.weight < 1 || b.precision < 0) throw IngestError(where, "level, weight must be positive and precision nonnegative");
  if (j.contains("provenance")) b.provenance = j["provenance"];
  const Json& forms = detail::require(j, "forms", where);
  if (!forms.is_array()) throw IngestError(where + ".forms", "expected an array");
  for (std::size_t i = 0; i < forms.size(); ++i) {
    std::string w = where + ".forms[" + std::to_string(i) + "]";
    BasisForm f;
    f.label = detail::require_string(forms[i], "label", w);
    f.level = b.level;
    f.weight = b.weight;
    f.precision = b.precision;
    const Json& coeffs = detail::require(forms[i], "coeffs", w);
    if (!coeffs.is_array()) throw IngestError(w + ".coeffs", "expected an array of [exponent, coeff]");
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      std::string wk = w + ".coeffs[" + std::to_string(k) + "]";
      if (!coeffs[k].is_array() || coeffs[k].size() != 2 || !coeffs[k][0].is_number_integer())
        throw IngestError(wk, "expected [exponent, coeff]");
      std::int64_t e = coeffs[k][0].get<std::int64_t>();
      if (e < 1 || e > b.precision) throw IngestError(wk, "exponent outside 1..precision");
      if (f.coeffs.count(e)) throw IngestError(wk, "duplicate exponent " + std::to_string(e));
      f.coeffs[e] = decode_coeff(coeffs[k][1], wk + "[1]");
    }
    if (f.is_zero()) throw IngestError(w, "basis form is identically zero");
    b.forms.push_back(std::move(f));
  }
  return b;
}

inline Json encode_basis(const BasisFile& b) {
  Json forms = Json::array();
  for (const auto& f : b.forms) {
    Json coeffs = Json::array();
    for (const auto& [e, c] : f.coeffs)
      if (!c.is_zero()) coeffs.push_back(Json::array({e, encode_coeff(c)}));
    forms.push_back(Json{{"label", f.label}, {"coeffs", coeffs}});
  }
  Json j{{"label", b.label}, {"level", b.level}, {"weight", b.weight}, {"character", b.character},
         {"precision", b.precision}, {"forms", forms}};
  if (!b.provenance.is_null()) j["provenance"] = b.provenance;
  return j;
}

inline BasisFile load_basis_file(const std::filesystem::path& path) {
  return parse_basis(read_json_file(path), path.string());
}

inline std::vector<BasisForm> load_basis(const std::filesystem::path& path) { return load_basis_file(path).forms; }

// ---------------------------------------------------------------------------
// Operators: {"label", "level", "weight", "character", "dim", "entries",
//             "surrogate"?, "provenance"?}
// ---------------------------------------------------------------------------

struct OperatorFile {
  OperatorMatrix op;
  std::string character;
  Json provenance;
};

inline OperatorFile parse_operator(const Json& j, const std::string& where = "operator") {
  OperatorFile f;
  f.op.label = detail::require_string(j, "label", where);
  f.op.level = detail::require_int(j, "level", where);
  f.op.weight = detail::require_int(j, "weight", where);
  f.character = detail::require_string(j, "character", where);
  std::int64_t dim = detail::require_int(j, "dim", where);
  if (dim < 0) throw IngestError(where + ".dim", "dimension must be nonnegative");
  const Json& rows = detail::require(j, "entries", where);
  if (!rows.is_array() || static_cast<std::int64_t>(rows.size()) != dim)
    throw IngestError(where + ".entries", "expected " + std::to_string(dim) + " rows");
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::string w = where + ".entries[" + std::to_string(r) + "]";
    if (!rows[r].is_array() || static_cast<std::int64_t>(rows[r].size()) != dim)
      throw IngestError(w, "operator matrix is not square");
    std::vector<CycNum> row;
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      row.push_back(decode_coeff(rows[r][c], w + "[" + std::to_string(c) + "]"));
    f.op.entries.push_back(std::move(row));
  }
  if (j.contains("surrogate")) {
    if (!j["surrogate"].is_boolean()) throw IngestError(where + ".surrogate", "expected a boolean");
    f.op.surrogate = j["surrogate"].get<bool>();
  }
  if (j.contains("provenance")) {
    f.provenance = j["provenance"];
    if (f.provenance.is_object() && f.provenance.contains("note") && f.provenance["note"].is_string())
      f.op.provenance = f.provenance["note"].get<std::string>();
  }
  return f;
}

inline Json encode_operator(const OperatorFile& f) {
  Json rows = Json::array();
  for (const auto& row : f.op.entries) {
    Json r = Json::array();
    for (const auto& v : row) r.push_back(encode_coeff(v));
    rows.push_back(r);
  }
  Json j{{"label", f.op.label}, {"level", f.op.level}, {"weight", f.op.weight}, {"character", f.character},
         {"dim", f.op.dim()}, {"entries", rows}};
  if (f.op.surrogate) j["surrogate"] = true;
  if (!f.provenance.is_null()) j["provenance"] = f.provenance;
  return j;
}

inline OperatorFile load_operator_file(const std::filesystem::path& path) {
  return parse_operator(read_json_file(path), path.string());
}

inline OperatorMatrix load_operator(const std::filesystem::path& path) { return load_operator_file(path).op; }

// ---------------------------------------------------------------------------
// Project configuration.
// ---------------------------------------------------------------------------

enum class RecipeKind { KERNEL_VANISHING, BASIS_MATCH, PROPORTIONALITY };

inline std::string to_string(RecipeKind k) {
  switch (k) {
    case RecipeKind::KERNEL_VANISHING: return "kernel_vanishing";
    case RecipeKind::BASIS_MATCH: return "basis_match";
    case RecipeKind::PROPORTIONALITY: return "proportionality";
  }
  return "?";
}

/// Either a named Atkin-Lehner scalar ("one", "wl", "wlprime", "fricke",
/// "fricke_combined") or a literal value.
struct ScalarSpec {
  std::optional<ScalarKind> kind;  // nullopt with no literal means 1
  std::optional<CycNum> literal;

  std::string describe() const {
    if (literal) return literal->format();
    if (kind) return to_string(*kind);
    return "1";
  }
};

/// Expansion a proportionality recipe compares. "phi" is the restriction itself
/// (unknowns a0); "image" is the restriction of the level-raised form, whose
/// coefficients are not unknowns of this system.
enum class ExpansionRef { PHI, IMAGE };

struct Recipe {
  std::string label;
  RecipeKind kind = RecipeKind::KERNEL_VANISHING;
  std::size_t sending = 0;
  JRange jrange;
  std::string basis;     // BASIS_MATCH
  std::string op;        // KERNEL_VANISHING
  ScalarSpec scalar;     // KERNEL_VANISHING eigenvalue, PROPORTIONALITY c
  ScalarSpec lhs, rhs;   // PROPORTIONALITY factors
  ExpansionRef expansion = ExpansionRef::PHI;
};

/// Validated configuration with every referenced file loaded.
struct Plan {
  std::filesystem::path source;
  std::string label;
  std::int64_t level = 1;
  std::int64_t weight = 1;
  DirichletChar chi = DirichletChar::trivial(1);
  std::optional<Rational> threshold;
  std::vector<SendingMatrix> sending;
  std::optional<std::int64_t> jmax;
  std::map<std::string, BasisFile> bases;
  std::map<std::string, OperatorFile> operators;
  std::vector<Recipe> recipes;
  std::optional<std::int64_t> classical_dim;
  std::optional<std::int64_t> published_upper_bound;
};

namespace detail {
inline ScalarSpec parse_scalar(const Json& j, const std::string& where) {
  ScalarSpec s;
  if (j.is_string()) {
    const std::string v = j.get<std::string>();
    if (v == "one") return s;
    if (v == "wl") s.kind = ScalarKind::WL;
    else if (v == "wlprime") s.kind = ScalarKind::WLPRIME;
    else if (v == "fricke") s.kind = ScalarKind::FRICKE;
    else if (v == "fricke_combined") s.kind = ScalarKind::FRICKE_COMBINED;
    else {
      try {
        s.literal = CycNum(parse_rational(v));
      } catch (const ParseError&) {
        throw IngestError(where, "unknown scalar \"" + v + "\"");
      }
    }
    return s;
  }
  s.literal = decode_cyc(j, where);
  return s;
}

inline std::filesystem::path resolve(const std::filesystem::path& base, const std::string& rel) {
  std::filesystem::path p(rel);
  return p.is_absolute() ? p : base / p;
}
}  // namespace detail

/// Parses and validates a configuration; paths are relative to `base_dir`.
/// Every error names the offending location.
inline Plan parse_config(const Json& j, const std::filesystem::path& base_dir, const std::string& where = "config") {
  Plan plan;
  if (!j.is_object()) throw IngestError(where, "expected an object");
  plan.label = j.contains("label") && j["label"].is_string() ? j["label"].get<std::string>() : "";
  plan.level = detail::require_int(j, "siegel_level", where);
  plan.weight = detail::require_int(j, "weight", where);
  if (plan.weight < 1) throw IngestError(where + ".weight", "weight must be positive");
  if (!prime_power(plan.level)) throw IngestError(where + ".siegel_level", "level must be a prime power");

  const std::string chi_ref = detail::require_string(j, "character", where);
  if (chi_ref == "trivial") {
    plan.chi = DirichletChar::trivial(plan.level);
  } else {
    auto path = detail::resolve(base_dir, chi_ref);
    if (!std::filesystem::exists(path)) throw IngestError(where + ".character", "file not found: " + path.string());
    plan.chi = load_character(path);
  }
  if (plan.chi.modulus() != plan.level)
    throw IngestError(where + ".character", "character modulus " + std::to_string(plan.chi.modulus()) +
                                                " differs from level " + std::to_string(plan.level));

  if (j.contains("threshold")) {
    if (!j["threshold"].is_string()) throw IngestError(where + ".threshold", "expected a rational string");
    try {
      plan.threshold = parse_rational(j["threshold"].get<std::string>());
    } catch (const ParseError& ex) {
      throw IngestError(where + ".threshold", ex.what());
    }
  }
  if (j.contains("jmax")) {
    plan.jmax = detail::require_int(j, "jmax", where);
    if (*plan.jmax < 1) throw IngestError(where + ".jmax", "must be positive");
  }

  const Json& sm = detail::require(j, "sending_matrices", where);
  if (!sm.is_array() || sm.empty()) throw IngestError(where + ".sending_matrices", "expected a nonempty array");
  for (std::size_t i = 0; i < sm.size(); ++i) {
    std::string w = where + ".sending_matrices[" + std::to_string(i) + "]";
    if (!sm[i].is_array() || sm[i].size() != 3) throw IngestError(w, "expected [s1, s2, s4]");
    for (const auto& e : sm[i])
      if (!e.is_number_integer()) throw IngestError(w, "entries must be integers");
    SendingMatrix s{sm[i][0].get<std::int64_t>(), sm[i][1].get<std::int64_t>(), sm[i][2].get<std::int64_t>()};
    if (!s.valid()) throw IngestError(w, "sending matrix " + s.label() + " is not positive definite");
    if (std::gcd(s.det(), plan.level) != 1)
      throw IngestError(w, "det(s) = " + std::to_string(s.det()) + " shares a factor with level " +
                               std::to_string(plan.level));
    plan.sending.push_back(s);
  }

  if (j.contains("bases")) {
    if (!j["bases"].is_object()) throw IngestError(where + ".bases", "expected an object");
    for (auto it = j["bases"].begin(); it != j["bases"].end(); ++it) {
      std::string w = where + ".bases." + it.key();
      if (!it.value().is_string()) throw IngestError(w, "expected a file path");
      auto path = detail::resolve(base_dir, it.value().get<std::string>());
      if (!std::filesystem::exists(path)) throw IngestError(w, "file not found: " + path.string());
      plan.bases.emplace(it.key(), load_basis_file(path));
    }
  }
  if (j.contains("operators")) {
    if (!j["operators"].is_object()) throw IngestError(where + ".operators", "expected an object");
    for (auto it = j["operators"].begin(); it != j["operators"].end(); ++it) {
      std::string w = where + ".operators." + it.key();
      if (!it.value().is_string()) throw IngestError(w, "expected a file path");
      auto path = detail::resolve(base_dir, it.value().get<std::string>());
      if (!std::filesystem::exists(path)) throw IngestError(w, "file not found: " + path.string());
      plan.operators.emplace(it.key(), load_operator_file(path));
    }
  }

  const Json& recipes = detail::require(j, "recipes", where);
  if (!recipes.is_array()) throw IngestError(where + ".recipes", "expected an array");
  for (std::size_t i = 0; i < recipes.size(); ++i) {
    std::string w = where + ".recipes[" + std::to_string(i) + "]";
    const Json& r = recipes[i];
    Recipe rec;
    rec.label = r.contains("label") && r["label"].is_string() ? r["label"].get<std::string>() : w;
    const std::string kind = detail::require_string(r, "kind", w);
    if (kind == "kernel_vanishing") rec.kind = RecipeKind::KERNEL_VANISHING;
    else if (kind == "basis_match") rec.kind = RecipeKind::BASIS_MATCH;
    else if (kind == "proportionality") rec.kind = RecipeKind::PROPORTIONALITY;
    else throw IngestError(w + ".kind", "unknown recipe kind \"" + kind + "\"");

    std::int64_t si = detail::require_int(r, "sending", w);
    if (si < 0 || si >= static_cast<std::int64_t>(plan.sending.size()))
      throw IngestError(w + ".sending", "index out of range");
    rec.sending = static_cast<std::size_t>(si);

    const Json& jr = detail::require(r, "jrange", w);
    if (!jr.is_array() || jr.size() != 2 || !jr[0].is_number_integer() || !jr[1].is_number_integer())
      throw IngestError(w + ".jrange", "expected [lo, hi]");
    rec.jrange = {jr[0].get<std::int64_t>(), jr[1].get<std::int64_t>()};
    if (rec.jrange.lo < 1 || rec.jrange.hi < rec.jrange.lo) throw IngestError(w + ".jrange", "need 1 <= lo <= hi");
    if (plan.jmax && rec.jrange.hi > *plan.jmax) throw IngestError(w + ".jrange", "exceeds jmax");

    switch (rec.kind) {
      case RecipeKind::BASIS_MATCH: {
        rec.basis = detail::require_string(r, "basis", w);
        auto it = plan.bases.find(rec.basis);
        if (it == plan.bases.end()) throw IngestError(w + ".basis", "unknown basis \"" + rec.basis + "\"");
        if (it->second.level != plan.level || it->second.weight != 2 * plan.weight)
          throw IngestError(w + ".basis", "basis has level " + std::to_string(it->second.level) + ", weight " +
                                              std::to_string(it->second.weight) + "; expected level " +
                                              std::to_string(plan.level) + ", weight " +
                                              std::to_string(2 * plan.weight));
        if (it->second.precision < rec.jrange.hi)
          throw IngestError(w + ".jrange", "basis known only through q^" + std::to_string(it->second.precision));
        break;
      }
      case RecipeKind::KERNEL_VANISHING: {
        rec.op = detail::require_string(r, "operator", w);
        auto it = plan.operators.find(rec.op);
        if (it == plan.operators.end()) throw IngestError(w + ".operator", "unknown operator \"" + rec.op + "\"");
        const std::int64_t lvl = plan.level * plan.sending[rec.sending].det();
        if (it->second.op.level != lvl || it->second.op.weight != 2 * plan.weight)
          throw IngestError(w + ".operator", "operator acts on level " + std::to_string(it->second.op.level) +
                                                 ", weight " + std::to_string(it->second.op.weight) +
                                                 "; restriction has level " + std::to_string(lvl) + ", weight " +
                                                 std::to_string(2 * plan.weight));
        rec.scalar = detail::parse_scalar(detail::require(r, "scalar", w), w + ".scalar");
        break;
      }
      case RecipeKind::PROPORTIONALITY: {
        rec.lhs = detail::parse_scalar(detail::require(r, "lhs", w), w + ".lhs");
        rec.rhs = detail::parse_scalar(detail::require(r, "rhs", w), w + ".rhs");
        rec.scalar = detail::parse_scalar(detail::require(r, "scalar", w), w + ".scalar");
        const std::string e = r.contains("expansion") ? detail::require_string(r, "expansion", w) : "phi";
        if (e == "phi") rec.expansion = ExpansionRef::PHI;
        else if (e == "image") rec.expansion = ExpansionRef::IMAGE;
        else throw IngestError(w + ".expansion", "expected \"phi\" or \"image\"");
        break;
      }
    }
    plan.recipes.push_back(std::move(rec));
  }

  if (j.contains("classical_dim")) {
    plan.classical_dim = detail::require_int(j, "classical_dim", where);
    if (*plan.classical_dim < 0) throw IngestError(where + ".classical_dim", "must be nonnegative");
  }
  if (j.contains("published_upper_bound"))
    plan.published_upper_bound = detail::require_int(j, "published_upper_bound", where);
  return plan;
}

inline Plan validate_config(const std::filesystem::path& path) {
  Json j = read_json_file(path);
  Plan plan = parse_config(j, path.parent_path(), path.string());
  plan.source = path;
  return plan;
}

/// Lower bound on the dimension reported by the configuration, if any.
inline std::optional<std::int64_t> report_lower_bound(const Plan& plan) { return plan.classical_dim; }

}  // namespace siegel
