#pragma once

#include "siegel/ingest.hpp"
#include "siegel/linsys.hpp"
#include "siegel/operators.hpp"
#include "siegel/quadform.hpp"
#include "siegel/restrict.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace siegel {

/// A recipe that could not contribute constraints; the run still reports the
/// bound from the remaining recipes but exits nonzero.
struct Refusal {
  std::string recipe;
  std::string reason;
};

struct BoundResult {
  std::int64_t level = 1;
  std::int64_t weight = 1;
  std::string character;
  DeterminingSet det;
  BoundReport report;
  std::optional<std::int64_t> lower_bound;
  std::optional<std::int64_t> published_upper_bound;
  std::vector<std::string> flags;
  std::vector<std::string> warnings;
  std::vector<Refusal> refusals;
};

struct RunOptions {
  std::optional<OracleBox> oracle_box;  // build expansions from the listing search instead
  std::optional<Rational> threshold;    // overrides the configured threshold
};

inline DeterminingSet plan_determining_set(const Plan& plan, const std::optional<Rational>& override_threshold = {}) {
  auto th = override_threshold ? override_threshold : plan.threshold;
  return determining_set_for_level(plan.level, plan.weight, th);
}

inline CycNum resolve_scalar(const ScalarSpec& spec, const ALContext& ctx) {
  if (spec.literal) return *spec.literal;
  if (spec.kind) return al_scalar(ctx, *spec.kind).value;
  return CycNum(1);
}

inline BoundResult run_bound(const Plan& plan, const RunOptions& opts = {}) {
  BoundResult res;
  res.level = plan.level;
  res.weight = plan.weight;
  res.character = plan.chi.label();
  res.det = plan_determining_set(plan, opts.threshold);
  res.lower_bound = report_lower_bound(plan);
  res.published_upper_bound = plan.published_upper_bound;

  std::map<std::size_t, SymbolicQExp> expansions;
  auto expansion = [&](std::size_t si) -> const SymbolicQExp& {
    auto it = expansions.find(si);
    if (it != expansions.end()) return it->second;
    const SendingMatrix& s = plan.sending[si];
    std::int64_t jmax = plan.jmax.value_or(0);
    for (const auto& r : plan.recipes)
      if (r.sending == si) jmax = std::max(jmax, r.jrange.hi);
    jmax = std::max(jmax, std::int64_t{1});
    SymbolicQExp e = opts.oracle_box ? restrict_expansion_oracle(res.det, s, jmax, *opts.oracle_box)
                                     : restrict_expansion(res.det, s, jmax);
    return expansions.emplace(si, std::move(e)).first->second;
  };

  std::vector<Constraint> all;
  for (const auto& r : plan.recipes) {
    const SendingMatrix& s = plan.sending[r.sending];
    const SymbolicQExp& e = expansion(r.sending);
    const std::string origin = r.label;
    try {
      switch (r.kind) {
        case RecipeKind::BASIS_MATCH: {
          auto cs = basis_match(e, plan.bases.at(r.basis).forms, r.jrange, origin);
          all.insert(all.end(), cs.begin(), cs.end());
          break;
        }
        case RecipeKind::KERNEL_VANISHING: {
          const OperatorFile& of = plan.operators.at(r.op);
          ALContext ctx = ALContext::make(plan.level, plan.weight, plan.chi, s);
          CycNum c = resolve_scalar(r.scalar, ctx);
          auto kr = kernel_vanishing(e, of.op, c, r.jrange,
                                     std::make_pair(plan.level * s.det(), 2 * plan.weight), origin);
          if (of.op.surrogate)
            res.warnings.push_back(r.label + ": operator " + of.op.label +
                                   " is a surrogate matrix; the constraints hold only if its kernel matches the true operator's");
          if (kr.refused) {
            res.refusals.push_back({r.label, "operator " + of.op.label + " minus " + c.format() +
                                                 " has nullity " + std::to_string(kr.nullity)});
            break;
          }
          all.insert(all.end(), kr.constraints.begin(), kr.constraints.end());
          break;
        }
        case RecipeKind::PROPORTIONALITY: {
          ALContext ctx = ALContext::make(plan.level, plan.weight, plan.chi, s);
          CycNum f1 = resolve_scalar(r.lhs, ctx);
          CycNum f2 = resolve_scalar(r.rhs, ctx);
          CycNum c = resolve_scalar(r.scalar, ctx);
          auto cs = proportionality(f1 * e, f2 * e, c, r.jrange, res.det, origin);
          if (r.expansion == ExpansionRef::IMAGE && !cs.empty()) {
            res.refusals.push_back({r.label, "relation does not cancel and involves coefficients outside the system"});
            break;
          }
          all.insert(all.end(), cs.begin(), cs.end());
          break;
        }
      }
    } catch (const LinsysError& ex) {
      res.refusals.push_back({r.label, ex.what()});
    } catch (const OperatorError& ex) {
      res.refusals.push_back({r.label, ex.what()});
    }
  }

  res.report = solve_bound(all, res.det);
  if (res.lower_bound && static_cast<std::size_t>(*res.lower_bound) > res.report.upper_bound)
    res.flags.push_back("inconsistent: lower bound " + std::to_string(*res.lower_bound) + " exceeds upper bound " +
                        std::to_string(res.report.upper_bound));
  if (res.published_upper_bound) {
    auto pub = static_cast<std::size_t>(*res.published_upper_bound);
    if (res.report.upper_bound < pub)
      res.flags.push_back("sharper: upper bound " + std::to_string(res.report.upper_bound) +
                          " is below the published bound " + std::to_string(pub));
    else if (res.report.upper_bound > pub)
      res.flags.push_back("weaker: upper bound " + std::to_string(res.report.upper_bound) +
                          " exceeds the published bound " + std::to_string(pub));
  }
  return res;
}

inline Json encode_determining(const DeterminingSet& det) {
  Json forms = Json::array();
  for (const auto& t : det.forms) forms.push_back(encode_form(t));
  Json th{{"lo", to_string(det.threshold.bound.lo)}, {"hi", to_string(det.threshold.bound.hi)},
          {"exact", det.threshold.exact()}};
  return Json{{"level", det.level}, {"weight", det.weight}, {"threshold", th}, {"count", det.size()},
              {"forms", forms}};
}

inline Json encode_constraint(const Constraint& c) {
  return Json{{"origin", c.origin}, {"j", c.j}, {"lhs", encode_linform(c.lhs)}};
}

inline Json encode_bound(const BoundResult& r) {
  Json vars = Json::array(), free = Json::array(), eqs = Json::array();
  for (const auto& t : r.report.variables) vars.push_back(encode_form(t));
  for (const auto& t : r.report.free_variables) free.push_back(encode_form(t));
  for (const auto& c : r.report.equations) eqs.push_back(encode_constraint(c));
  Json j{{"level", r.level},
         {"weight", r.weight},
         {"character", r.character},
         {"num_vars", r.report.num_vars},
         {"rank", r.report.rank},
         {"upper_bound", r.report.upper_bound},
         {"variables", vars},
         {"free_variables", free},
         {"equations", eqs},
         {"flags", r.flags},
         {"warnings", r.warnings}};
  if (r.lower_bound) j["lower_bound"] = *r.lower_bound;
  if (r.published_upper_bound) j["published_upper_bound"] = *r.published_upper_bound;
  if (!r.refusals.empty()) {
    Json refs = Json::array();
    for (const auto& x : r.refusals) refs.push_back(Json{{"recipe", x.recipe}, {"reason", x.reason}});
    j["refusals"] = refs;
  }
  return j;
}

}  // namespace siegel
