// Command-line front end: determining sets, restriction expansions, operator
// scalars and dimension bounds.
//
// Exit codes: 0 success, 1 computation refused, 2 usage or input error.

#include "siegel/siegel.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace siegel;

namespace {

constexpr int kRefused = 1;
constexpr int kUsage = 2;

SendingMatrix parse_sending(const std::vector<std::int64_t>& v) {
  if (v.size() != 3) throw IngestError("--sending", "expected s1,s2,s4");
  SendingMatrix s{v[0], v[1], v[2]};
  if (!s.valid()) throw IngestError("--sending", "sending matrix " + s.label() + " is not positive definite");
  return s;
}

std::optional<Rational> parse_threshold(const std::string& s) {
  if (s.empty()) return std::nullopt;
  try {
    return parse_rational(s);
  } catch (const ParseError& ex) {
    throw IngestError("--threshold", ex.what());
  }
}

std::optional<OracleBox> box_for(bool oracle, bool fixed_box) {
  if (fixed_box) return OracleBox::listing_box();
  if (oracle) return OracleBox{};
  return std::nullopt;
}

std::optional<ScalarKind> parse_kind(const std::string& s) {
  if (s == "wl") return ScalarKind::WL;
  if (s == "wlprime") return ScalarKind::WLPRIME;
  if (s == "fricke") return ScalarKind::FRICKE;
  if (s == "fricke_combined") return ScalarKind::FRICKE_COMBINED;
  return std::nullopt;
}

void print_bound(const BoundResult& r) {
  std::cout << "level " << r.level << ", weight " << r.weight << ", character " << r.character << "\n";
  std::cout << "unknowns " << r.report.num_vars << ", rank " << r.report.rank << ", upper bound "
            << r.report.upper_bound << "\n";
  if (r.lower_bound) std::cout << "lower bound " << *r.lower_bound << "\n";
  std::cout << "equations (" << r.report.equations.size() << "):\n";
  for (const auto& e : r.report.equations)
    std::cout << "  [" << e.origin << ", q^" << e.j << "] " << e.lhs.format() << " = 0\n";
  std::cout << "free:";
  for (const auto& t : r.report.free_variables) std::cout << " " << t.label();
  std::cout << "\n";
  for (const auto& f : r.flags) std::cout << "flag: " << f << "\n";
  for (const auto& w : r.warnings) std::cout << "warning: " << w << "\n";
  for (const auto& x : r.refusals) std::cout << "refused: " << x.recipe << ": " << x.reason << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Restriction-based dimension bounds for Siegel cusp forms on Gamma_0^(2)(N)"};
  app.require_subcommand(1);

  bool json = false;

  auto* det_cmd = app.add_subcommand("determining", "list the determining set of index forms");
  std::int64_t level = 0, weight = 0;
  std::string threshold;
  det_cmd->add_option("--level", level, "prime-power level")->required();
  det_cmd->add_option("--weight", weight, "Siegel weight k")->required();
  det_cmd->add_option("--threshold", threshold, "explicit dyadic-trace cutoff (rational)");
  det_cmd->add_flag("--json", json);

  auto* vc_cmd = app.add_subcommand("vcount", "count forms in a class with given inner product");
  std::int64_t j = 0;
  std::vector<std::int64_t> sending, form;
  bool oracle = false, fixed_box = false;
  vc_cmd->add_option("--j", j, "exponent")->required();
  vc_cmd->add_option("--sending", sending, "s1,s2,s4")->delimiter(',')->required();
  vc_cmd->add_option("--form", form, "reduced index a,b,c")->delimiter(',')->required();
  vc_cmd->add_flag("--oracle", oracle, "use the unimodular search");
  vc_cmd->add_flag("--fixed-box", fixed_box, "unimodular search in the fixed listing box");

  auto* rs_cmd = app.add_subcommand("restrict", "symbolic restriction expansion");
  std::int64_t jmax = 0;
  rs_cmd->add_option("--level", level, "prime-power level")->required();
  rs_cmd->add_option("--weight", weight, "Siegel weight k")->required();
  rs_cmd->add_option("--sending", sending, "s1,s2,s4")->delimiter(',')->required();
  rs_cmd->add_option("--jmax", jmax, "last exponent (default: covers every unknown)");
  rs_cmd->add_option("--threshold", threshold, "explicit dyadic-trace cutoff (rational)");
  rs_cmd->add_flag("--oracle", oracle, "use the unimodular search");
  rs_cmd->add_flag("--fixed-box", fixed_box, "unimodular search in the fixed listing box");
  rs_cmd->add_flag("--json", json);

  auto* al_cmd = app.add_subcommand("al-scalar", "Atkin-Lehner scalar on a restriction");
  std::string character = "trivial", kind_name;
  al_cmd->add_option("--level", level, "level l")->required();
  al_cmd->add_option("--weight", weight, "Siegel weight k")->required();
  al_cmd->add_option("--character", character, "character file or 'trivial'");
  al_cmd->add_option("--sending", sending, "s1,s2,s4")->delimiter(',')->required();
  al_cmd->add_option("--kind", kind_name, "wl | wlprime | fricke | fricke_combined")->required();
  al_cmd->add_flag("--json", json);

  auto* bd_cmd = app.add_subcommand("bound", "assemble constraints from a configuration and bound the dimension");
  std::string config;
  bd_cmd->add_option("--config", config, "configuration JSON")->required();
  bd_cmd->add_option("--threshold", threshold, "override the dyadic-trace cutoff");
  bd_cmd->add_flag("--fixed-box", fixed_box, "build expansions with the fixed listing box");
  bd_cmd->add_flag("--json", json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (det_cmd->parsed()) {
      auto det = determining_set_for_level(level, weight, parse_threshold(threshold));
      if (json) {
        std::cout << dump(encode_determining(det));
      } else {
        std::cout << det.size() << " forms, dyadic trace < " << det.threshold.approx() << "\n";
        for (const auto& t : det.forms) std::cout << t.label() << "  w=" << to_string(dyadic_trace(t)) << "\n";
      }
    } else if (vc_cmd->parsed()) {
      SendingMatrix s = parse_sending(sending);
      if (form.size() != 3) throw IngestError("--form", "expected a,b,c");
      IndexForm t{form[0], form[1], form[2]};
      if (!t.valid() || !is_reduced(t)) throw IngestError("--form", t.label() + " is not a reduced index");
      if (auto box = box_for(oracle, fixed_box)) {
        auto r = vcount_oracle(j, s, t, *box);
        std::cout << r.count << "\n";
      } else {
        std::cout << vcount(j, s, t) << "\n";
      }
    } else if (rs_cmd->parsed()) {
      SendingMatrix s = parse_sending(sending);
      auto det = determining_set_for_level(level, weight, parse_threshold(threshold));
      if (jmax == 0) jmax = default_jmax(det, s);
      auto box = box_for(oracle, fixed_box);
      SymbolicQExp e = box ? restrict_expansion_oracle(det, s, jmax, *box) : restrict_expansion(det, s, jmax);
      if (json)
        std::cout << dump(encode_qexp(e));
      else
        std::cout << e.format() << "\n";
    } else if (al_cmd->parsed()) {
      auto kind = parse_kind(kind_name);
      if (!kind) throw IngestError("--kind", "unknown scalar kind '" + kind_name + "'");
      DirichletChar chi = character == "trivial" ? DirichletChar::trivial(level) : load_character(character);
      ALContext ctx = ALContext::make(level, weight, chi, parse_sending(sending));
      OperatorScalar sc = al_scalar(ctx, *kind);
      if (json) {
        Json out{{"kind", to_string(sc.provenance)}, {"value", encode_cyc(sc.value)}};
        if (sc.character_argument) out["character_argument"] = *sc.character_argument;
        if (sc.lhat) out["lhat"] = *sc.lhat;
        if (sc.decomposition)
          out["decomposition"] = Json{{"x", sc.decomposition->x}, {"y", sc.decomposition->y},
                                      {"z", sc.decomposition->z}, {"w", sc.decomposition->w}};
        std::cout << dump(out);
      } else {
        std::cout << sc.value.format() << "\n";
      }
    } else if (bd_cmd->parsed()) {
      Plan plan = validate_config(config);
      RunOptions opts;
      opts.threshold = parse_threshold(threshold);
      if (fixed_box) opts.oracle_box = OracleBox::listing_box();
      BoundResult r = run_bound(plan, opts);
      if (json)
        std::cout << dump(encode_bound(r));
      else
        print_bound(r);
      if (!r.refusals.empty()) return kRefused;
    }
  } catch (const IngestError& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kUsage;
  } catch (const OperatorError& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kUsage;
  } catch (const AmbiguousBound& ex) {
    std::cerr << "refused: " << ex.what() << "\n";
    return kRefused;
  } catch (const LinsysError& ex) {
    std::cerr << "refused: " << ex.what() << "\n";
    return kRefused;
  }
  return 0;
}
