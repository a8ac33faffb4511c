// One PASS/FAIL line per acceptance criterion. Printed reference data is
// transcribed verbatim, including its misprints; diagnostics explain each FAIL.

#include "siegel/siegel.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>

using namespace siegel;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = SIEGEL_FIXTURES;

int failures = 0;

void report(const std::string& id, bool ok, const std::string& what, const std::vector<std::string>& notes = {}) {
  std::cout << (ok ? "PASS " : "FAIL ") << id << " " << what << "\n";
  for (const auto& n : notes) std::cout << "     " << n << "\n";
  if (!ok) ++failures;
}

CycNum Z(int a, int b) { return CycNum::make(6, {Rational(a), Rational(b)}); }  // a + b z

using Terms = std::vector<std::pair<std::array<std::int64_t, 3>, CycNum>>;

LinForm row(const Terms& terms) {
  LinForm f;
  for (const auto& [t, c] : terms) f.add({t[0], t[1], t[2]}, c);
  return f;
}

// Shorthand for the index forms that occur.
constexpr std::array<std::int64_t, 3> x02{2, 0, 2}, x04{2, 0, 4}, x06{2, 0, 6}, x12{2, 1, 2}, x14{2, 1, 4},
    x16{2, 1, 6}, x18{2, 1, 8}, x404{4, 0, 4}, x414{4, 1, 4}, x416{4, 1, 6}, x424{4, 2, 4}, x426{4, 2, 6},
    x636{6, 3, 6};

std::string diff(const std::string& label, const LinForm& ours, const LinForm& printed) {
  return label + ": computed " + ours.format() + " | printed " + printed.format();
}

std::vector<CycNum> normalized(const LinForm& f, const DeterminingSet& det) {
  std::vector<CycNum> r(det.size(), CycNum(0));
  for (const auto& [t, c] : f.terms()) r[*det.index_of(t)] = c;
  for (const auto& v : r)
    if (!v.is_zero()) {
      CycNum inv = v.inv();
      for (auto& x : r) x = x * inv;
      break;
    }
  return r;
}

// ---------------------------------------------------------------------------

void determining_43() {
  auto start = std::chrono::steady_clock::now();
  auto det = enumerate_determining(43, 1, 2);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const std::vector<IndexForm> spot{{2, 0, 2},  {2, 0, 4},  {2, 1, 6},  {2, 1, 26}, {4, 0, 24}, {4, 1, 4},  {4, 2, 26},
                                    {6, 0, 6},  {6, 0, 22}, {6, 1, 22}, {6, 2, 24}, {6, 3, 24}, {8, 0, 8},  {8, 1, 20},
                                    {8, 4, 24}, {10, 0, 10}, {10, 1, 18}, {10, 3, 20}, {10, 4, 22}, {10, 5, 18}};
  std::size_t found = 0;
  for (const auto& t : spot) found += det.contains(t);
  auto cut = enumerate_with_threshold(43, 2, Rational(29, 2));
  std::size_t found_cut = 0;
  for (const auto& t : spot) found_cut += cut.contains(t);
  std::size_t half = 0;
  for (const auto& t : det.forms) half += dyadic_trace(t) == Rational(29, 2);
  bool ok = det.size() == 234 && found == spot.size() && secs < 5.0;
  std::ostringstream t;
  t.precision(3);
  t << secs;
  report("C1", ok, "determining set (43, 2): 234 forms, printed entries present, < 5 s",
         {"w < 44/3 gives " + std::to_string(det.size()) + " forms in " + t.str() + " s; spot-check " +
              std::to_string(found) + "/20",
          std::to_string(half) + " forms have w = 29/2 < 44/3; the printed listing stops at a + c - b <= 28",
          "--threshold 29/2 gives " + std::to_string(cut.size()) + " forms, spot-check " + std::to_string(found_cut) +
              "/20"});
}

void determining_13() {
  auto det = enumerate_determining(13, 1, 2);
  const std::vector<IndexForm> printed{{2, 0, 2}, {2, 0, 4}, {2, 0, 6}, {2, 1, 2}, {2, 1, 4}, {2, 1, 6}, {2, 1, 8},
                                       {4, 0, 4}, {4, 1, 4}, {4, 1, 6}, {4, 2, 4}, {4, 2, 6}, {6, 3, 6}};
  report("C2", det.forms == printed, "determining set (13, 2): the 13 printed forms in order",
         {std::to_string(det.size()) + " forms, w < 14/3"});
}

void determining_9() {
  auto det = enumerate_determining(3, 2, 2);
  const std::vector<IndexForm> printed{{2, 0, 2}, {2, 0, 4}, {2, 0, 6}, {2, 1, 2}, {2, 1, 4},
                                       {2, 1, 6}, {4, 0, 4}, {4, 1, 4}, {4, 2, 4}, {4, 2, 6}};
  report("C3", det.forms == printed, "determining set (9, 2) from the prime-power bound: the 10 printed forms",
         {std::to_string(det.size()) + " forms, bound in [" + std::to_string(static_cast<double>(det.threshold.bound.lo)) +
          ", " + std::to_string(static_cast<double>(det.threshold.bound.hi)) + "]"});
}

// Level 9 printed expansions.
std::map<std::int64_t, LinForm> level9_identity_printed() {
  return {{2, row({{x12, 2}, {x02, 1}})},
          {3, row({{x02, 4}, {x14, 4}, {x04, 2}})},
          {4, row({{x12, 1}, {x14, 2}, {x04, 4}, {x424, 2}, {x16, 4}, {x414, 2}, {x404, 1}, {x06, 2}})},
          {5, row({{x14, 4}, {x04, 4}, {x414, 4}, {x426, 4}, {x06, 4}})}};
}
std::map<std::int64_t, LinForm> level9_diag_printed() {
  return {{3, row({{x12, 2}, {x02, 1}})},
          {4, row({{x02, 2}, {x14, 2}, {x04, 1}})},
          {5, row({{x12, 2}, {x02, 2}, {x14, 2}, {x04, 3}, {x16, 2}, {x06, 1}})}};
}

void expansions_9() {
  auto det = enumerate_determining(3, 2, 2);
  auto e1 = restrict_expansion(det, {1, 0, 1}, 5);
  auto e2 = restrict_expansion(det, {1, 0, 2}, 5);
  bool ok = true;
  std::vector<std::string> notes;
  for (const auto& [j, f] : level9_identity_printed())
    if (e1.coeff(j) != f) {
      ok = false;
      notes.push_back(diff("s=I q^" + std::to_string(j), e1.coeff(j), f));
    }
  for (const auto& [j, f] : level9_diag_printed())
    if (e2.coeff(j) != f) {
      ok = false;
      notes.push_back(diff("s=diag(1,2) q^" + std::to_string(j), e2.coeff(j), f));
    }
  if (!ok) {
    auto oracle = restrict_expansion_oracle(det, {1, 0, 1}, 5, OracleBox::listing_box());
    notes.push_back(std::string("fixed-box unimodular search gives the same q^4: ") +
                    (oracle.coeff(4) == e1.coeff(4) ? "yes" : "no") +
                    "; v = [4^-2 2], [2^2 4] etc. reduce to [2^1 2] four times, so the printed 1 is a misprint");
  }
  report("C4", ok, "level 9 expansions: s=I q^2..q^5 and s=diag(1,2) q^3..q^5 match the printed coefficients",
         notes);
}

void expansions_13() {
  auto det = enumerate_determining(13, 1, 2);
  // Listing of the restriction itself, and the listing inside the W_2 eigen-relation.
  std::map<std::int64_t, LinForm> a{
      {3, row({{x02, 1}, {x12, 2}})},
      {4, row({{x02, 2}, {x04, 1}, {x14, 2}})},
      {5, row({{x02, 2}, {x04, 3}, {x06, 1}, {x12, 2}, {x14, 2}, {x16, 2}})},
      {6, row({{x06, 2}, {x14, 4}, {x18, 2}, {x404, 1}, {x414, 2}, {x424, 2}})},
      {7, row({{x02, 2}, {x04, 4}, {x06, 1}, {x12, 2}, {x16, 4}, {x414, 2}, {x416, 2}, {x426, 2}})},
      {8, row({{x04, 2}, {x14, 2}, {x404, 2}, {x414, 2}, {x416, 4}, {x426, 2}})},
      {9, row({{x02, 2}, {x06, 2}, {x14, 2}, {x16, 2}, {x18, 2}, {x414, 2}, {x426, 2}, {x636, 2}})}};
  std::map<std::int64_t, LinForm> b = a;
  b[6] = row({{x06, 2}, {x14, 4}, {x404, 1}, {x414, 2}});
  b[8] = row({{x04, 2}, {x12, 2}, {x14, 2}, {x404, 2}, {x414, 2}, {x426, 4}});

  auto check = [&](const SymbolicQExp& e, std::vector<std::string>* notes) {
    bool ok = true;
    for (std::int64_t j : {3, 4, 5, 7, 9})
      if (e.coeff(j) != a[j] || e.coeff(j) != b[j]) {
        ok = false;
        if (notes) notes->push_back(diff("q^" + std::to_string(j), e.coeff(j), a[j]));
      }
    for (std::int64_t j : {6, 8})
      if (e.coeff(j) != a[j] && e.coeff(j) != b[j]) {
        ok = false;
        if (notes) notes->push_back(diff("q^" + std::to_string(j), e.coeff(j), a[j]));
      }
    return ok;
  };
  std::vector<std::string> notes;
  auto exact = restrict_expansion(det, {1, 0, 2}, 9);
  bool ok = check(exact, &notes);
  for (std::int64_t j : {6, 8})
    notes.push_back("q^" + std::to_string(j) + " matches listing " + (exact.coeff(j) == a[j] ? "A" : "") +
                    (exact.coeff(j) == b[j] ? "B" : "") + (exact.coeff(j) != a[j] && exact.coeff(j) != b[j] ? "none" : ""));
  auto box = restrict_expansion_oracle(det, {1, 0, 2}, 9, OracleBox::listing_box());
  notes.push_back(std::string("fixed-box search (a, d <= 10, |b| <= 10, entries <= 8) reproduces the printed listing: ") +
                  (check(box, nullptr) ? "yes" : "no") + "; exact counts include v with a > 10");
  report("C5", ok, "level 13, s=diag(1,2): q^3,4,5,7,9 match both listings, q^6 and q^8 match one", notes);
}

void al_scalars() {
  auto chi = load_character(kFixtures / "level13/chi13.json");
  auto c2 = ALContext::make(13, 2, chi, {1, 0, 2});
  auto c3 = ALContext::make(13, 2, chi, {2, 1, 2});
  bool a = al_scalar_wlprime(c2).value == chi(7);
  bool b = al_scalar_wl(c2).value == CycNum(169) * chi(7);
  bool c = al_scalar_wlprime(c3).value == chi(9);
  bool d = fricke_combined(c2).value == CycNum(Rational(1, 28561)) * chi(7).inv();
  report("C6", a && b && c && d, "Atkin-Lehner scalars: chi(7), 169 chi(7), chi(9), 13^-4 chi^-1(7)",
         {"chi(7) = " + chi(7).format() + ", W_l' (det 3) = " + al_scalar_wlprime(c3).value.format() +
          ", Fricke combined = " + fricke_combined(c2).value.format()});
}

void end_to_end_13() {
  auto plan = validate_config(kFixtures / "level13/config.json");
  auto r = run_bound(plan);
  std::vector<LinForm> printed{
      row({{x02, 1}, {x12, 2}}),
      row({{x02, 2}, {x04, 1}, {x14, 2}}),
      row({{x02, 2}, {x04, 3}, {x06, 1}, {x12, 2}, {x14, 2}, {x16, 2}}),
      row({{x06, 2}, {x14, 4}, {x18, 2}, {x404, 1}, {x414, 2}, {x424, 2}}),
      row({{x02, 2}, {x04, 4}, {x06, 1}, {x12, 2}, {x16, 4}, {x414, 2}, {x416, 2}, {x426, 2}}),
      row({{x04, 2}, {x14, 2}, {x404, 2}, {x414, 2}, {x416, 4}, {x426, 2}}),
      row({{x02, 2}, {x06, 2}, {x14, 2}, {x16, 2}, {x18, 2}, {x414, 2}, {x426, 2}, {x636, 2}}),
      row({{x02, Z(9, -9)}, {x04, Z(2, -2)}, {x06, 2}, {x12, Z(4, -2)}, {x14, Z(10, -6)}, {x16, 4}, {x404, 1},
           {x414, 2}, {x424, 2}}),
      row({{x02, Z(0, 16)}, {x04, Z(4, 6)}, {x06, 4}, {x12, Z(0, 8)}, {x14, Z(4, 12)}, {x18, 4}, {x414, 4},
           {x416, 4}, {x426, 4}}),
      row({{x02, Z(0, 4)}, {x04, Z(-4, 4)}, {x12, Z(8, -8)}, {x14, Z(-4, 8)}, {x16, 6}, {x404, 4}, {x416, 4},
           {x426, 2}, {x636, 2}})};
  std::vector<std::vector<CycNum>> ours;
  for (const auto& e : r.report.equations) ours.push_back(normalized(e.lhs, r.det));
  std::vector<std::string> notes;
  std::size_t matched = 0;
  for (std::size_t i = 0; i < printed.size(); ++i) {
    auto key = normalized(printed[i], r.det);
    if (std::find(ours.begin(), ours.end(), key) != ours.end())
      ++matched;
    else
      notes.push_back("printed equation " + std::to_string(i + 1) + " not reproduced: " + printed[i].format());
  }
  for (const auto& e : r.report.equations) {
    auto key = normalized(e.lhs, r.det);
    bool hit = false;
    for (const auto& p : printed) hit = hit || normalized(p, r.det) == key;
    if (!hit) notes.push_back("computed [" + e.origin + ", q^" + std::to_string(e.j) + "]: " + e.lhs.format());
  }
  bool counts = r.report.rank == 10 && r.report.upper_bound == 3 && r.lower_bound == 0;
  notes.insert(notes.begin(), std::to_string(matched) + "/10 printed equations reproduced; rank " +
                                  std::to_string(r.report.rank) + ", upper bound " +
                                  std::to_string(r.report.upper_bound) + ", lower bound " +
                                  (r.lower_bound ? std::to_string(*r.lower_bound) : "none") +
                                  (counts ? " (as printed)" : ""));
  Matrix printed_rows;
  for (const auto& p : printed) printed_rows.push_back(normalized(p, r.det));
  notes.push_back("printed system has rank " + std::to_string(rank(printed_rows)));
  report("C7", matched == 10 && r.report.equations.size() == 10 && counts,
         "level 13 end to end: the 10 printed equations up to scaling/permutation, rank 10, bound 3, lower bound 0",
         notes);
}

void end_to_end_9() {
  auto plan = validate_config(kFixtures / "level9/config.json");
  auto det = plan_determining_set(plan);
  auto e1 = restrict_expansion(det, plan.sending[0], 5);
  auto e2 = restrict_expansion(det, plan.sending[1], 5);
  auto E = basis_match(e1, plan.bases.at("S4_9").forms, {1, 5});
  auto F = kernel_vanishing(e2, plan.operators.at("W2_18").op, CycNum(1), {1, 5});
  std::vector<std::string> notes;
  bool ok = E.size() == 4 && F.constraints.size() == 3;
  auto printedE = level9_identity_printed();
  auto printedF = level9_diag_printed();
  for (const auto& c : E)
    if (c.lhs != printedE[c.j]) {
      ok = false;
      notes.push_back(diff("E (q^" + std::to_string(c.j) + ")", c.lhs, printedE[c.j]));
    }
  for (const auto& c : F.constraints)
    if (c.lhs != printedF[c.j]) {
      ok = false;
      notes.push_back(diff("F (q^" + std::to_string(c.j) + ")", c.lhs, printedF[c.j]));
    }
  auto r = run_bound(plan);
  ok = ok && r.report.upper_bound <= 6;
  notes.push_back("rank " + std::to_string(r.report.rank) + ", upper bound " + std::to_string(r.report.upper_bound));
  for (const auto& f : r.flags) notes.push_back("flag: " + f);
  for (const auto& w : r.warnings) notes.push_back("warning: " + w);
  report("C8", ok, "level 9 end to end: E1-E4 and F1-F3 exactly, upper bound <= 6", notes);
}

void oracle_equivalence() {
  const std::vector<SendingMatrix> sending{{1, 0, 1}, {1, 0, 2}, {2, 1, 2}, {2, 1, 3}};
  std::size_t cases = 0, bad = 0;
  for (auto [p, i] : {std::pair{13, 1}, {3, 2}}) {
    auto det = enumerate_determining(p, i, 2);
    for (const auto& s : sending)
      for (std::int64_t j = 1; j <= 10; ++j)
        for (const auto& t : det.forms) {
          ++cases;
          bad += vcount(j, s, t) != vcount_oracle(j, s, t).count;
        }
  }
  std::size_t mass_bad = 0;
  for (std::int64_t j = 1; j <= 8; ++j) {
    std::int64_t total = 0, direct = 0;
    for (const auto& [t, n] : representation_counts(j, {1, 0, 1})) total += n;
    for (std::int64_t a = 2; a < 2 * j; a += 2)
      for (std::int64_t b = -2 * j; b <= 2 * j; ++b) direct += IndexForm{a, b, 2 * j - a}.valid();
    mass_bad += total != direct;
  }
  report("C9", bad == 0 && cases >= 900 && mass_bad == 0, "vcount equals the unimodular search; mass check",
         {std::to_string(cases) + " cases, " + std::to_string(bad) + " mismatches; mass check j <= 8: " +
          std::to_string(mass_bad) + " mismatches"});
}

void field_suite() {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 6);
  std::size_t bad = 0, samples = 0;
  for (std::int64_t n : {6, 12}) {
    auto draw = [&] {
      std::vector<Rational> c;
      for (std::int64_t k = 0; k < euler_phi(n); ++k) c.emplace_back(BigInt(num(rng)), BigInt(den(rng)));
      return CycNum::make(n, c);
    };
    for (int i = 0; i < 1000; ++i, ++samples) {
      CycNum x = draw(), y = draw(), w = draw();
      bool ok = x + y == y + x && x * y == y * x && (x * y) * w == x * (y * w) && x * (y + w) == x * y + x * w &&
                (x - x).is_zero();
      if (!x.is_zero()) ok = ok && x * x.inv() == CycNum(1);
      bad += !ok;
    }
  }
  std::size_t phi_bad = 0;
  for (std::int64_t n = 1; n <= 30; ++n) {
    CycNum z = CycNum::root(n, 1), acc(0), zk(1);
    for (const auto& c : cyclotomic_polynomial(n)) {
      acc += CycNum(Rational(c)) * zk;
      zk = zk * z;
    }
    phi_bad += !acc.is_zero();
  }
  report("C10", bad == 0 && phi_bad == 0, "exact field: axioms on Q(zeta_6), Q(zeta_12); Phi_n(zeta_n) = 0; inverses",
         {std::to_string(samples) + " samples, " + std::to_string(bad) + " failures; Phi_n for n <= 30: " +
          std::to_string(phi_bad) + " failures"});
}

CycNum det_of(const Matrix& m) {
  if (m.size() == 1) return m[0][0];
  CycNum acc(0);
  for (std::size_t c = 0; c < m.size(); ++c) {
    Matrix minor;
    for (std::size_t r = 1; r < m.size(); ++r) {
      std::vector<CycNum> rr;
      for (std::size_t k = 0; k < m.size(); ++k)
        if (k != c) rr.push_back(m[r][k]);
      minor.push_back(rr);
    }
    CycNum t = m[0][c] * det_of(minor);
    acc = c % 2 ? acc - t : acc + t;
  }
  return acc;
}

std::size_t minor_rank(const Matrix& m) {
  const std::size_t R = m.size(), C = m[0].size();
  for (std::size_t k = std::min(R, C); k > 0; --k) {
    for (unsigned rm = 0; rm < (1u << R); ++rm) {
      if (static_cast<std::size_t>(__builtin_popcount(rm)) != k) continue;
      for (unsigned cm = 0; cm < (1u << C); ++cm) {
        if (static_cast<std::size_t>(__builtin_popcount(cm)) != k) continue;
        Matrix sub;
        for (std::size_t r = 0; r < R; ++r) {
          if (!(rm >> r & 1u)) continue;
          std::vector<CycNum> rr;
          for (std::size_t c = 0; c < C; ++c)
            if (cm >> c & 1u) rr.push_back(m[r][c]);
          sub.push_back(rr);
        }
        if (!det_of(sub).is_zero()) return k;
      }
    }
  }
  return 0;
}

void rref_oracle() {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> dim(1, 5), v(-2, 2), zero(0, 2);
  std::size_t bad = 0;
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t R = static_cast<std::size_t>(dim(rng)), C = static_cast<std::size_t>(dim(rng));
    Matrix m(R, std::vector<CycNum>(C));
    for (auto& r : m)
      for (auto& x : r) x = zero(rng) ? Z(v(rng), v(rng)) : CycNum(0);
    if (R > 2 && trial % 2)
      for (std::size_t c = 0; c < C; ++c) m[R - 1][c] = m[0][c] * Z(1, 1) - m[1][c];
    bad += rank(m) != minor_rank(m);
  }
  report("C11", bad == 0, "rref rank agrees with minor rank on 50 random matrices over Q(zeta_6)",
         {std::to_string(bad) + " mismatches"});
}

}  // namespace

int main() {
  determining_43();
  determining_13();
  determining_9();
  expansions_9();
  expansions_13();
  al_scalars();
  end_to_end_13();
  end_to_end_9();
  oracle_equivalence();
  field_suite();
  rref_oracle();
  std::cout << (failures ? std::to_string(failures) + " criteria failed" : "all criteria passed") << "\n";
  return failures ? 1 : 0;
}
