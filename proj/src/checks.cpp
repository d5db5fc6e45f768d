#include "tuttebraid/checks.hpp"

#include <chrono>
#include <cmath>
#include <set>

#include "tuttebraid/approx.hpp"
#include "tuttebraid/braid.hpp"
#include "tuttebraid/errors.hpp"
#include "tuttebraid/tutte.hpp"

namespace tuttebraid {

namespace {

using json = nlohmann::json;

const double kTau = 1.6180339887498949;

// Kirchhoff cofactor per component, exact; the product counts spanning forests.
Rat spanning_forests(const Multigraph& g) {
  const auto lab = component_labels(g);
  Rat total(1);
  for (int c = 0; c < components(g); ++c) {
    std::vector<int> idx(g.n(), -1);
    int k = 0;
    for (int v = 0; v < g.n(); ++v)
      if (lab[v] == c) idx[v] = k++;
    if (k <= 1) continue;
    std::vector<std::vector<Rat>> L(k - 1, std::vector<Rat>(k - 1, Rat(0)));
    for (const auto& e : g.edges()) {
      if (e.is_loop() || lab[e.u] != c) continue;
      const int a = idx[e.u], b = idx[e.v];
      if (a < k - 1) L[a][a] += Rat(1);
      if (b < k - 1) L[b][b] += Rat(1);
      if (a < k - 1 && b < k - 1) {
        L[a][b] -= Rat(1);
        L[b][a] -= Rat(1);
      }
    }
    Rat det(1);
    const int n = k - 1;
    for (int i = 0; i < n; ++i) {
      int p = i;
      while (p < n && L[p][i].is_zero()) ++p;
      if (p == n) return Rat(0);
      if (p != i) {
        std::swap(L[p], L[i]);
        det = -det;
      }
      det *= L[i][i];
      for (int r = i + 1; r < n; ++r) {
        if (L[r][i].is_zero()) continue;
        const Rat f = L[r][i] / L[i][i];
        for (int j = i; j < n; ++j) L[r][j] -= f * L[i][j];
      }
    }
    total *= det;
  }
  return total;
}

// random loopless multigraph: a G(n,p) core plus a few parallel copies, kept
// inside the default exact-evaluation caps
Multigraph random_loopless(std::uint64_t seed, int max_n) {
  const int n = 2 + static_cast<int>(uniform_below(seed, 0, max_n - 1));
  const double p = 0.2 + 0.6 * uniform01(seed, 1);
  Multigraph g = gnp(n, p, seed);
  auto es = g.edges();
  const int extra = es.empty() ? 0 : static_cast<int>(uniform_below(seed, 2, 3));
  for (int i = 0; i < extra; ++i) es.push_back(es[uniform_below(seed, 3 + i, es.size())]);
  if (es.size() > 40) es.resize(40);
  return Multigraph(n, es);
}

bool basis_relations_hold(int m) {
  const auto prm = unitary_params();
  auto e = [&](const TLVector<Cyc20>& v, int i) { return apply_e(v, i, prm.loop); };
  for (const auto& p : matchings(m)) {
    const TLVector<Cyc20> v{{p, Cyc20(1)}};
    for (int i = 1; i <= m - 1; ++i) {
      auto de = e(v, i);
      for (auto& [q, c] : de) c *= prm.loop;
      if (e(e(v, i), i) != de) return false;
      if (apply_word(v, BraidWord{m, {{i, 1}, {i, -1}}}, prm) != v) return false;
      if (i + 1 <= m - 1) {
        if (e(e(e(v, i), i + 1), i) != e(v, i) || e(e(e(v, i + 1), i), i + 1) != e(v, i + 1)) return false;
        if (apply_word(v, BraidWord{m, {{i, 1}, {i + 1, 1}, {i, 1}}}, prm) !=
            apply_word(v, BraidWord{m, {{i + 1, 1}, {i, 1}, {i + 1, 1}}}, prm))
          return false;
      }
      for (int j = i + 2; j <= m - 1; ++j) {
        if (e(e(v, i), j) != e(e(v, j), i)) return false;
        if (apply_word(v, BraidWord{m, {{i, 1}, {j, -1}}}, prm) != apply_word(v, BraidWord{m, {{j, -1}, {i, 1}}}, prm))
          return false;
      }
    }
  }
  return true;
}

// ---- criteria

CheckOutcome golden_identity() {
  int count = 0, equal = 0;
  json failures = json::array();
  const auto k4 = golden_identity_check(complete(4));
  const bool k4_ok = k4.equal && k4.lhs == Golden(3, 4);
  for (int n = 4; n <= 12; ++n) {
    for (std::uint64_t s = 0; s < 6; ++s) {
      const auto r = golden_identity_check(apollonian(n, 1000 * n + s));
      ++count;
      equal += r.equal;
      if (!r.equal) failures.push_back({{"n", n}, {"seed", 1000 * n + s}});
    }
  }
  return {k4_ok && count >= 50 && equal == count,
          {{"graphs", count}, {"equal", equal}, {"K4_lhs", k4.lhs.str()}, {"K4_rhs", k4.rhs.str()}, {"failures", failures}}};
}

CheckOutcome exact_values() {
  const auto k = golden_constants();
  const Golden b5 = chromatic(complete(4), k.B5), b10 = chromatic(complete(4), k.B10);
  const bool bound = compare(abs(b5), k.tau) <= 0;
  return {b5 == Golden(-1) && b10 == Golden(3, 4) && bound,
          {{"P_K4(B5)", b5.str()}, {"P_K4(B10)", b10.str()}, {"abs_le_tau", bound}}};
}

CheckOutcome tutte_oracle() {
  const std::vector<std::pair<Rat, Rat>> pts{{2, 2},  {1, 1},  {-1, -1}, {3, Rat(1, 2)}, {Rat(-2, 3), 5},
                                             {-2, 0}, {Rat(1, 2), Rat(-3, 2)}};
  long graphs = 0, mismatches = 0;
  for (int n = 1; n <= 8; ++n) {
    for (const auto& g : enumerate_graphs(n, 16)) {
      ++graphs;
      const RankCounts rc = rank_counts(g);
      for (const auto& [x, y] : pts)
        if (tutte_eval(g, x, y) != tutte_from_counts(rc, x, y)) ++mismatches;
    }
  }
  int random_ok = 0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    const Multigraph g = random_loopless(77 + s, 12);
    const bool a = tutte_eval(g, Rat(2), Rat(2)) == pow(Rat(2), g.m());
    const bool b = tutte_eval(g, Rat(1), Rat(1)) == spanning_forests(g);
    random_ok += a && b;
  }
  return {mismatches == 0 && random_ok == 200,
          {{"graphs", graphs}, {"points", pts.size()}, {"mismatches", mismatches}, {"random_graphs_ok", random_ok}}};
}

CheckOutcome tl_oracle() {
  int agree = 0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    const int m = 2 * (1 + static_cast<int>(uniform_below(s, 0, 3)));
    const int len = static_cast<int>(uniform_below(s, 1, 13));
    const BraidWord b = random_braid(m, len, 5000 + s);
    agree += bracket_from_tl(b) == bracket_state_sum(b);
  }
  // trefoil as the plat closure of σ₂³; either chirality of the standard bracket
  const LaurentA tref = bracket_from_tl(BraidWord::parse("m=4 s2 s2 s2"));
  const LaurentA left = LaurentA::monomial(-7) - LaurentA::monomial(-3) - LaurentA::monomial(5);
  const bool tref_ok = tref == left || tref == left.substitute_power(-1);
  const bool unknot_ok = bracket_from_tl(BraidWord::parse("m=2 s1")) == LaurentA::monomial(-3, -1) &&
                         bracket_state_sum(BraidWord{2, {}}) == LaurentA(1);
  bool relations = true;
  for (int m : {2, 4, 6, 8}) relations = relations && basis_relations_hold(m);
  int bounded = 0;
  for (std::uint64_t s = 0; s < 1000; ++s) {
    const int m = 2 * (1 + static_cast<int>(uniform_below(s, 7, 4)));
    const auto r = plat_amplitude(random_braid(m, static_cast<int>(uniform_below(s, 8, 16)), 9000 + s));
    bounded += r.absV <= std::pow(kTau, m / 2.0) * (1 + 1e-12);
  }
  bool identity = true;
  for (int m = 2; m <= 10; m += 2) identity = identity && plat_amplitude(BraidWord{m, {}}).amplitude == Cyc20(1);
  return {agree == 200 && tref_ok && unknot_ok && relations && bounded == 1000 && identity,
          {{"state_sum_agree", agree},
           {"trefoil", tref.str()},
           {"trefoil_ok", tref_ok},
           {"unknot_ok", unknot_ok},
           {"relations", relations},
           {"bounded", bounded},
           {"identity_attains_bound", identity}}};
}

CheckOutcome fklw_pipeline() {
  const double base = fklw_probability(Cyc20(0), LinkInvariants{1, 0, 3});
  const bool base_ok = std::abs(base - 1.0 / (1.0 + kTau * kTau)) < 1e-12;
  int in_range = 0, invariant = 0, physical = 0, total = 0;
  for (std::uint64_t s = 0; s < 150; ++s) {
    const int m = 2 * (1 + static_cast<int>(uniform_below(s, 0, 3)));
    const FklwResult r = fklw_evaluate(random_braid(m, static_cast<int>(uniform_below(s, 1, 6)), 300 + s));
    ++total;
    in_range += r.probability >= 0 && r.probability <= 1;
    physical += std::abs(r.probability - r.physical) < 1e-9;
    bool inv = true;
    for (int k = 0; k < r.inv.c; ++k) {
      const LinkInvariants flipped = link_invariants(r.link, {k});
      inv = inv && std::abs(fklw_probability(jones_value(r.link, flipped), flipped) - r.probability) < 1e-9;
    }
    invariant += inv;
  }
  return {base_ok && in_range == total && invariant == total && physical == total,
          {{"baseline", decimal(base)},
           {"braids", total},
           {"in_range", in_range},
           {"orientation_invariant", invariant},
           {"matches_qubit_probability", physical}}};
}

CheckOutcome decisions() {
  std::vector<BraidWord> low, high;
  for (std::uint64_t s = 0; s < 4000 && (low.size() < 3 || high.size() < 3); ++s) {
    const int m = 2 * (2 + static_cast<int>(uniform_below(s, 0, 2)));
    const BraidWord b = random_braid(m, 2 + static_cast<int>(uniform_below(s, 1, 7)), 40000 + s);
    const double v = plat_amplitude(b).absV / std::pow(kTau, m / 2.0);
    if (v < 0.29 && low.size() < 3) low.push_back(b);
    if (v > 0.75 && high.size() < 3 && !b.word.empty()) high.push_back(b);
  }
  json sides = json::array();
  bool ok = low.size() == 3 && high.size() == 3;
  auto trial = [&](const BraidWord& b, Decision want) {
    int right = 0;
    for (std::uint64_t s = 0; s < 200; ++s)
      right += decide_quartile(b, b.m / 2, AAConfig{0.1, 0.25, s}).decision == want;
    ok = ok && right >= 150;
    sides.push_back({{"braid", b.str()},
                     {"normalized_absV", decimal(plat_amplitude(b).absV / std::pow(kTau, b.m / 2.0))},
                     {"expected", to_string(want)},
                     {"correct_of_200", right}});
  };
  for (const auto& b : low) trial(b, Decision::accept);
  for (const auto& b : high) trial(b, Decision::reject);

  int consistent = 0, decided = 0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    const int m = 2 * (1 + static_cast<int>(uniform_below(s, 2, 3)));
    const BraidWord b = random_braid(m, static_cast<int>(uniform_below(s, 3, 7)), 70000 + s);
    const DecisionReport r = decide_sign(b);
    const double p = qubit_zero_probability(b);
    bool c = true;
    if (r.decision == Decision::accept) c = r.sign < 0 && p < 0.25 + 1e-12;
    if (r.decision == Decision::reject) c = r.sign > 0 && p > 0.75 - 1e-12;
    if (r.decision == Decision::undecided) c = p >= 0.25 - 1e-12 && p <= 0.75 + 1e-12;
    consistent += c;
    decided += r.decision != Decision::undecided;
  }
  return {ok && consistent == 200,
          {{"quartile", sides}, {"sign_mode_consistent", consistent}, {"sign_mode_decided", decided}}};
}

CheckOutcome aa_contract() {
  std::vector<std::pair<CountingProblem, double>> probs;
  auto add = [&](const CountingProblem& p) { probs.push_back({p, p.exact().get_d()}); };
  add(colorings_problem(complete(3), 3));
  add(colorings_problem(cycle(7), 3));
  for (std::uint64_t s = 1, got = 0; got < 3; ++s) {
    const Multigraph g = gnp(6 + static_cast<int>(s % 5), 0.35, s);
    if (!is_connected(g)) continue;
    add(colorings_problem(g, 3));
    ++got;
  }
  add(stable_set_problem(gnp(10, 0.3, 2)));
  add(stable_set_problem(cycle(9)));
  add(ham_problems(complete(5)).m1);
  add(ham_problems(wheel(6)).m1);
  add(ham_problems(complete(6)).m2);
  add(ham_problems(wheel(6)).m2);
  add(formula_problem(random_dnf(12, 6, 4, 3)));
  json rows = json::array();
  bool ok = batch_size(0.2) == 101;
  auto rate_of = [](const AAProcedure& proc, double exact) {
    int bad = 0;
    for (std::uint64_t s = 0; s < 400; ++s) bad += !proc(AAConfig{0.2, 0.25, s}).within(exact);
    return bad / 400.0;
  };
  for (const auto& [p, exact] : probs) {
    const double rate = rate_of(as_procedure(p), exact);
    ok = ok && rate < 0.15;
    rows.push_back({{"problem", p.name}, {"space", p.space_size().get_str()}, {"exact", decimal(exact)},
                    {"violation_rate", decimal(rate)}});
  }
  const Formula kl = random_dnf(14, 12, 5, 8);
  const double kl_exact = count_models(kl).get_d();
  const double kl_rate = rate_of(dnf_procedure(kl), kl_exact);
  ok = ok && kl_rate < 0.15;
  rows.push_back({{"problem", "dnf-karp-luby"}, {"exact", decimal(kl_exact)}, {"violation_rate", decimal(kl_rate)}});
  return {ok, {{"batch_size", batch_size(0.2)}, {"runs", 400}, {"problems", rows}}};
}

CheckOutcome gadgets() {
  const GadgetReport rep = gadget_experiments();
  const auto k3 = gadget_experiments({{"K3", complete(3)}}).rows[0];
  const auto k6 = gadget_experiments({{"K6", complete(6)}}).rows[0];
  bool colorable = false, not_colorable = false;
  for (const auto& r : rep.rows) (r.p5 == 0 ? not_colorable : colorable) = true;
  const bool examples = k3.p5_plus == 7500 && k3.p_h == 384 && k6.p5_plus == 0 && k6.log_gap == 0;
  return {rep.all_ok() && examples && colorable && not_colorable, rep.to_json()};
}

CheckOutcome ss_quartile() {
  int agree = 0, total = 0, shortcuts = 0;
  double worst_ms = 0;
  for (std::uint64_t s = 0; s < 500; ++s) {
    const int n = 1 + static_cast<int>(uniform_below(s, 0, 14));
    const Multigraph g = gnp(n, 0.05 + 0.5 * uniform01(s, 1), 123 + s);
    for (int r : {2, 4, 8, 64}) {
      const auto t0 = std::chrono::steady_clock::now();
      const SsQuartile q = ss_quartile_exact(g, r);
      const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      if (r == 64) worst_ms = std::max(worst_ms, ms);
      shortcuts += q.matching_shortcut;
      agree += q.k == ss_quartile_brute(g, r);
      ++total;
    }
  }
  return {agree == total && worst_ms < 10,
          {{"instances", total}, {"agree", agree}, {"matching_shortcuts", shortcuts}, {"under_10ms", worst_ms < 10}},
          {{"worst_ms_r64", decimal(worst_ms)}}};
}

CheckOutcome rc_samplers() {
  std::vector<Multigraph> gs;
  for (int n = 1; n <= 8; ++n)
    for (auto& g : enumerate_graphs(n, n * (n - 1) / 2))
      if (is_connected(g)) gs.push_back(std::move(g));
  const std::vector<std::pair<Rat, Rat>> pts{{1, 2}, {3, 1}, {2, 3}, {Rat(3, 2), Rat(3, 2)}};
  json rows = json::array();
  bool ok = true;
  for (const auto& [x, y] : pts) {
    long bad = 0, over_audited = 0, stated_misses = 0;
    for (std::size_t i = 0; i < gs.size(); ++i) {
      const double exact = tutte_eval(gs[i], x, y).to_double();
      const RcResult r = rc_sampler(gs[i], x, y, AAConfig{0.2, 0.25, i});
      bad += !r.aa.within(exact);
      over_audited += r.max_term > r.audited_u * (1 + 1e-12);
      stated_misses += !r.audit_ok;
    }
    const double rate = static_cast<double>(bad) / static_cast<double>(gs.size());
    ok = ok && rate < 0.15 && over_audited == 0;
    rows.push_back({{"x", x.str()},
                    {"y", y.str()},
                    {"region", rc_region(x, y)},
                    {"graphs", gs.size()},
                    {"violation_rate", decimal(rate)},
                    {"terms_over_audited_bound", over_audited},
                    {"stated_bound_discrepancies", stated_misses}});
  }
  return {ok, {{"points", rows}}};
}

CheckOutcome sign_surveys() {
  const std::vector<Rat> lambdas{Rat(-3, 2), Rat(-1, 2), Rat(1, 2), Rat(11, 10)};
  int covered = 0, matched = 0;
  for (std::uint64_t s = 0; s < 500; ++s) {
    const Multigraph g = random_loopless(31337 + s, 10);
    for (const auto& l : lambdas) {
      const SignPrediction p = sign_predict(g, l);
      if (!p.covered) continue;
      ++covered;
      matched += p.sign == chromatic(g, l).sign();
    }
  }
  const auto k = golden_constants();
  int planar = 0, planar_pos = 0, outer = 0, outer_pos = 0;
  for (int n = 4; n <= 12; ++n) {
    for (std::uint64_t s = 0; s < 5; ++s) {
      for (const Multigraph& g : {apollonian(n, s), maximal_outerplanar(n, s), wheel(n - 1), fan(n - 1), cycle(n),
                                  path(n), cone(maximal_outerplanar(n - 1, s + 50))}) {
        if (g.tags().planar) {
          ++planar;
          planar_pos += chromatic(g, k.B10).sign() > 0;
        }
        if (g.tags().outerplanar) {
          ++outer;
          outer_pos += chromatic(g, k.B5).sign() > 0;
        }
      }
    }
  }
  return {covered == 2000 && matched == covered && planar_pos == planar && outer_pos == outer && planar > 0 &&
              outer > 0,
          {{"predictions", covered},
           {"matched", matched},
           {"planar", planar},
           {"planar_B10_positive", planar_pos},
           {"outerplanar", outer},
           {"outerplanar_B5_positive", outer_pos}}};
}

CheckOutcome hyperbola() {
  int ok_count = 0, total = 0;
  json failures = json::array();
  for (std::uint64_t s = 0; s < 100; ++s) {
    const Multigraph g = random_loopless(2024 + s, 6);
    // points off the poles of both calibrations
    const Rat x(static_cast<long>(uniform_below(s, 10, 7)) - 3, 1 + static_cast<long>(uniform_below(s, 11, 3)));
    const Rat y(static_cast<long>(uniform_below(s, 12, 7)) - 3, 1 + static_cast<long>(uniform_below(s, 13, 3)));
    for (int k : {2, 3}) {
      for (int kind = 0; kind < 2; ++kind) {
        Calibration c;
        try {
          c = kind ? thicken_calibration(g, k, x, y) : stretch_calibration(g, k, x, y);
        } catch (const PreconditionError&) {
          continue;  // s = 0 at this point; the calibration is undefined there
        }
        const Multigraph h = kind ? thicken(g, k) : stretch(g, k);
        TutteEvaluator<Rat> lhs(x, y, TutteCaps{64, 200, {}});
        TutteEvaluator<Rat> rhs(c.X, c.Y, TutteCaps{64, 200, {}});
        const bool eq = lhs(h) == c.f * rhs(g);
        const bool hyp = (c.X - Rat(1)) * (c.Y - Rat(1)) == (x - Rat(1)) * (y - Rat(1));
        ++total;
        if (eq && hyp) ++ok_count;
        else failures.push_back({{"seed", s}, {"k", k}, {"kind", kind ? "thicken" : "stretch"}});
      }
    }
  }
  return {ok_count == total && total >= 300, {{"cases", total}, {"ok", ok_count}, {"failures", failures}}};
}

}  // namespace

const std::vector<CheckInfo>& check_registry() {
  static const std::vector<CheckInfo> reg{
      {"golden-identity", 1, "golden identity on Apollonian triangulations", golden_identity},
      {"exact-values", 2, "exact chromatic values of K4 at B5 and B10", exact_values},
      {"tutte-oracle", 3, "Tutte engine against the subgraph expansion", tutte_oracle},
      {"tl-oracle", 4, "Temperley-Lieb plat engine against the bracket state sum", tl_oracle},
      {"fklw-pipeline", 5, "qubit probability pipeline", fklw_pipeline},
      {"decisions", 6, "quartile and sign decisions", decisions},
      {"aa-contract", 7, "certificate sampler contract", aa_contract},
      {"gadgets", 8, "isolated-vertex and pendant-path gadgets", gadgets},
      {"ss-quartile", 9, "stable-set quartile algorithm", ss_quartile},
      {"rc-samplers", 10, "random-cluster samplers", rc_samplers},
      {"sign-surveys", 11, "sign predictions and Beraha positivity", sign_surveys},
      {"hyperbola", 12, "stretch and thicken calibration", hyperbola},
  };
  return reg;
}

std::vector<std::string> check_names() {
  std::vector<std::string> out;
  for (const auto& c : check_registry()) out.push_back(c.name);
  return out;
}

CheckResult run_check(const std::string& name) {
  for (const auto& c : check_registry()) {
    if (c.name != name) continue;
    CheckResult r;
    r.name = c.name;
    r.criterion = c.criterion;
    r.summary = c.summary;
    const auto t0 = std::chrono::steady_clock::now();
    CheckOutcome o = c.run();
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.pass = o.pass;
    r.details = std::move(o.details);
    r.timing = std::move(o.timing);
    return r;
  }
  std::string valid;
  for (const auto& n : check_names()) valid += (valid.empty() ? "" : ", ") + n;
  throw PreconditionError("unknown check '" + name + "'; valid checks: " + valid);
}

json CheckResult::to_json(bool with_timing) const {
  json j{{"check", name}, {"criterion", criterion}, {"summary", summary}, {"pass", pass}, {"details", details}};
  if (with_timing) {
    json t = timing.is_object() ? timing : json::object();
    t["seconds"] = decimal(seconds);
    j["timing"] = t;
  }
  return j;
}

}  // namespace tuttebraid
