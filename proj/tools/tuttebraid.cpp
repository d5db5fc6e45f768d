// tuttebraid: command-line front end. Every command prints one JSON document.
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cache.hpp"
#include "tuttebraid/approx.hpp"
#include "tuttebraid/braid.hpp"
#include "tuttebraid/checks.hpp"
#include "tuttebraid/errors.hpp"
#include "tuttebraid/number_json.hpp"
#include "tuttebraid/tutte.hpp"

using namespace tuttebraid;
using json = nlohmann::json;

namespace {

constexpr int kExitPrecondition = 2;
constexpr int kExitCap = 3;
constexpr int kExitUsage = 64;

struct Globals {
  std::uint64_t seed = 0;
  double epsilon = 0.2;
  double delta = 0.25;
  std::string format = "json";
  bool approx = false;
  bool timing = false;
  AAConfig aa() const { return AAConfig{epsilon, delta, seed}; }
};

Globals G;

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

long parse_int(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(s, &used);
  } catch (const std::logic_error&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw ParseError(what + ": not an integer: '" + s + "'");
  return v;
}

double parse_real(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::logic_error&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw ParseError(what + ": not a number: '" + s + "'");
  return v;
}

json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(what + ": " + e.what());
  }
}

// ---- graph sources

// "gen:FAMILY:key=value,..." or a JSON file path
Multigraph graph_ref(const std::string& ref) {
  if (ref.rfind("gen:", 0) == 0) {
    const std::string rest = ref.substr(4);
    const auto colon = rest.find(':');
    const std::string family = rest.substr(0, colon);
    json params = json::object();
    if (colon != std::string::npos) {
      std::stringstream ss(rest.substr(colon + 1));
      std::string kv;
      while (std::getline(ss, kv, ',')) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw ParseError("bad generator parameter '" + kv + "'");
        const std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
        params[key] = val.find('.') != std::string::npos ? json(parse_real(val, key)) : json(parse_int(val, key));
      }
    }
    return gen(family, params, G.seed);
  }
  return graph_from_json(parse_json_text(read_file(ref), "graph " + ref));
}

struct GraphOpts {
  std::string file;
  std::string family;
  std::string params = "{}";
  int n = -1, k = -1;
  double p = -1;

  void attach(CLI::App* sub) {
    sub->add_option("--graph", file, "graph JSON file ('-' for stdin) or gen:FAMILY:key=value,...");
    sub->add_option("--family", family, "generator family")->check(CLI::IsMember(family_names()));
    sub->add_option("--params", params, "generator parameters as JSON");
    sub->add_option("--n", n, "generator parameter n");
    sub->add_option("--k", k, "generator parameter k");
    sub->add_option("--p", p, "generator parameter p");
  }

  Multigraph load() const {
    if (!file.empty()) return graph_ref(file);
    require(!family.empty(), "give --graph or --family");
    json prm = parse_json_text(params, "--params");
    if (n >= 0) prm["n"] = n;
    if (k >= 0) prm["k"] = k;
    if (p >= 0) prm["p"] = p;
    return gen(family, prm, G.seed);
  }
};

BraidWord load_braid(const std::string& file, const std::string& word) {
  if (!word.empty()) return BraidWord::parse(word);
  require(!file.empty(), "give --braid or --word");
  const std::string text = read_file(file);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return BraidWord::from_json(parse_json_text(text, file));
  return BraidWord::parse(text);
}

Formula load_formula(const std::string& file) { return parse_dimacs(read_file(file)); }

// "KIND:ARG[:ARG]" with graph arguments resolved by graph_ref
CountingProblem problem_ref(const std::string& spec) {
  const auto c1 = spec.find(':');
  const std::string kind = spec.substr(0, c1);
  const std::string arg = c1 == std::string::npos ? "" : spec.substr(c1 + 1);
  auto graph_and_int = [&](int& k) {
    const auto last = arg.rfind(':');
    require(last != std::string::npos, kind + " needs GRAPH:K");
    k = static_cast<int>(parse_int(arg.substr(last + 1), kind));
    return graph_ref(arg.substr(0, last));
  };
  if (kind == "all-accept" || kind == "all-reject") {
    const long bits = parse_int(arg, kind);
    require(bits >= 0 && bits <= 62, kind + ": certificate length must lie in [0, 62]");
    return constant_problem(static_cast<int>(bits), kind == "all-accept");
  }
  if (kind == "stable-sets") return stable_set_problem(graph_ref(arg));
  if (kind == "colorings") {
    int k = 0;
    const Multigraph g = graph_and_int(k);
    return colorings_problem(g, k);
  }
  if (kind == "ham-m1") return ham_problems(graph_ref(arg)).m1;
  if (kind == "ham-m2") return ham_problems(graph_ref(arg)).m2;
  if (kind == "sat" || kind == "dnf") {
    Formula f = load_formula(arg);
    require(f.dnf == (kind == "dnf"), "formula kind does not match '" + kind + "'");
    return formula_problem(f);
  }
  throw PreconditionError("unknown problem '" + kind +
                          "'; valid: all-accept:P, all-reject:P, stable-sets:G, colorings:G:K, ham-m1:G, ham-m2:G, "
                          "sat:FILE, dnf:FILE");
}

json exact_if_small(const CountingProblem& P) {
  if (!P.has_oracle() && P.raw_space() > (1 << 22)) return nullptr;
  try {
    return P.exact().get_str();
  } catch (const CapExceeded&) {
    return nullptr;
  }
}

// ---- number helpers

json number_out(const Number& v) {
  json j{{"value", to_json(v)}, {"kind", number_kind(v)}, {"exact", !std::holds_alternative<CDouble>(v)}};
  if (G.approx) j["approx"] = to_json(approx(v));
  return j;
}

int rank_of(const Number& v) { return static_cast<int>(v.index()); }  // Rat < Golden < Cyc20 < CDouble

Number promote(const Number& v, int to) {
  if (rank_of(v) >= to) return v;
  if (to == 3) return approx(v);
  return std::visit(
      [&](const auto& x) -> Number {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Rat>) {
          return to == 1 ? Number(Golden(x)) : Number(Cyc20(x));
        } else if constexpr (std::is_same_v<T, Golden>) {
          return Number(Cyc20(x));
        } else {
          return v;
        }
      },
      v);
}

Number tutte_at(const Multigraph& g, const Number& x, const Number& y, const TutteCaps& caps) {
  const int to = std::max(rank_of(x), rank_of(y));
  const Number px = promote(x, to), py = promote(y, to);
  return std::visit(
      [&](const auto& a) -> Number {
        using T = std::decay_t<decltype(a)>;
        const T& b = std::get<T>(py);
        if (caps.max_vertices == TutteCaps{}.max_vertices && caps.max_edges == TutteCaps{}.max_edges)
          return tutte_eval(g, a, b);
        TutteEvaluator<T> ev(a, b, caps);
        return ev(g);
      },
      px);
}

// ---- command table

struct Command {
  CLI::App* app;
  std::string name;
  std::function<json()> run;
};
std::vector<Command> commands;

CLI::App* add_cmd(CLI::App* parent, const std::string& name, const std::string& help, std::string full,
                  std::function<json()> run) {
  CLI::App* sub = parent->add_subcommand(name, help);
  commands.push_back({sub, std::move(full), std::move(run)});
  return sub;
}

// integers stay integers in the echo; everything else is echoed verbatim
json typed(const std::string& s) {
  if (!s.empty() && s.find_first_not_of("-0123456789") == std::string::npos && s.size() < 18) {
    try {
      return std::stoll(s);
    } catch (const std::exception&) {
    }
  }
  return s;
}

json parameters_of(CLI::App* sub) {
  json p = json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->get_lnames().empty() || opt->count() == 0) continue;
    const auto& res = opt->results();
    if (opt->get_expected_max() == 0) p[opt->get_lnames()[0]] = true;
    else p[opt->get_lnames()[0]] = res.size() == 1 ? typed(res[0]) : json(res);
  }
  p["epsilon"] = decimal(G.epsilon);
  p["delta"] = decimal(G.delta);
  return p;
}

void emit(const json& doc) {
  std::cout << (G.format == "pretty" ? doc.dump(2) : doc.dump()) << '\n';
}

json envelope(const std::string& command, const json& params) {
  return {{"schema", "tuttebraid/1"}, {"command", command}, {"parameters", params}, {"seed", G.seed}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Tutte, chromatic and Jones evaluation with additive-approximation samplers"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", G.seed, "64-bit seed for every random choice");
  app.add_option("--epsilon", G.epsilon, "additive error parameter")->check(CLI::PositiveNumber);
  app.add_option("--delta", G.delta, "failure probability in (0, 1/2)");
  app.add_option("--format", G.format, "output format")->check(CLI::IsMember({"json", "pretty"}));
  app.add_flag("--approx", G.approx, "add floating-point views of exact values");
  app.add_flag("--timing", G.timing, "add wall-clock timings (output is then not reproducible)");

  // ---- graph
  auto* graph = app.add_subcommand("graph", "generate, transform and inspect graphs")->require_subcommand(1);
  static GraphOpts g_gen, g_tr, g_info;
  {
    auto* s = add_cmd(graph, "gen", "generate a graph from a family", "graph gen", [] {
      const Multigraph g = g_gen.load();
      return json{{"graph", to_json(g)}, {"canonical_key", canonical_key(g)}};
    });
    g_gen.attach(s);
  }
  static std::string tr_op;
  static int tr_k = 1, tr_v = 0;
  {
    auto* s = add_cmd(graph, "transform", "apply a gadget transform", "graph transform", [] {
      const Multigraph g = g_tr.load();
      Multigraph h;
      if (tr_op == "add_isolated") h = add_isolated(g, tr_k);
      else if (tr_op == "attach_path") h = attach_path(g, tr_v, tr_k);
      else if (tr_op == "stretch") h = stretch(g, tr_k);
      else if (tr_op == "thicken") h = thicken(g, tr_k);
      else h = cone(g);
      return json{{"graph", to_json(h)}, {"canonical_key", canonical_key(h)}};
    });
    g_tr.attach(s);
    s->add_option("--op", tr_op, "transform")
        ->required()
        ->check(CLI::IsMember({"add_isolated", "attach_path", "stretch", "thicken", "cone"}));
    s->add_option("--times", tr_k, "count or length for the transform");
    s->add_option("--vertex", tr_v, "attachment vertex for attach_path");
  }
  {
    auto* s = add_cmd(graph, "info", "structural summary", "graph info", [] {
      const Multigraph g = g_info.load();
      return json{{"n", g.n()},
                  {"m", g.m()},
                  {"loops", g.loop_count()},
                  {"components", components(g)},
                  {"rank", rank(g)},
                  {"blocks", blocks(g).edge_sets.size()},
                  {"connected", is_connected(g)},
                  {"canonical_key", canonical_key(g)},
                  {"graph", to_json(g)}};
    });
    g_info.attach(s);
  }

  // ---- tutte
  auto* tutte = app.add_subcommand("tutte", "Tutte polynomial evaluation")->require_subcommand(1);
  static GraphOpts g_te, g_tp, g_tb;
  static std::string tx = "1", ty = "1";
  static int cap_v = TutteCaps{}.max_vertices, cap_e = TutteCaps{}.max_edges;
  {
    auto* s = add_cmd(tutte, "eval", "T(G; x, y) by memoized deletion-contraction", "tutte eval", [] {
      const Multigraph g = g_te.load();
      const Number x = parse_number(tx), y = parse_number(ty);
      const std::string key = "tutte|" + canonical_key(g) + "|" + to_json(x).dump() + "|" + to_json(y).dump() +
                              "|" + std::to_string(cap_v) + "," + std::to_string(cap_e);
      const auto cache = PersistentCache::from_env();
      if (cache) {
        if (auto hit = cache->get(key)) {
          std::cerr << "cache hit\n";
          return *hit;
        }
      }
      json out = number_out(tutte_at(g, x, y, TutteCaps{cap_v, cap_e, {}}));
      if (cache) cache->put(key, out);
      return out;
    });
    g_te.attach(s);
    s->add_option("--x", tx, "x coordinate (number literal)");
    s->add_option("--y", ty, "y coordinate (number literal)");
    s->add_option("--cap-vertices", cap_v, "largest block vertex cap");
    s->add_option("--cap-edges", cap_e, "largest block edge cap");
  }
  static int poly_cap = 12;
  {
    auto* s = add_cmd(tutte, "poly", "full coefficient matrix", "tutte poly", [] {
      const TuttePoly p = tutte_poly(g_tp.load(), poly_cap);
      return p.to_json();
    });
    g_tp.attach(s);
    s->add_option("--cap-vertices", poly_cap, "largest block vertex cap");
  }
  static std::string bx = "1", by = "1";
  {
    auto* s = add_cmd(tutte, "brute", "subgraph expansion over all edge subsets", "tutte brute", [] {
      const Multigraph g = g_tb.load();
      const Number x = parse_number(bx), y = parse_number(by);
      const int to = std::max(rank_of(x), rank_of(y));
      const Number v = std::visit(
          [&](const auto& a) -> Number {
            using T = std::decay_t<decltype(a)>;
            return tutte_brute(g, a, std::get<T>(promote(y, to)));
          },
          promote(x, to));
      return number_out(v);
    });
    g_tb.attach(s);
    s->add_option("--x", bx, "x coordinate");
    s->add_option("--y", by, "y coordinate");
  }

  // ---- chromatic
  auto* chrom = app.add_subcommand("chromatic", "chromatic polynomial")->require_subcommand(1);
  static GraphOpts g_ce, g_cs, g_cb;
  static std::string lam = "0";
  {
    auto* s = add_cmd(chrom, "eval", "P_G(lambda)", "chromatic eval", [] {
      const Multigraph g = g_ce.load();
      const Number l = parse_number(lam);
      const std::string key = "chromatic|" + canonical_key(g) + "|" + to_json(l).dump();
      const auto cache = PersistentCache::from_env();
      if (cache) {
        if (auto hit = cache->get(key)) {
          std::cerr << "cache hit\n";
          return *hit;
        }
      }
      json out = number_out(chromatic_eval(g, l).value);
      if (cache) cache->put(key, out);
      return out;
    });
    g_ce.attach(s);
    s->add_option("--lambda", lam, "evaluation point")->required();
  }
  static std::string slam;
  {
    auto* s = add_cmd(chrom, "sign", "predicted and exact sign at a rational point", "chromatic sign", [] {
      const Multigraph g = g_cs.load();
      const Rat l = Rat::parse(slam);
      const SignPrediction p = sign_predict(g, l);
      const int exact = chromatic(g, l).sign();
      json j{{"covered", p.covered}, {"exact_sign", exact}, {"value", chromatic(g, l).str()}};
      if (p.covered) {
        j["predicted_sign"] = p.sign;
        j["interval"] = p.interval;
        j["match"] = p.sign == exact;
      }
      return j;
    });
    g_cs.attach(s);
    s->add_option("--lambda", slam, "rational evaluation point")->required();
  }
  static std::string blam;
  {
    auto* s = add_cmd(chrom, "bounds", "magnitude bounds at a point", "chromatic bounds", [] {
      return bounds(g_cb.load(), parse_number(blam)).to_json();
    });
    g_cb.attach(s);
    s->add_option("--lambda", blam, "evaluation point")->required();
  }
  static std::string bs_family = "apollonian";
  static int bs_index = 5, bs_min = 4, bs_max = 10, bs_per = 5;
  static double bs_thr = 1e-7;
  {
    auto* s = add_cmd(chrom, "beraha-survey", "signs of P_G(B_n) over a family", "chromatic beraha-survey", [] {
      return beraha_survey(bs_family, bs_index, bs_min, bs_max, bs_per, G.seed, bs_thr).to_json();
    });
    s->add_option("--family", bs_family, "generator family")->check(CLI::IsMember(family_names()));
    s->add_option("--index", bs_index, "Beraha index n");
    s->add_option("--min-n", bs_min, "smallest graph size");
    s->add_option("--max-n", bs_max, "largest graph size");
    s->add_option("--per-size", bs_per, "graphs per size");
    s->add_option("--threshold", bs_thr, "near-zero threshold for floating carriers");
  }

  // ---- verify
  auto* verify = app.add_subcommand("verify", "identity checks")->require_subcommand(1);
  static std::string vg_family = "apollonian";
  static int vg_max = 12, vg_count = 50;
  {
    auto* s = add_cmd(verify, "golden", "golden identity on generated triangulations", "verify golden", [] {
      require(vg_max >= 4, "--max-n must be at least 4");
      json rows = json::array();
      int equal = 0;
      for (int i = 0; i < vg_count; ++i) {
        const int n = 4 + i % (vg_max - 3);
        const std::uint64_t seed = G.seed + static_cast<std::uint64_t>(i);
        const Multigraph t = gen(vg_family, json{{"n", n}}, seed);
        const GoldenCheck c = golden_identity_check(t);
        equal += c.equal;
        rows.push_back({{"n", n}, {"seed", seed}, {"lhs", to_json(c.lhs)}, {"rhs", to_json(c.rhs)}, {"equal", c.equal}});
      }
      return json{{"count", vg_count}, {"equal", equal}, {"all_equal", equal == vg_count}, {"graphs", rows}};
    });
    s->add_option("--family", vg_family, "triangulation family")->check(CLI::IsMember({"apollonian", "complete"}));
    s->add_option("--max-n", vg_max, "largest triangulation");
    s->add_option("--count", vg_count, "number of triangulations");
  }
  static GraphOpts g_vc;
  static std::string vc_lam = "B5";
  {
    auto* s = add_cmd(verify, "cone", "P_cone(G)(lambda+1) = (lambda+1) P_G(lambda)", "verify cone", [] {
      return json{{"holds", cone_identity_check(g_vc.load(), parse_number(vc_lam))}};
    });
    g_vc.attach(s);
    s->add_option("--lambda", vc_lam, "evaluation point");
  }
  static int vs_count = 200, vs_max = 10;
  {
    auto* s = add_cmd(verify, "signs", "sign predictions on random loopless graphs", "verify signs", [] {
      const std::vector<Rat> lambdas{Rat(-3, 2), Rat(-1, 2), Rat(1, 2), Rat(11, 10)};
      int covered = 0, matched = 0;
      for (int i = 0; i < vs_count; ++i) {
        const std::uint64_t seed = G.seed + static_cast<std::uint64_t>(i);
        const int n = 2 + static_cast<int>(uniform_below(seed, 0, vs_max - 1));
        const Multigraph g = gnp(n, 0.2 + 0.6 * uniform01(seed, 1), seed);
        for (const auto& l : lambdas) {
          const SignPrediction p = sign_predict(g, l);
          if (!p.covered) continue;
          ++covered;
          matched += p.sign == chromatic(g, l).sign();
        }
      }
      return json{{"predictions", covered}, {"matched", matched}, {"all_match", covered == matched}};
    });
    s->add_option("--count", vs_count, "number of graphs");
    s->add_option("--max-n", vs_max, "largest graph");
  }
  add_cmd(verify, "gadgets", "isolated-vertex and pendant-path gadgets", "verify gadgets",
          [] { return gadget_experiments().to_json(); });
  add_cmd(verify, "tait", "Jones polynomial against the Tutte polynomial of the Tait graph", "verify tait", [] {
    json rows = json::array();
    bool all = true;
    for (const auto& p : curated_tait_pairs()) {
      const TaitReport r = tait_consistency(p);
      all = all && r.as_expected;
      rows.push_back(r.to_json());
    }
    return json{{"pairs", rows}, {"all_as_expected", all}};
  });

  // ---- braid
  auto* braid = app.add_subcommand("braid", "braids, plat closures and the Jones representation")->require_subcommand(1);
  struct BraidOpts {
    std::string file, word;
    void attach(CLI::App* s) {
      s->add_option("--braid", file, "braid file (text or JSON)");
      s->add_option("--word", word, "inline braid, e.g. 'm=4 s2 s1^-1'");
    }
    BraidWord load() const { return load_braid(file, word); }
  };
  static BraidOpts b_amp, b_br, b_inv, b_smp, b_est, b_dec;
  {
    auto* s = add_cmd(braid, "amplitude", "plat-closure amplitude", "braid amplitude",
                      [] { return plat_amplitude(b_amp.load()).to_json(); });
    b_amp.attach(s);
  }
  {
    auto* s = add_cmd(braid, "bracket", "Kauffman bracket of the plat closure", "braid bracket", [] {
      const BraidWord b = b_br.load();
      const LaurentA k = bracket_from_tl(b);
      json j{{"bracket", to_json(k)}, {"text", k.str()}};
      if (static_cast<int>(b.word.size()) <= 20) j["state_sum_agrees"] = bracket_state_sum(b) == k;
      return j;
    });
    b_br.attach(s);
  }
  {
    auto* s = add_cmd(braid, "invariants", "components, writhe, Jones value and qubit probability",
                      "braid invariants", [] {
                        const BraidWord b = b_inv.load();
                        const LinkInvariants inv = link_invariants(b);
                        json j = inv.to_json();
                        j["jones"] = to_json(jones_value(b, inv));
                        j["fklw"] = fklw_evaluate(b).to_json();
                        return j;
                      });
    b_inv.attach(s);
  }
  static long shots = 1000;
  {
    auto* s = add_cmd(braid, "sample", "simulated qubit measurements", "braid sample", [] {
      const BraidWord b = b_smp.load();
      const Outcomes o = sample_outcomes(b, shots, G.seed);
      return json{{"shots", shots}, {"zeros", o.zeros}, {"ones", o.ones}};
    });
    b_smp.attach(s);
    s->add_option("--shots", shots, "number of measurements")->check(CLI::PositiveNumber);
  }
  {
    auto* s = add_cmd(braid, "estimate", "additive estimate of |V|", "braid estimate", [] {
      const BraidWord b = b_est.load();
      json j = estimate_absV(b, G.aa()).to_json();
      j["exact_absV"] = decimal(plat_amplitude(b).absV);
      return j;
    });
    b_est.attach(s);
  }
  static std::string dec_mode = "quartile";
  static int dec_mL = 0;
  {
    auto* s = add_cmd(braid, "decide", "accept/reject decision", "braid decide", [] {
      const BraidWord b = b_dec.load();
      if (dec_mode == "sign") return decide_sign(b).to_json();
      return decide_quartile(b, dec_mL > 0 ? dec_mL : b.m / 2, G.aa()).to_json();
    });
    b_dec.attach(s);
    s->add_option("--mode", dec_mode, "decision rule")->check(CLI::IsMember({"quartile", "sign"}));
    s->add_option("--mL", dec_mL, "normalization exponent (default m/2)");
  }

  // ---- aa
  auto* aa = app.add_subcommand("aa", "additive-approximation samplers")->require_subcommand(1);
  static std::string aa_prob;
  static bool aa_exact = false;
  {
    auto* s = add_cmd(aa, "run", "certificate sampler estimate", "aa run", [] {
      const CountingProblem P = problem_ref(aa_prob);
      json j{{"problem", P.describe()}, {"aa", aa_estimate(P, G.aa()).to_json()}};
      if (aa_exact) j["exact"] = exact_if_small(P);
      return j;
    });
    s->add_option("--problem", aa_prob, "problem spec, e.g. colorings:gen:complete:n=3:3")->required();
    s->add_flag("--exact", aa_exact, "also report the exact count when small");
  }
  static std::string q_prob;
  static int q_r = 4;
  {
    auto* s = add_cmd(aa, "quartile", "which r-quantile holds the count", "aa quartile", [] {
      const CountingProblem P = problem_ref(q_prob);
      return quartile_decide(P, q_r, G.aa()).to_json();
    });
    s->add_option("--problem", q_prob, "problem spec")->required();
    s->add_option("--r", q_r, "number of buckets");
  }
  static std::string gap_g, gap_h;
  {
    auto* s = add_cmd(aa, "gap", "estimate g - h over a shared certificate space", "aa gap", [] {
      const CountingProblem g = problem_ref(gap_g), h = problem_ref(gap_h);
      json j{{"aa", gap_estimate({g, h}, G.aa()).to_json()}};
      const json eg = exact_if_small(g), eh = exact_if_small(h);
      if (!eg.is_null() && !eh.is_null())
        j["exact"] = mpz_class(mpz_class(eg.get<std::string>()) - mpz_class(eh.get<std::string>())).get_str();
      return j;
    });
    s->add_option("--plus", gap_g, "minuend problem spec")->required();
    s->add_option("--minus", gap_h, "subtrahend problem spec")->required();
  }
  static std::string comb_op, comb_f, comb_g;
  {
    auto* s = add_cmd(aa, "combine", "neg/add/sub/mul of sampler procedures", "aa combine", [] {
      const AAProcedure f = as_procedure(problem_ref(comb_f));
      AAProcedure p;
      if (comb_op == "neg") {
        p = aa_neg(f);
      } else {
        require(!comb_g.empty(), comb_op + " needs --g");
        const AAProcedure g = as_procedure(problem_ref(comb_g));
        p = comb_op == "add" ? aa_add(f, g) : comb_op == "sub" ? aa_sub(f, g) : aa_mul(f, g);
      }
      return json{{"procedure", p.name}, {"aa", p(G.aa()).to_json()}};
    });
    s->add_option("--op", comb_op, "combinator")->required()->check(CLI::IsMember({"neg", "add", "sub", "mul"}));
    s->add_option("--f", comb_f, "first problem spec")->required();
    s->add_option("--g", comb_g, "second problem spec");
  }

  // ---- ss, dnf, sat, rc
  auto* ss = app.add_subcommand("ss", "stable sets")->require_subcommand(1);
  static GraphOpts g_ss;
  static int ss_r = 4;
  {
    auto* s = add_cmd(ss, "quartile", "exact stable-set quartile", "ss quartile", [] {
      const Multigraph g = g_ss.load();
      json j = ss_quartile_exact(g, ss_r).to_json();
      if (g.n() <= 20) j["brute_force_k"] = ss_quartile_brute(g, ss_r);
      return j;
    });
    g_ss.attach(s);
    s->add_option("--r", ss_r, "number of buckets");
  }
  auto* dnf = app.add_subcommand("dnf", "DNF counting")->require_subcommand(1);
  static std::string dnf_file;
  {
    auto* s = add_cmd(dnf, "count", "exact model count", "dnf count", [] {
      const Formula f = load_formula(dnf_file);
      require(f.dnf, "expected a DNF formula");
      return json{{"n", f.n}, {"terms", f.clauses.size()}, {"count", count_models(f).get_str()}};
    });
    s->add_option("--dnf", dnf_file, "DIMACS DNF file")->required();
  }
  static std::string fp_file;
  {
    auto* s = add_cmd(dnf, "fpras", "Karp-Luby estimate wrapped as an additive approximation", "dnf fpras", [] {
      const Formula f = load_formula(fp_file);
      json j{{"aa", dnf_procedure(f)(G.aa()).to_json()}};
      if (f.n <= 20) j["exact"] = count_models(f).get_str();
      return j;
    });
    s->add_option("--dnf", fp_file, "DIMACS DNF file")->required();
  }
  auto* sat = app.add_subcommand("sat", "#SAT")->require_subcommand(1);
  static std::string sat_file;
  {
    auto* s = add_cmd(sat, "identity", "#SAT(F) = 2^n - #DNF(not F)", "sat identity",
                      [] { return sat_via_dnf(load_formula(sat_file), G.aa()).to_json(); });
    s->add_option("--cnf", sat_file, "DIMACS CNF file")->required();
  }
  auto* rc = app.add_subcommand("rc", "random-cluster samplers")->require_subcommand(1);
  static GraphOpts g_rc;
  static std::string rx = "2", ry = "2";
  {
    auto* s = add_cmd(rc, "sample", "additive estimate of T(G; x, y)", "rc sample", [] {
      const Multigraph g = g_rc.load();
      const Rat x = Rat::parse(rx), y = Rat::parse(ry);
      json j = rc_sampler(g, x, y, G.aa()).to_json();
      try {
        j["exact"] = tutte_eval(g, x, y).str();
      } catch (const CapExceeded&) {
        j["exact"] = nullptr;
      }
      return j;
    });
    g_rc.attach(s);
    s->add_option("--x", rx, "rational x");
    s->add_option("--y", ry, "rational y");
  }

  // ---- experiments
  auto* exp = app.add_subcommand("experiment", "acceptance-suite runs")->require_subcommand(1);
  static std::string exp_spec, exp_out;
  {
    auto* s = add_cmd(exp, "run", "run the checks named in a spec file", "experiment run", [] {
      const json spec = parse_json_text(read_file(exp_spec), "experiment spec");
      if (!spec.is_object()) throw ParseError("experiment spec must be a JSON object");
      const json names = spec.value("checks", json::array());
      if (!names.is_array()) throw ParseError("\"checks\" must be an array of check names");
      static const std::map<std::string, std::string> alias{{"concentration", "aa-contract"}};
      std::vector<std::string> todo;
      for (const auto& n : names) {
        if (!n.is_string()) throw ParseError("check names must be strings");
        const std::string name = alias.count(n.get<std::string>()) ? alias.at(n.get<std::string>()) : n.get<std::string>();
        const auto valid = check_names();
        if (std::find(valid.begin(), valid.end(), name) == valid.end()) run_check(name);  // throws the name list
        todo.push_back(name);
      }
      json results = json::array();
      bool all = true;
      for (const auto& name : todo) {
        const CheckResult r = run_check(name);
        all = all && r.pass;
        results.push_back(r.to_json(G.timing));
      }
      json report{{"checks", results}, {"all_pass", all}};
      if (!exp_out.empty()) {
        std::ofstream out(exp_out);
        if (!out) throw PreconditionError("cannot write '" + exp_out + "'");
        out << report.dump(2) << '\n';
      }
      return report;
    });
    s->add_option("--spec", exp_spec, "JSON spec: {\"checks\": [names]}")->required();
    s->add_option("--out", exp_out, "also write the report to this file");
  }
  add_cmd(exp, "list", "names of the available checks", "experiment list", [] {
    json rows = json::array();
    for (const auto& c : check_registry()) rows.push_back({{"check", c.name}, {"criterion", c.criterion}, {"summary", c.summary}});
    return json{{"checks", rows}};
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kExitUsage;
  }
  if (!(G.delta > 0 && G.delta < 0.5)) {
    std::cerr << "--delta must lie in (0, 1/2)\n";
    return kExitUsage;
  }

  for (const auto& cmd : commands) {
    if (!cmd.app->parsed()) continue;
    json doc = envelope(cmd.name, parameters_of(cmd.app));
    int code = 0;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      doc["result"] = cmd.run();
    } catch (const CapExceeded& e) {
      doc["error"] = {{"kind", "cap_exceeded"}, {"message", e.what()}};
      code = kExitCap;
    } catch (const ParseError& e) {
      doc["error"] = {{"kind", "parse"}, {"message", e.what()}};
      code = kExitPrecondition;
    } catch (const PreconditionError& e) {
      doc["error"] = {{"kind", "precondition"}, {"message", e.what()}};
      code = kExitPrecondition;
    } catch (const std::exception& e) {
      doc["error"] = {{"kind", "internal"}, {"message", e.what()}};
      code = 1;
    }
    if (G.timing)
      doc["timing"] = {{"seconds", decimal(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count())}};
    emit(doc);
    if (code) std::cerr << doc["error"]["message"].get<std::string>() << '\n';
    return code;
  }
  std::cerr << app.help();
  return kExitUsage;
}
