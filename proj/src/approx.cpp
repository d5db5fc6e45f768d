#include "tuttebraid/approx.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>

#include "tuttebraid/errors.hpp"
#include "tuttebraid/tutte.hpp"

namespace tuttebraid {

namespace {

std::uint64_t bits64(std::uint64_t seed, std::uint64_t counter) {
  return splitmix64(seed ^ splitmix64(counter));
}

mpz_class pow2(unsigned long e) {
  mpz_class r = 1;
  mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), e);
  return r;
}

std::vector<std::uint64_t> adjacency_masks(const Multigraph& g) {
  require(g.n() <= 64, "bitmask routines need n <= 64");
  std::vector<std::uint64_t> adj(g.n(), 0);
  for (const auto& e : g.edges()) {
    adj[e.u] |= std::uint64_t{1} << e.v;
    adj[e.v] |= std::uint64_t{1} << e.u;
  }
  return adj;
}

struct UnionFind {
  std::vector<int> p;
  int parts;
  explicit UnionFind(int n) : p(n), parts(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    p[a] = b;
    --parts;
    return true;
  }
};

AAResult composite(const std::string& what, double estimate, double u, double eps, double delta, std::uint64_t seed,
                   const AAResult& a, const AAResult& b) {
  AAResult r;
  r.estimate = estimate;
  r.u = u;
  r.epsilon = eps;
  r.delta = delta;
  r.seed = seed;
  r.samples_used = a.samples_used + b.samples_used;
  r.notes.push_back(what + " of operands at eps " + decimal(a.epsilon) + " and " + decimal(b.epsilon));
  return r;
}

}  // namespace

// ---- CountingProblem

double CountingProblem::raw_space() const {
  double s = 1;
  for (auto r : radices) s *= static_cast<double>(r);
  return s;
}

mpz_class CountingProblem::space_size() const {
  mpz_class s = 1;
  for (auto r : radices) s *= static_cast<unsigned long>(r);
  return s / static_cast<unsigned long>(multiplicity);
}

int CountingProblem::certificate_bits() const {
  const mpz_class s = space_size();
  if (s <= 1) return 0;
  mpz_class t = s - 1;
  return static_cast<int>(mpz_sizeinbase(t.get_mpz_t(), 2));
}

mpz_class CountingProblem::exact() const {
  if (exact_oracle) return exact_oracle();
  return count_by_enumeration(*this);
}

nlohmann::json CountingProblem::describe() const {
  return {{"name", name},
          {"certificate_bits", certificate_bits()},
          {"space", space_size().get_str()},
          {"multiplicity", multiplicity}};
}

mpz_class count_by_enumeration(const CountingProblem& P, double cap) {
  if (P.raw_space() > cap) throw CapExceeded(P.name + ": certificate space too large to enumerate");
  Certificate c(P.radices.size(), 0);
  mpz_class hits = 0;
  for (;;) {
    if (P.verify(c)) ++hits;
    std::size_t i = 0;
    for (; i < c.size(); ++i) {
      if (++c[i] < P.radices[i]) break;
      c[i] = 0;
    }
    if (i == c.size()) break;
  }
  require(hits % static_cast<unsigned long>(P.multiplicity) == 0, P.name + ": accept count not divisible by multiplicity");
  return hits / static_cast<unsigned long>(P.multiplicity);
}

Certificate draw_certificate(const CountingProblem& P, std::uint64_t seed, std::uint64_t index) {
  const std::uint64_t D = P.radices.size();
  Certificate c(D);
  for (std::uint64_t d = 0; d < D; ++d) c[d] = uniform_below(seed, index * D + d, P.radices[d]);
  return c;
}

double single_estimate(const CountingProblem& P, std::uint64_t seed, std::uint64_t index) {
  return P.verify(draw_certificate(P, seed, index)) ? P.u() : 0.0;
}

AAResult aa_estimate(const CountingProblem& P, const AAConfig& cfg) {
  cfg.validate();
  require(!P.radices.empty() || P.multiplicity == 1, "empty certificate space");
  for (auto r : P.radices) require(r > 0, P.name + ": zero radix");
  AAResult res;
  res.u = P.u();
  res.epsilon = cfg.epsilon;
  res.delta = cfg.delta;
  res.seed = cfg.seed;
  res.batch_size = batch_size(cfg.epsilon);
  res.batches = batch_count(cfg.delta);
  std::vector<double> means(res.batches);
  for (long b = 0; b < res.batches; ++b) {
    const std::uint64_t s = batch_seed(cfg.seed, b);
    long acc = 0;
    for (long j = 0; j < res.batch_size; ++j) acc += P.verify(draw_certificate(P, s, j)) ? 1 : 0;
    means[b] = res.u * (static_cast<double>(acc) / static_cast<double>(res.batch_size));
  }
  res.samples_used = res.batch_size * res.batches;
  res.estimate = median(means);
  return res;
}

// ---- bundled problems

CountingProblem constant_problem(int p, bool accept) {
  require(p >= 0, "negative certificate length");
  CountingProblem P;
  P.name = accept ? "all-accept" : "all-reject";
  P.radices.assign(p, 2);
  P.verify = [accept](const Certificate&) { return accept; };
  P.exact_oracle = [p, accept] { return accept ? pow2(p) : mpz_class(0); };
  return P;
}

CountingProblem stable_set_problem(const Multigraph& g) {
  CountingProblem P;
  P.name = "stable-sets";
  P.radices.assign(g.n(), 2);
  const auto edges = g.edges();
  P.verify = [edges](const Certificate& c) {
    for (const auto& e : edges)
      if (c[e.u] && c[e.v]) return false;
    return true;
  };
  P.exact_oracle = [g] { return count_stable_sets(g); };
  return P;
}

CountingProblem colorings_problem(const Multigraph& g, int k) {
  require(is_connected(g), "colorings problem needs a connected graph");
  require(k >= 2 || g.n() == 1, "colorings problem needs k >= 2");
  const int n = g.n();
  std::vector<std::vector<std::pair<int, int>>> adj(n);
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    const auto& e = g.edges()[i];
    adj[e.u].push_back({e.v, static_cast<int>(i)});
    adj[e.v].push_back({e.u, static_cast<int>(i)});
  }
  // BFS tree rooted at 0
  std::vector<int> order{0}, parent(n, -1);
  std::vector<char> tree_edge(g.m(), 0), seen(n, 0);
  seen[0] = 1;
  for (std::size_t h = 0; h < order.size(); ++h) {
    for (auto [w, id] : adj[order[h]]) {
      if (seen[w]) continue;
      seen[w] = 1;
      parent[w] = order[h];
      tree_edge[id] = 1;
      order.push_back(w);
    }
  }
  std::vector<Edge> rest;
  for (std::size_t i = 0; i < g.edges().size(); ++i)
    if (!tree_edge[i]) rest.push_back(g.edges()[i]);

  CountingProblem P;
  P.name = "colorings-" + std::to_string(k);
  P.radices.assign(n, static_cast<std::uint64_t>(k - 1));
  P.radices[0] = k;
  P.verify = [order, parent, rest, k](const Certificate& c) {
    std::vector<int> col(order.size());
    col[order[0]] = static_cast<int>(c[0]);
    for (std::size_t i = 1; i < order.size(); ++i) {
      const int v = order[i];
      col[v] = (col[parent[v]] + 1 + static_cast<int>(c[i])) % k;
    }
    for (const auto& e : rest)
      if (col[e.u] == col[e.v]) return false;
    return true;
  };
  P.exact_oracle = [g, k] { return count_colorings(g, k); };
  return P;
}

HamProblems ham_problems(const Multigraph& g) {
  const int n = g.n();
  require(n >= 3, "Hamiltonian problems need n >= 3");
  require(!g.has_loops(), "Hamiltonian problems need a loopless graph");
  const auto mult = g.multiplicity();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) require(mult[i][j] <= 1, "Hamiltonian problems need a simple graph");
  HamProblems H;
  auto oracle = [g] { return count_hamiltonian_cycles(g); };

  H.m1.name = "ham-edges";
  H.m1.radices.assign(g.m(), 2);
  const auto edges = g.edges();
  H.m1.verify = [edges, n](const Certificate& c) {
    std::vector<int> deg(n, 0);
    UnionFind uf(n);
    int used = 0;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (!c[i]) continue;
      ++used;
      if (++deg[edges[i].u] > 2 || ++deg[edges[i].v] > 2) return false;
      uf.unite(edges[i].u, edges[i].v);
    }
    return used == n && uf.parts == 1;
  };
  H.m1.exact_oracle = oracle;

  // Lehmer code for the order of vertices 1..n-1 after vertex 0; a tail and its
  // reversal describe the same cycle, so the raw space covers each canonical ordering twice
  H.m2.name = "ham-orderings";
  for (int r = n - 1; r >= 1; --r) H.m2.radices.push_back(r);
  H.m2.multiplicity = 2;
  H.m2.verify = [mult, n](const Certificate& c) {
    std::vector<int> avail(n - 1);
    std::iota(avail.begin(), avail.end(), 1);
    std::vector<int> ord{0};
    for (int i = 0; i < n - 1; ++i) {
      ord.push_back(avail[c[i]]);
      avail.erase(avail.begin() + static_cast<long>(c[i]));
    }
    const auto p1 = std::find(ord.begin(), ord.end(), 1) - ord.begin();
    const auto pn = std::find(ord.begin(), ord.end(), n - 1) - ord.begin();
    if (p1 > pn) std::reverse(ord.begin() + 1, ord.end());
    for (int i = 0; i < n; ++i)
      if (!mult[ord[i]][ord[(i + 1) % n]]) return false;
    return true;
  };
  H.m2.exact_oracle = oracle;
  return H;
}

mpz_class count_stable_sets(const Multigraph& g) {
  const auto adj = adjacency_masks(g);
  std::uint64_t loops = 0;
  for (const auto& e : g.edges())
    if (e.is_loop()) loops |= std::uint64_t{1} << e.u;
  // branch on the lowest vertex: leave it out, or take it and drop its neighbours
  std::function<mpz_class(std::uint64_t)> rec = [&](std::uint64_t live) -> mpz_class {
    if (!live) return 1;
    const int v = std::countr_zero(live);
    const std::uint64_t bit = std::uint64_t{1} << v;
    if (!(adj[v] & live & ~bit)) return (loops & bit) ? rec(live & ~bit) : 2 * rec(live & ~bit);
    mpz_class r = rec(live & ~bit);
    if (!(loops & bit)) r += rec(live & ~bit & ~adj[v]);
    return r;
  };
  const std::uint64_t all = g.n() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << g.n()) - 1;
  return rec(all);
}

mpz_class count_hamiltonian_cycles(const Multigraph& g) {
  const int n = g.n();
  require(n >= 3 && n <= 20, "Hamiltonian cycle count supports 3 <= n <= 20");
  const auto mult = g.multiplicity();
  // paths from 0 over vertex sets, counted by endpoint
  const std::size_t full = std::size_t{1} << n;
  std::vector<std::vector<unsigned long long>> dp(full, std::vector<unsigned long long>(n, 0));
  dp[1][0] = 1;
  for (std::size_t s = 1; s < full; s += 2) {
    for (int v = 0; v < n; ++v) {
      if (!dp[s][v]) continue;
      for (int w = 1; w < n; ++w)
        if (!(s >> w & 1) && mult[v][w]) dp[s | (std::size_t{1} << w)][w] += dp[s][v];
    }
  }
  unsigned long long total = 0;
  for (int v = 1; v < n; ++v)
    if (mult[v][0]) total += dp[full - 1][v];
  return mpz_class(std::to_string(total / 2));
}

// ---- formulas

std::string Formula::to_dimacs() const {
  std::ostringstream os;
  os << "p " << (dnf ? "dnf" : "cnf") << ' ' << n << ' ' << clauses.size() << '\n';
  for (const auto& c : clauses) {
    for (int l : c) os << l << ' ';
    os << "0\n";
  }
  return os.str();
}

Formula parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  Formula f;
  long declared = -1;
  std::vector<int> cur;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok) || tok == "c") continue;
    if (tok == "%") break;
    if (tok == "p") {
      std::string kind;
      if (!(ls >> kind >> f.n >> declared) || (kind != "cnf" && kind != "dnf") || f.n < 0 || declared < 0)
        throw ParseError("bad DIMACS problem line: " + line);
      f.dnf = kind == "dnf";
      continue;
    }
    if (declared < 0) throw ParseError("DIMACS clause before the problem line");
    ls.clear();
    ls.str(line);
    long lit;
    while (ls >> lit) {
      if (lit == 0) {
        f.clauses.push_back(cur);
        cur.clear();
        continue;
      }
      if (std::labs(lit) > f.n) throw ParseError("literal " + std::to_string(lit) + " out of range");
      cur.push_back(static_cast<int>(lit));
    }
    if (!ls.eof()) throw ParseError("bad DIMACS clause line: " + line);
  }
  if (declared < 0) throw ParseError("missing DIMACS problem line");
  if (!cur.empty()) f.clauses.push_back(cur);
  if (static_cast<long>(f.clauses.size()) != declared)
    throw ParseError("DIMACS declares " + std::to_string(declared) + " clauses, found " +
                     std::to_string(f.clauses.size()));
  return f;
}

namespace {
std::vector<int> random_clause(int n, int width, std::uint64_t seed, std::uint64_t& ctr) {
  std::vector<int> vars(n);
  std::iota(vars.begin(), vars.end(), 1);
  std::vector<int> c;
  for (int i = 0; i < width; ++i) {
    const auto j = i + uniform_below(seed, ctr++, n - i);
    std::swap(vars[i], vars[j]);
    c.push_back(uniform_below(seed, ctr++, 2) ? vars[i] : -vars[i]);
  }
  return c;
}
}  // namespace

Formula random_kcnf(int n, int clauses, int k, std::uint64_t seed) {
  require(k >= 1 && k <= n, "clause width must lie in [1, n]");
  Formula f;
  f.n = n;
  std::uint64_t ctr = 0;
  for (int i = 0; i < clauses; ++i) f.clauses.push_back(random_clause(n, k, seed, ctr));
  return f;
}

Formula random_dnf(int n, int terms, int max_width, std::uint64_t seed) {
  require(max_width >= 1 && max_width <= n, "term width must lie in [1, n]");
  Formula f;
  f.dnf = true;
  f.n = n;
  std::uint64_t ctr = 0;
  for (int i = 0; i < terms; ++i) {
    const int w = 1 + static_cast<int>(uniform_below(seed, ctr++, max_width));
    f.clauses.push_back(random_clause(n, w, seed, ctr));
  }
  return f;
}

bool satisfies(const Formula& f, std::uint64_t a) {
  auto lit_true = [a](int l) { return l > 0 ? (a >> (l - 1) & 1) : !(a >> (-l - 1) & 1); };
  for (const auto& c : f.clauses) {
    const bool hit = f.dnf ? std::all_of(c.begin(), c.end(), lit_true) : std::any_of(c.begin(), c.end(), lit_true);
    if (f.dnf && hit) return true;
    if (!f.dnf && !hit) return false;
  }
  return !f.dnf;
}

mpz_class count_models(const Formula& f) {
  require(f.n <= 24, "model counting by enumeration needs n <= 24");
  unsigned long c = 0;
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << f.n); ++a) c += satisfies(f, a);
  return c;
}

CountingProblem formula_problem(const Formula& f) {
  require(f.n <= 64, "formula problems support n <= 64");
  CountingProblem P;
  P.name = f.dnf ? "dnf" : "sat";
  P.radices.assign(f.n, 2);
  P.verify = [f](const Certificate& c) {
    std::uint64_t a = 0;
    for (std::size_t i = 0; i < c.size(); ++i) a |= c[i] << i;
    return satisfies(f, a);
  };
  if (f.n <= 24) P.exact_oracle = [f] { return count_models(f); };
  return P;
}

FprasRun dnf_fpras(const Formula& f, double epsilon, double delta, std::uint64_t seed) {
  require(f.dnf, "dnf_fpras needs a DNF formula");
  require(f.n <= 60, "dnf_fpras supports at most 60 variables");
  require(f.clauses.size() <= 10000, "dnf_fpras supports at most 10^4 terms");
  require(epsilon > 0 && delta > 0 && delta < 1, "bad epsilon or delta");
  // per term: forced-true mask, forced-false mask, weight 2^{n-|T|} (0 if contradictory)
  struct Term {
    std::uint64_t pos = 0, neg = 0;
    double w = 0;
  };
  std::vector<Term> terms;
  std::vector<double> prefix;
  double W = 0;
  for (const auto& c : f.clauses) {
    Term t;
    for (int l : c) (l > 0 ? t.pos : t.neg) |= std::uint64_t{1} << (std::abs(l) - 1);
    if (!(t.pos & t.neg)) t.w = std::ldexp(1.0, f.n - std::popcount(t.pos | t.neg));
    terms.push_back(t);
    W += t.w;
    prefix.push_back(W);
  }
  FprasRun run;
  if (W == 0) return run;
  run.samples = static_cast<long>(
      std::ceil(3.0 * static_cast<double>(terms.size()) * std::log(2.0 / delta) / (epsilon * epsilon) - 1e-9));
  const std::uint64_t mask = f.n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << f.n) - 1;
  long hits = 0;
  for (long j = 0; j < run.samples; ++j) {
    const double x = uniform01(seed, 2 * j) * W;
    auto i = static_cast<std::size_t>(std::upper_bound(prefix.begin(), prefix.end(), x) - prefix.begin());
    i = std::min(i, terms.size() - 1);
    while (terms[i].w == 0) --i;  // only reachable through rounding at the top end
    const std::uint64_t a = ((bits64(seed, 2 * j + 1) & mask) | terms[i].pos) & ~terms[i].neg;
    // count the sample only for the first term it satisfies
    std::size_t first = 0;
    while ((a & terms[first].pos) != terms[first].pos || (a & terms[first].neg) || terms[first].w == 0) ++first;
    hits += first == i;
  }
  run.estimate = W * (static_cast<double>(hits) / static_cast<double>(run.samples));
  return run;
}

// ---- procedures

AAResult AAProcedure::operator()(const AAConfig& cfg) const {
  cfg.validate();
  return run(cfg.epsilon, cfg.delta, cfg.seed);
}

AAProcedure as_procedure(const CountingProblem& P) {
  AAProcedure a;
  a.name = P.name;
  a.u = P.u();
  a.bounded = true;
  a.run = [P](double eps, double delta, std::uint64_t seed) { return aa_estimate(P, AAConfig{eps, delta, seed}); };
  return a;
}

AAProcedure aa_neg(const AAProcedure& f) {
  AAProcedure a = f;
  a.name = "neg(" + f.name + ")";
  a.run = [f](double eps, double delta, std::uint64_t seed) {
    AAResult r = f.run(eps, delta, seed);
    r.estimate = -r.estimate;
    return r;
  };
  return a;
}

namespace {
AAProcedure add_like(const AAProcedure& f, const AAProcedure& g, double sign, const std::string& what) {
  AAProcedure a;
  a.name = what + "(" + f.name + ", " + g.name + ")";
  a.u = f.u + g.u;
  a.bounded = f.bounded && g.bounded;
  // both operands get the same seed; the union bound does not need independence
  a.run = [f, g, sign, what, u = a.u](double eps, double delta, std::uint64_t seed) {
    const AAResult x = f.run(eps / 2, delta / 2, seed);
    const AAResult y = g.run(eps / 2, delta / 2, seed);
    return composite(what, x.estimate + sign * y.estimate, u, eps, delta, seed, x, y);
  };
  return a;
}
}  // namespace

AAProcedure aa_add(const AAProcedure& f, const AAProcedure& g) { return add_like(f, g, 1, "add"); }
AAProcedure aa_sub(const AAProcedure& f, const AAProcedure& g) { return add_like(f, g, -1, "sub"); }

AAProcedure aa_mul(const AAProcedure& f, const AAProcedure& g) {
  require(f.bounded && g.bounded, "aa_mul needs both operands declared bounded by their normalization");
  AAProcedure a;
  a.name = "mul(" + f.name + ", " + g.name + ")";
  a.u = f.u * g.u;
  a.bounded = true;
  a.run = [f, g, u = a.u](double eps, double delta, std::uint64_t seed) {
    const AAResult x = f.run(eps / 3, delta / 2, seed);
    const AAResult y = g.run(eps / 3, delta / 2, seed);
    return composite("mul", x.estimate * y.estimate, u, eps, delta, seed, x, y);
  };
  return a;
}

AAProcedure fpras_to_aa(const std::string& name, Fpras fpras, double u) {
  require(u >= 0, "normalization must be non-negative");
  AAProcedure a;
  a.name = name;
  a.u = u;
  a.bounded = true;
  a.run = [fpras, u](double eps, double delta, std::uint64_t seed) {
    AAResult r;
    r.estimate = fpras(eps, delta, seed);
    r.u = u;
    r.epsilon = eps;
    r.delta = delta;
    r.seed = seed;
    r.notes.push_back("relative-error scheme run at eps; error eps*f <= eps*u");
    return r;
  };
  return a;
}

AAProcedure dnf_procedure(const Formula& f) {
  require(f.dnf, "dnf_procedure needs a DNF formula");
  AAProcedure a;
  a.name = "dnf";
  a.u = std::ldexp(1.0, f.n);
  a.bounded = true;
  a.run = [f, u = a.u](double eps, double delta, std::uint64_t seed) {
    const FprasRun k = dnf_fpras(f, eps, delta, seed);
    AAResult r;
    r.estimate = k.estimate;
    r.u = u;
    r.epsilon = eps;
    r.delta = delta;
    r.seed = seed;
    r.samples_used = k.samples;
    r.notes.push_back("Karp-Luby coverage sampler with u = 2^n");
    return r;
  };
  return a;
}

AAResult gap_estimate(const GapProblem& gp, const AAConfig& cfg) {
  require(gp.g.radices == gp.h.radices && gp.g.multiplicity == gp.h.multiplicity,
          "gap problems must share the certificate space");
  cfg.validate();
  // sub has normalization 2u; half the error budget brings it back to eps*u
  AAResult r = aa_sub(as_procedure(gp.g), as_procedure(gp.h)).run(cfg.epsilon / 2, cfg.delta, cfg.seed);
  r.u = gp.g.u();
  r.epsilon = cfg.epsilon;
  return r;
}

Formula negate_cnf(const Formula& f) {
  require(!f.dnf, "negate_cnf needs a CNF formula");
  Formula d;
  d.dnf = true;
  d.n = f.n;
  for (const auto& c : f.clauses) {
    std::vector<int> t;
    for (int l : c) t.push_back(-l);
    d.clauses.push_back(t);
  }
  return d;
}

SatIdentity sat_via_dnf(const Formula& f, const AAConfig& cfg) {
  cfg.validate();
  SatIdentity s;
  s.n = f.n;
  const Formula d = negate_cnf(f);
  if (f.n <= 20) {
    s.sat = count_models(f);
    s.dnf_complement = count_models(d);
    s.identity_holds = *s.sat == pow2(f.n) - *s.dnf_complement;
  }
  const double full = std::ldexp(1.0, f.n);
  const AAProcedure all = fpras_to_aa("2^n", [full](double, double, std::uint64_t) { return full; }, full);
  s.estimate = aa_sub(all, dnf_procedure(d)).run(cfg.epsilon / 2, cfg.delta, cfg.seed);
  s.estimate.u = full;
  s.estimate.epsilon = cfg.epsilon;
  return s;
}

nlohmann::json SatIdentity::to_json() const {
  nlohmann::json j{{"n", n}, {"estimate", estimate.to_json()}};
  if (sat) {
    j["sat"] = sat->get_str();
    j["dnf_complement"] = dnf_complement->get_str();
    j["identity_holds"] = identity_holds;
  }
  return j;
}

// ---- quartiles

int quartile_bucket(const mpq_class& fraction, int r) {
  require(r >= 2, "r must be at least 2");
  mpq_class t = fraction * r;
  mpz_class k;
  mpz_cdiv_q(k.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
  return static_cast<int>(std::clamp<long>(k.get_si(), 1, r));
}

QuartileResult quartile_decide(const CountingProblem& P, int r, const AAConfig& cfg) {
  require(r >= 2, "r must be at least 2");
  QuartileResult q;
  q.epsilon = 1.0 / (4.0 * r);
  AAConfig c = cfg;
  c.epsilon = q.epsilon;
  q.aa = aa_estimate(P, c);
  q.normalized = q.aa.estimate / q.aa.u;
  // the outer boundaries 0 and 1 cannot be crossed, only interior ones are uncertain
  for (int j = 1; j < r; ++j)
    if (std::abs(q.normalized - static_cast<double>(j) / r) < q.epsilon) return q;
  q.k = static_cast<int>(std::clamp<double>(std::ceil(q.normalized * r), 1, r));
  return q;
}

nlohmann::json QuartileResult::to_json() const {
  return {{"k", k ? nlohmann::json(*k) : nlohmann::json("boundary_uncertain")},
          {"normalized", decimal(normalized)},
          {"epsilon", decimal(epsilon)},
          {"aa", aa.to_json()}};
}

SsQuartile ss_quartile_exact(const Multigraph& g, int r) {
  require(r >= 2, "r must be at least 2");
  const int n = g.n();
  SsQuartile res;
  std::vector<char> matched(n, 0);
  std::uint64_t cover = 0;
  for (const auto& e : g.sorted_edges()) {
    if (!e.is_loop() && !matched[e.u] && !matched[e.v]) {
      matched[e.u] = matched[e.v] = 1;
      ++res.matching;
    }
  }
  // count ≤ 2^n (3/4)^s < 2^n / r  ⇔  r·3^s < 4^s
  mpz_class three, four;
  mpz_ui_pow_ui(three.get_mpz_t(), 3, res.matching);
  mpz_ui_pow_ui(four.get_mpz_t(), 4, res.matching);
  if (three * r < four) {
    res.k = 1;
    res.matching_shortcut = true;
    return res;
  }
  const auto adj = adjacency_masks(g);
  std::uint64_t loops = 0;
  for (const auto& e : g.edges())
    if (e.is_loop()) loops |= std::uint64_t{1} << e.u;
  std::vector<int> C;
  for (int v = 0; v < n; ++v) {
    if (matched[v] || (loops >> v & 1)) {
      C.push_back(v);
      cover |= std::uint64_t{1} << v;
    }
  }
  const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  const std::uint64_t outside = all & ~cover;
  mpz_class count = 0;
  // independent S ⊆ C; every outside vertex not adjacent to S is free
  std::function<void(std::size_t, std::uint64_t, std::uint64_t)> rec = [&](std::size_t i, std::uint64_t S,
                                                                           std::uint64_t nbrs) {
    if (i == C.size()) {
      count += pow2(std::popcount(outside & ~nbrs));
      return;
    }
    rec(i + 1, S, nbrs);
    const int v = C[i];
    const std::uint64_t bit = std::uint64_t{1} << v;
    if (!(loops & bit) && !(nbrs & bit)) rec(i + 1, S | bit, nbrs | adj[v]);
  };
  rec(0, 0, 0);
  res.count = count;
  res.k = quartile_bucket(mpq_class(count, pow2(n)), r);
  return res;
}

int ss_quartile_brute(const Multigraph& g, int r) {
  require(g.n() <= 24, "brute-force stable sets need n <= 24");
  const auto adj = adjacency_masks(g);
  unsigned long count = 0;
  for (std::uint64_t S = 0; S < (std::uint64_t{1} << g.n()); ++S) {
    bool ok = true;
    for (std::uint64_t t = S; t && ok; t &= t - 1) ok = !(adj[std::countr_zero(t)] & S);
    count += ok;
  }
  return quartile_bucket(mpq_class(mpz_class(count), pow2(g.n())), r);
}

nlohmann::json SsQuartile::to_json() const {
  nlohmann::json j{{"k", k}, {"matching", matching}, {"matching_shortcut", matching_shortcut}};
  if (count) j["count"] = count->get_str();
  return j;
}

// ---- random-cluster samplers

int rc_region(const Rat& x, const Rat& y) {
  if (x == Rat(1) && y > Rat(1)) return 1;
  if (x > Rat(1) && y == Rat(1)) return 2;
  if (x > Rat(1) && y > Rat(1)) return 3;
  throw PreconditionError("point (" + x.str() + ", " + y.str() +
                          ") lies outside the sampler regions {x=1,y>1}, {x>1,y=1}, {x>1,y>1}");
}

RcResult rc_sampler(const Multigraph& g, const Rat& x, const Rat& y, const AAConfig& cfg) {
  cfg.validate();
  require(g.n() >= 1 && is_connected(g), "rc_sampler needs a connected graph");
  RcResult res;
  res.region = rc_region(x, y);
  const int n = g.n(), m = g.m();
  const double xd = x.to_double(), yd = y.to_double();
  double p = 0;
  switch (res.region) {
    case 1:
      p = (yd - 1) / yd;
      res.stated_u = res.audited_u = std::pow(yd, m) * std::pow(yd - 1, 1 - n);
      break;
    case 2:
      // inclusion 1/x makes every forest weigh the same; (y−1)/y would never leave the empty set
      p = 1 / xd;
      res.stated_u = res.audited_u = std::pow(xd, m) * std::pow(xd - 1, n - m - 1);
      break;
    default: {
      p = (yd - 1) / yd;
      res.stated_u = std::pow(yd, m) * std::pow(xd - 1, n - 1);
      const double q = (xd - 1) * (yd - 1);
      res.audited_u = std::pow(yd, m) * std::pow(yd - 1, 1 - n) * std::max(1.0, std::pow(q, n - 1));
    }
  }
  auto term = [&](int kappa, bool forest) -> double {
    if (res.region == 2) return forest ? res.stated_u : 0.0;
    const double t = std::pow(yd, m) * std::pow(yd - 1, kappa - n);
    return res.region == 1 ? (kappa == 1 ? t : 0.0) : t * std::pow(xd - 1, kappa - 1);
  };

  AAResult& aa = res.aa;
  aa.u = res.audited_u;
  aa.epsilon = cfg.epsilon;
  aa.delta = cfg.delta;
  aa.seed = cfg.seed;
  aa.batch_size = batch_size(cfg.epsilon);
  aa.batches = batch_count(cfg.delta);
  std::vector<double> means(aa.batches);
  for (long b = 0; b < aa.batches; ++b) {
    const std::uint64_t s = batch_seed(cfg.seed, b);
    double sum = 0;
    for (long j = 0; j < aa.batch_size; ++j) {
      UnionFind uf(n);
      bool forest = true;
      for (int e = 0; e < m; ++e) {
        if (uniform01(s, static_cast<std::uint64_t>(j) * m + e) >= p) continue;
        if (!uf.unite(g.edges()[e].u, g.edges()[e].v)) forest = false;
      }
      const double t = term(uf.parts, forest);
      res.max_term = std::max(res.max_term, std::abs(t));
      sum += t;
    }
    means[b] = sum / static_cast<double>(aa.batch_size);
  }
  aa.samples_used = aa.batch_size * aa.batches;
  aa.estimate = median(means);
  res.audit_ok = res.max_term <= res.stated_u * (1 + 1e-12);
  if (res.audited_u > res.stated_u * (1 + 1e-12))
    aa.notes.push_back("stated normalization " + decimal(res.stated_u) + " is not a term bound here; using " +
                       decimal(res.audited_u));
  return res;
}

nlohmann::json RcResult::to_json() const {
  return {{"region", region},
          {"stated_u", decimal(stated_u)},
          {"audited_u", decimal(audited_u)},
          {"max_term", decimal(max_term)},
          {"audit_ok", audit_ok},
          {"aa", aa.to_json()}};
}

// ---- gadgets

mpz_class round_from_path_estimate(double estimate, int k, int ell) {
  require(k >= 2 && ell >= 0, "bad gadget parameters");
  const double scale = std::pow(static_cast<double>(k - 1), ell);
  return mpz_class(std::to_string(std::llround(estimate / scale)));
}

bool GadgetReport::all_ok() const {
  return std::all_of(rows.begin(), rows.end(),
                     [](const GadgetRow& r) { return r.isolated_ok && r.path_ok && r.rounding_ok && r.gap_ok; });
}

nlohmann::json GadgetReport::to_json() const {
  nlohmann::json rs = nlohmann::json::array();
  for (const auto& r : rows) {
    rs.push_back({{"graph", r.name},
                  {"n", r.n},
                  {"P_G(5)", r.p5.get_str()},
                  {"P_G+(5)", r.p5_plus.get_str()},
                  {"log_gap", decimal(r.log_gap)},
                  {"k", r.k},
                  {"ell", r.ell},
                  {"P_G(k)", r.p_k.get_str()},
                  {"P_H(k)", r.p_h.get_str()},
                  {"isolated_ok", r.isolated_ok},
                  {"path_ok", r.path_ok},
                  {"rounding_ok", r.rounding_ok},
                  {"gap_ok", r.gap_ok}});
  }
  return {{"rows", rs}, {"all_ok", all_ok()}};
}

GadgetReport gadget_experiments(std::vector<std::pair<std::string, Multigraph>> graphs) {
  if (graphs.empty()) {
    graphs = {{"K3", complete(3)},      {"K4", complete(4)},   {"K5", complete(5)},
              {"K6", complete(6)},      {"K7", complete(7)},   {"C5", cycle(5)},
              {"C7", cycle(7)},         {"W5", wheel(5)},      {"W6", wheel(6)},
              {"P6", path(6)},          {"apollonian9", apollonian(9, 3)},
              {"K6+path", attach_path(complete(6), 0, 3)}};
    for (std::uint64_t s = 1; s <= 6; ++s) graphs.push_back({"gnp10-" + std::to_string(s), gnp(10, 0.6, s)});
  }
  auto chrom = [](const Multigraph& g, int k) {
    const Rat v = chromatic(g, Rat(k));
    require(v.is_integer(), "chromatic value at an integer is an integer");
    return v.num();
  };
  GadgetReport rep;
  for (const auto& [name, g] : graphs) {
    require(g.n() <= 10, "gadget test graphs need n <= 10");
    GadgetRow row;
    row.name = name;
    row.n = g.n();
    row.p5 = chrom(g, 5);
    row.p5_plus = chrom(add_isolated(g, g.n()), 5);
    mpz_class five;
    mpz_ui_pow_ui(five.get_mpz_t(), 5, g.n());
    row.isolated_ok = row.p5_plus == five * row.p5;
    row.log_gap = std::log2(mpz_class(row.p5_plus + 1).get_d());
    row.gap_ok = row.p5 == 0 ? row.log_gap == 0 : row.log_gap > 2.0 * g.n();

    row.k = 3;
    row.ell = 2 * g.n();
    row.p_k = chrom(g, row.k);
    row.p_h = chrom(attach_path(g, 0, row.ell), row.k);
    row.path_ok = row.p_h == row.p_k * pow2(row.ell);
    const double scale = std::ldexp(1.0, row.ell);
    row.rounding_ok = true;
    for (double off : {-0.49, -0.25, 0.0, 0.25, 0.49})
      row.rounding_ok = row.rounding_ok && round_from_path_estimate(row.p_h.get_d() + off * scale, row.k, row.ell) == row.p_k;
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace tuttebraid
