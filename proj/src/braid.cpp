#include "tuttebraid/braid.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "tuttebraid/tutte.hpp"

namespace tuttebraid {

// ---- words

void BraidWord::validate() const {
  require(m >= 2 && m % 2 == 0, "braid strand count must be even and at least 2, got " + std::to_string(m));
  for (const auto& c : word) {
    require(c.i >= 1 && c.i <= m - 1, "generator s" + std::to_string(c.i) + " out of range for m=" + std::to_string(m));
    require(c.sign == 1 || c.sign == -1, "generator exponent must be +1 or -1");
  }
}

BraidWord BraidWord::inverse() const {
  BraidWord out{m, {}};
  for (auto it = word.rbegin(); it != word.rend(); ++it) out.word.push_back({it->i, -it->sign});
  return out;
}

BraidWord BraidWord::shifted(int k, int new_m) const {
  BraidWord out{new_m, {}};
  for (const auto& c : word) out.word.push_back({c.i + k, c.sign});
  return out;
}

BraidWord BraidWord::operator*(const BraidWord& o) const {
  require(m == o.m, "cannot compose braids on different strand counts");
  BraidWord out = *this;
  out.word.insert(out.word.end(), o.word.begin(), o.word.end());
  return out;
}

std::string BraidWord::str() const {
  std::string s = "m=" + std::to_string(m);
  for (const auto& c : word) s += " s" + std::to_string(c.i) + (c.sign < 0 ? "^-1" : "");
  return s;
}

BraidWord BraidWord::parse(const std::string& text) {
  std::istringstream in(text);
  std::string tok;
  BraidWord b{0, {}};
  bool have_m = false;
  while (in >> tok) {
    if (tok.rfind("m=", 0) == 0) {
      if (have_m) throw ParseError("duplicate strand-count header");
      try {
        std::size_t used = 0;
        b.m = std::stoi(tok.substr(2), &used);
        if (used != tok.size() - 2) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw ParseError("bad strand-count header '" + tok + "'");
      }
      have_m = true;
      continue;
    }
    if (tok.size() < 2 || tok[0] != 's') throw ParseError("bad braid token '" + tok + "'");
    int sign = 1;
    std::string body = tok.substr(1);
    const auto caret = body.find('^');
    if (caret != std::string::npos) {
      const std::string ex = body.substr(caret + 1);
      if (ex == "-1") sign = -1;
      else if (ex != "1") throw ParseError("only exponents 1 and -1 are allowed: '" + tok + "'");
      body = body.substr(0, caret);
    }
    if (body.empty() || body.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("bad generator index in '" + tok + "'");
    b.word.push_back({std::stoi(body), sign});
  }
  if (!have_m) throw ParseError("braid text needs an 'm=<strands>' header");
  b.validate();
  return b;
}

nlohmann::json BraidWord::to_json() const {
  nlohmann::json w = nlohmann::json::array();
  for (const auto& c : word) w.push_back({c.i, c.sign});
  return {{"m", m}, {"word", w}};
}

BraidWord BraidWord::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("m") || !j.at("m").is_number_integer())
    throw ParseError("braid JSON needs an integer field \"m\"");
  BraidWord b{j.at("m").get<int>(), {}};
  if (j.contains("word")) {
    for (const auto& c : j.at("word")) {
      if (!c.is_array() || c.size() != 2 || !c[0].is_number_integer() || !c[1].is_number_integer())
        throw ParseError("braid letters must be [i, sign] pairs, got " + c.dump());
      b.word.push_back({c[0].get<int>(), c[1].get<int>()});
    }
  }
  b.validate();
  return b;
}

BraidWord random_braid(int m, int length, std::uint64_t seed) {
  BraidWord b{m, {}};
  for (int k = 0; k < length; ++k) {
    const auto r = uniform_below(seed, static_cast<std::uint64_t>(k), 2 * static_cast<std::uint64_t>(m - 1));
    b.word.push_back({static_cast<int>(r / 2) + 1, r % 2 ? -1 : 1});
  }
  b.validate();
  return b;
}

// ---- matchings

long tl_dim(int m) {
  require(m >= 0 && m % 2 == 0, "tl_dim: m must be even");
  long c = 1;
  const int k = m / 2;
  for (int i = 0; i < k; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
  return c;
}

Matching cup_state(int m) {
  require(m >= 2 && m % 2 == 0, "cup_state: m must be even");
  Matching p(m);
  for (int j = 0; j < m; j += 2) {
    p[j] = j + 1;
    p[j + 1] = j;
  }
  return p;
}

std::vector<Matching> matchings(int m) {
  require(m >= 0 && m % 2 == 0, "matchings: m must be even");
  std::vector<Matching> out;
  Matching p(m, -1);
  // pair the first free point with a later point leaving an even gap
  std::function<void()> rec = [&]() {
    int j = 0;
    while (j < m && p[j] >= 0) ++j;
    if (j == m) {
      out.push_back(p);
      return;
    }
    for (int k = j + 1; k < m; k += 2) {
      if (p[k] >= 0) break;
      bool inner_free = true;
      for (int t = j + 1; t < k; ++t)
        if (p[t] >= 0) inner_free = false;
      if (!inner_free) continue;
      p[j] = k;
      p[k] = j;
      rec();
      p[j] = p[k] = -1;
    }
  };
  rec();
  return out;
}

bool is_noncrossing(const Matching& p) {
  const int m = static_cast<int>(p.size());
  for (int i = 0; i < m; ++i) {
    if (p[i] < 0 || p[i] >= m || p[p[i]] != i || p[i] == i) return false;
    for (int j = 0; j < m; ++j) {
      const int a = std::min(i, p[i]), b = std::max(i, p[i]);
      const int c = std::min(j, p[j]), d = std::max(j, p[j]);
      if (a < c && c < b && b < d) return false;
    }
  }
  return true;
}

int loops_between(const Matching& p, const Matching& q) {
  const int m = static_cast<int>(p.size());
  std::vector<char> seen(m, 0);
  int loops = 0;
  for (int s = 0; s < m; ++s) {
    if (seen[s]) continue;
    ++loops;
    int x = s;
    do {
      seen[x] = 1;
      const int y = p[x];
      seen[y] = 1;
      x = q[y];
    } while (x != s);
  }
  return loops;
}

TLParams<LaurentA> formal_params() { return {LaurentA::monomial(1), LaurentA::monomial(-1), LaurentA::loop_value()}; }

TLParams<Cyc20> unitary_params() { return {Cyc20::zeta_pow(4), Cyc20::zeta_pow(-4), Cyc20(Golden::tau())}; }

TLParams<CDouble> unitary_params_float() {
  const auto p = unitary_params();
  return {p.A.embed(), p.A_inv.embed(), p.loop.embed()};
}

TLParams<Cyc20> bracket_params() { return {Cyc20::zeta_pow(-1), Cyc20::zeta_pow(1), Cyc20(-Golden::tau())}; }

// ---- plat closures

nlohmann::json AmplitudeResult::to_json() const {
  nlohmann::json j = {{"exact", exact},
                      {"amplitude_approx", {{"re", amplitude_f.real()}, {"im", amplitude_f.imag()}}},
                      {"absV", absV},
                      {"prob0", prob0}};
  if (exact) j["amplitude"] = tuttebraid::to_json(amplitude);
  return j;
}

namespace {

void check_braid_caps(const BraidWord& b, const AmplitudeCaps& caps) {
  b.validate();
  if (static_cast<int>(b.word.size()) > caps.max_crossings)
    throw CapExceeded("braid has " + std::to_string(b.word.size()) + " crossings; the cap is " +
                      std::to_string(caps.max_crossings));
  if (b.m > caps.max_strands)
    throw CapExceeded("braid has " + std::to_string(b.m) + " strands; the cap is " + std::to_string(caps.max_strands));
}

// d^{k} for any integer k, exact
Cyc20 d_pow(int k) { return Cyc20(pow(Golden::tau(), static_cast<long>(k))); }

}  // namespace

AmplitudeResult plat_amplitude(const BraidWord& b, const AmplitudeCaps& caps) {
  check_braid_caps(b, caps);
  AmplitudeResult r;
  const Matching c = cup_state(b.m);
  const double dm = std::pow(golden_constants().tau.to_double(), b.m / 2.0);
  if (static_cast<int>(b.word.size()) <= caps.exact_crossings) {
    const auto v = apply_word(TLVector<Cyc20>{{c, Cyc20(1)}}, b, unitary_params());
    Cyc20 amp(0);
    for (const auto& [p, coeff] : v) amp += coeff * d_pow(loops_between(c, p) - b.m / 2);
    r.exact = true;
    r.amplitude = amp;
    r.amplitude_f = amp.embed();
    r.prob0 = (amp * amp.conj()).embed().real();
  } else {
    const auto v = apply_word(TLVector<CDouble>{{c, CDouble(1)}}, b, unitary_params_float());
    const double d = golden_constants().tau.to_double();
    CDouble amp = 0;
    for (const auto& [p, coeff] : v) amp += coeff * std::pow(d, loops_between(c, p) - b.m / 2);
    r.exact = false;
    r.amplitude_f = amp;
    r.prob0 = std::norm(amp);
  }
  r.absV = std::sqrt(r.prob0) * dm;
  return r;
}

LaurentA bracket_state_sum(const BraidWord& b, int max_crossings) {
  b.validate();
  const int n = static_cast<int>(b.word.size());
  if (n > max_crossings)
    throw CapExceeded("state sum over " + std::to_string(n) + " crossings exceeds the cap of " +
                      std::to_string(max_crossings));
  const int m = b.m;
  const int pts = (n + 1) * m;
  auto idx = [m](int level, int j) { return level * m + j; };
  // tally (A-exponent, loops) over all states, then expand once
  std::map<std::pair<int, int>, long> tally;
  std::vector<int> parent(pts);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::uint64_t state = 0; state < (1ULL << n); ++state) {
    std::iota(parent.begin(), parent.end(), 0);
    int comps = pts;
    auto join = [&](int a, int c) {
      a = find(a);
      c = find(c);
      if (a != c) {
        parent[a] = c;
        --comps;
      }
    };
    int e = 0;
    for (int l = 0; l < n; ++l) {
      const int i = b.word[l].i - 1, s = b.word[l].sign;
      for (int j = 0; j < m; ++j)
        if (j != i && j != i + 1) join(idx(l, j), idx(l + 1, j));
      if (((state >> l) & 1) == 0) {
        join(idx(l, i), idx(l + 1, i));
        join(idx(l, i + 1), idx(l + 1, i + 1));
        e += s;
      } else {
        join(idx(l, i), idx(l, i + 1));
        join(idx(l + 1, i), idx(l + 1, i + 1));
        e -= s;
      }
    }
    for (int j = 0; j < m; j += 2) {
      join(idx(0, j), idx(0, j + 1));
      join(idx(n, j), idx(n, j + 1));
    }
    ++tally[{e, comps}];
  }
  const LaurentA delta = LaurentA::loop_value();
  LaurentA total;
  for (const auto& [key, count] : tally)
    total += LaurentA::monomial(key.first, count) * pow(delta, static_cast<unsigned>(key.second - 1));
  return total;
}

LaurentA bracket_from_tl(const BraidWord& b) {
  b.validate();
  const Matching c = cup_state(b.m);
  const auto v = apply_word(TLVector<LaurentA>{{c, LaurentA(1)}}, b, formal_params());
  const LaurentA delta = LaurentA::loop_value();
  LaurentA total;
  for (const auto& [p, coeff] : v) total += coeff * pow(delta, static_cast<unsigned>(loops_between(c, p) - 1));
  return total;
}

LinkInvariants link_invariants(const BraidWord& b, const std::set<int>& reversed) {
  b.validate();
  const int m = b.m;
  // perm[pos] = strand currently at pos; strands are named by their bottom position
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  struct Event {
    int left, right, sign;
  };
  std::vector<Event> events;
  for (const auto& x : b.word) {
    const int i = x.i - 1;
    events.push_back({perm[i], perm[i + 1], x.sign});
    std::swap(perm[i], perm[i + 1]);
  }
  std::vector<int> top_of(m);
  for (int p = 0; p < m; ++p) top_of[perm[p]] = p;
  std::vector<int> dir(m, 0), comp(m, -1);
  int c = 0;
  for (int start = 0; start < m; ++start) {
    if (dir[start]) continue;
    int st = start, d = 1;
    while (true) {
      dir[st] = d;
      comp[st] = c;
      if (d == 1) {
        st = perm[top_of[st] ^ 1];  // over the cap, back down
        d = -1;
      } else {
        st ^= 1;  // around the cup, back up
        d = 1;
      }
      if (st == start && d == 1) break;
    }
    ++c;
  }
  for (int s = 0; s < m; ++s)
    if (reversed.count(comp[s])) dir[s] = -dir[s];
  int w = 0;
  for (const auto& e : events) w += e.sign * dir[e.left] * dir[e.right];
  return {c, w, m / 2};
}

namespace {

Cyc20 bracket_at_zeta_inv(const BraidWord& b) {
  const Matching c = cup_state(b.m);
  const auto prm = bracket_params();
  const auto v = apply_word(TLVector<Cyc20>{{c, Cyc20(1)}}, b, prm);
  Cyc20 total(0);
  for (const auto& [p, coeff] : v) total += coeff * pow(prm.loop, loops_between(c, p) - 1);
  return total;
}

}  // namespace

Cyc20 jones_value(const BraidWord& b, const LinkInvariants& inv) {
  // (−A³)^{−w} = (−1)^w ζ^{3w} at A = ζ⁻¹
  Cyc20 phase = Cyc20::zeta_pow(3L * inv.w);
  if (inv.w % 2) phase = -phase;
  return bracket_params().loop * phase * bracket_at_zeta_inv(b);
}

Cyc20 jones_value(const BraidWord& b) { return jones_value(b, link_invariants(b)); }

// ---- FKLW

BraidWord build_fklw_link(const BraidWord& b) {
  b.validate();
  const int M = b.m + 2;
  BraidWord clasp{M, {{2, 1}, {3, 1}, {3, 1}, {2, 1}}};
  return b.shifted(2, M) * clasp * b.inverse().shifted(2, M);
}

Cyc20 fklw_phase_value(const Cyc20& V, const LinkInvariants& inv) {
  // (−1)^{c+w}(−A)^{3w} = (−1)^c ζ^{−3w} at A = ζ⁻¹
  Cyc20 x = Cyc20::zeta_pow(-3L * inv.w) * V;
  return inv.c % 2 ? -x : x;
}

double fklw_probability(const Cyc20& V, const LinkInvariants& inv) {
  const double d = golden_constants().tau.to_double();
  const double re = real_part(fklw_phase_value(V, inv)).to_double();
  return (1.0 + re / std::pow(d, inv.mL - 2)) / (1.0 + d * d);
}

double qubit_zero_probability(const BraidWord& b) {
  b.validate();
  const int m = b.m;
  const Cyc20 d(Golden::tau());
  const auto psi = apply_word(TLVector<Cyc20>{{cup_state(m), Cyc20(1)}}, b, unitary_params());
  const auto e = apply_e(psi, 1, d);
  Cyc20 ip(0);
  for (const auto& [p, cp] : psi)
    for (const auto& [q, cq] : e) ip += cp.conj() * cq * d_pow(loops_between(p, q) - m / 2);
  return (ip * d.inverse()).embed().real();
}

nlohmann::json FklwResult::to_json() const {
  return {{"link", link.to_json()},
          {"invariants", inv.to_json()},
          {"V", tuttebraid::to_json(V)},
          {"V_approx", {{"re", V.embed().real()}, {"im", V.embed().imag()}}},
          {"X_real", real_part(X).to_double()},
          {"probability", probability},
          {"physical_probability", physical},
          {"in_range", in_range}};
}

FklwResult fklw_evaluate(const BraidWord& b) {
  FklwResult r;
  r.link = build_fklw_link(b);
  r.inv = link_invariants(r.link);
  r.V = jones_value(r.link, r.inv);
  r.X = fklw_phase_value(r.V, r.inv);
  r.probability = fklw_probability(r.V, r.inv);
  r.physical = qubit_zero_probability(b);
  r.in_range = r.probability >= -1e-9 && r.probability <= 1 + 1e-9;
  return r;
}

// ---- sampling

Outcomes sample_bernoulli(double p, long shots, std::uint64_t seed) {
  require(shots >= 1, "shots must be positive");
  Outcomes o;
  for (long k = 0; k < shots; ++k) {
    if (uniform01(seed, static_cast<std::uint64_t>(k)) < p) ++o.zeros;
    else ++o.ones;
  }
  return o;
}

Outcomes sample_outcomes(const BraidWord& b, long shots, std::uint64_t seed) {
  return sample_bernoulli(plat_amplitude(b).prob0, shots, seed);
}

long absV_batch_size(double epsilon) {
  require(epsilon > 0, "epsilon must be positive");
  return static_cast<long>(std::ceil(4.0 / std::pow(epsilon, 4) - 1e-9)) + 1;
}

AAResult estimate_absV_from_prob(double prob0, int m, const AAConfig& cfg) {
  cfg.validate();
  AAResult r;
  r.epsilon = cfg.epsilon;
  r.delta = cfg.delta;
  r.seed = cfg.seed;
  r.batch_size = absV_batch_size(cfg.epsilon);
  r.batches = batch_count(cfg.delta);
  r.u = std::pow(golden_constants().tau.to_double(), m / 2.0);
  std::vector<double> freq;
  for (long k = 0; k < r.batches; ++k) {
    const Outcomes o = sample_bernoulli(prob0, r.batch_size, batch_seed(cfg.seed, static_cast<std::uint64_t>(k)));
    freq.push_back(static_cast<double>(o.zeros) / static_cast<double>(r.batch_size));
  }
  r.samples_used = r.batch_size * r.batches;
  r.estimate = std::sqrt(median(freq)) * r.u;
  return r;
}

AAResult estimate_absV(const BraidWord& b, const AAConfig& cfg) {
  return estimate_absV_from_prob(plat_amplitude(b).prob0, b.m, cfg);
}

std::string to_string(Decision d) {
  switch (d) {
    case Decision::accept: return "accept";
    case Decision::reject: return "reject";
    default: return "undecided";
  }
}

nlohmann::json DecisionReport::to_json() const {
  nlohmann::json j = {{"decision", to_string(decision)}, {"mode", mode}, {"mL", mL}};
  if (mode == "quartile") j["normalized"] = normalized;
  else j["sign"] = sign;
  return j;
}

DecisionReport decide_quartile(const BraidWord& b, int mL, const AAConfig& cfg) {
  require(mL >= 1, "mL must be positive");
  DecisionReport r;
  r.mode = "quartile";
  r.mL = mL;
  const AAResult est = estimate_absV(b, cfg);
  r.normalized = est.estimate / std::pow(golden_constants().tau.to_double(), mL);
  r.decision = r.normalized < 0.39 ? Decision::accept : (r.normalized > 0.65 ? Decision::reject : Decision::undecided);
  return r;
}

DecisionReport decide_sign(const BraidWord& b) {
  DecisionReport r;
  r.mode = "sign";
  const BraidWord link = build_fklw_link(b);
  const LinkInvariants inv = link_invariants(link);
  r.mL = inv.mL;
  const RealCyc x = real_part(fklw_phase_value(jones_value(link, inv), inv));
  r.sign = x.sign();
  const Golden scale = pow(Golden::tau(), inv.mL - 2L);
  const Golden low = scale * Golden(Rat(-2, 4), Rat(1, 4));  // (τ − 2)/4
  const Golden high = scale * Golden(Rat(2, 4), Rat(3, 4));  // (3τ + 2)/4
  if ((x - low).sign() < 0) r.decision = Decision::accept;
  else if ((x - high).sign() > 0) r.decision = Decision::reject;
  else r.decision = Decision::undecided;
  return r;
}

// ---- Tait pairs

std::vector<TaitPair> curated_tait_pairs() {
  auto power = [](int k) {
    BraidWord b{4, {}};
    for (int i = 0; i < std::abs(k); ++i) b.word.push_back({2, k > 0 ? 1 : -1});
    return b;
  };
  auto theta = [](int k) { return Multigraph(2, std::vector<Edge>(k, Edge{0, 1})); };
  std::vector<TaitPair> t;
  t.push_back({"unknot", BraidWord{2, {}}, Multigraph(1), true, 0, 1});
  const int exps[] = {6, -8, 14, -12};
  const int signs[] = {1, -1, 1, -1};
  for (int k = 2; k <= 5; ++k) {
    const Multigraph ck = k == 2 ? theta(2) : cycle(k);
    t.push_back({"s2^" + std::to_string(k) + "/C" + std::to_string(k), power(k), ck, true, exps[k - 2], signs[k - 2]});
    t.push_back({"s2^-" + std::to_string(k) + "/theta" + std::to_string(k), power(-k), theta(k), true, -exps[k - 2],
                 signs[k - 2]});
  }
  t.push_back({"figure-eight", BraidWord{4, {{2, 1}, {1, -1}, {2, 1}, {2, 1}}},
               Multigraph(3, {{0, 1}, {0, 1}, {1, 2}, {2, 0}}), true, 0, 1});
  t.push_back({"mismatch:s2^3/theta3", power(3), theta(3), false, 0, 0});
  return t;
}

nlohmann::json TaitReport::to_json() const {
  nlohmann::json j = {{"name", name},
                      {"jones", tuttebraid::to_json(jones)},
                      {"tutte", tuttebraid::to_json(tutte)},
                      {"monomial", monomial},
                      {"residual_zero", residual_zero},
                      {"as_expected", as_expected}};
  if (monomial) {
    j["exponent"] = exponent;
    j["sign"] = sign;
  }
  return j;
}

TaitReport tait_consistency(const TaitPair& pair) {
  TaitReport r;
  r.name = pair.name;
  const LinkInvariants inv = link_invariants(pair.braid);
  const LaurentA phase = LaurentA::monomial(-3 * inv.w, inv.w % 2 ? -1 : 1);
  r.jones = phase * bracket_from_tl(pair.braid);
  r.tutte = tutte_eval(pair.graph, -LaurentA::monomial(-4), -LaurentA::monomial(4));
  r.monomial = r.jones.monomial_ratio(r.tutte, r.exponent, r.sign);
  if (r.monomial) {
    r.residual_zero = (r.jones - LaurentA::monomial(r.exponent, r.sign) * r.tutte).is_zero();
  }
  r.as_expected = pair.expect_monomial
                      ? (r.monomial && r.residual_zero && r.exponent == pair.expected_exponent &&
                         r.sign == pair.expected_sign)
                      : !r.monomial;
  return r;
}

}  // namespace tuttebraid
