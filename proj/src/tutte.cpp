#include "tuttebraid/tutte.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

namespace tuttebraid {

int active_vertices(const Multigraph& g) {
  std::vector<char> seen(g.n(), 0);
  for (const auto& e : g.edges()) seen[e.u] = seen[e.v] = 1;
  return static_cast<int>(std::count(seen.begin(), seen.end(), 1));
}

void check_caps(const Multigraph& g, const TutteCaps& caps, const std::string& what) {
  // blocks carry all the exponential work; bridges, pendant paths and loops are free
  int bv = 0, be = 0;
  for (const auto& ids : blocks(g).edge_sets) {
    std::vector<int> vs;
    for (std::size_t id : ids) {
      vs.push_back(g.edges()[id].u);
      vs.push_back(g.edges()[id].v);
    }
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    bv = std::max(bv, static_cast<int>(vs.size()));
    be = std::max(be, static_cast<int>(ids.size()));
  }
  if (bv > caps.max_vertices || be > caps.max_edges) {
    throw CapExceeded(what + ": largest block has " + std::to_string(bv) + " vertices and " + std::to_string(be) +
                      " edges, over the cap (" + std::to_string(caps.max_vertices) + " vertices, " +
                      std::to_string(caps.max_edges) + " edges)");
  }
}

RankCounts rank_counts(const Multigraph& g, int max_edges) {
  if (g.m() > max_edges)
    throw CapExceeded("tutte_brute: " + std::to_string(g.m()) + " edges exceeds the subset-enumeration cap of " +
                      std::to_string(max_edges));
  const int m = g.m();
  RankCounts rc;
  rc.rank_E = rank(g);
  std::vector<std::vector<std::uint64_t>> cnt(m + 1, std::vector<std::uint64_t>(rc.rank_E + 1, 0));
  // union-find with rollback: union by size, no path compression
  std::vector<int> parent(g.n()), size(g.n(), 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x];
    return x;
  };
  std::function<void(int, int, int)> rec = [&](int i, int a, int r) {
    if (i == m) {
      ++cnt[a][r];
      return;
    }
    rec(i + 1, a, r);
    int ru = find(g.edges()[i].u), rv = find(g.edges()[i].v);
    if (ru == rv) {
      rec(i + 1, a + 1, r);
      return;
    }
    if (size[ru] < size[rv]) std::swap(ru, rv);
    parent[rv] = ru;
    size[ru] += size[rv];
    rec(i + 1, a + 1, r + 1);
    size[ru] -= size[rv];
    parent[rv] = rv;
  };
  rec(0, 0, 0);
  rc.counts.assign(m + 1, std::vector<mpz_class>(rc.rank_E + 1));
  for (int a = 0; a <= m; ++a)
    for (int r = 0; r <= rc.rank_E; ++r) rc.counts[a][r] = mpz_class(std::to_string(cnt[a][r]));
  return rc;
}

mpz_class TuttePoly::coeff(int i, int j) const {
  if (i < 0 || j < 0 || i >= static_cast<int>(t.size()) || j >= static_cast<int>(t[i].size())) return 0;
  return t[i][j];
}

nlohmann::json TuttePoly::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : t) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& c : row) r.push_back(c.get_str());
    rows.push_back(r);
  }
  return {{"t", rows}};
}

TuttePoly tutte_poly(const Multigraph& g, int max_vertices) {
  TutteCaps caps;
  caps.max_vertices = max_vertices;
  check_caps(g, caps, "tutte_poly");
  static TutteEvaluator<BiPoly> shared(BiPoly::x(), BiPoly::y(), TutteCaps{64, 1 << 20, {}});
  const BiPoly p = shared(g);
  int di = 0, dj = 0;
  for (const auto& [k, c] : p.terms()) {
    di = std::max(di, k.first);
    dj = std::max(dj, k.second);
  }
  TuttePoly out;
  out.t.assign(di + 1, std::vector<mpz_class>(dj + 1, 0));
  for (const auto& [k, c] : p.terms()) out.t[k.first][k.second] = c;
  return out;
}

// ---- chromatic

ChromaticValue chromatic_eval(const Multigraph& g, const Number& lambda) {
  ChromaticValue out;
  out.lambda = lambda;
  out.value = std::visit([&](const auto& l) -> Number { return chromatic(g, l); }, lambda);
  out.exact = !std::holds_alternative<CDouble>(lambda);
  return out;
}

mpz_class count_colorings(const Multigraph& g, int k) {
  if (g.has_loops()) return 0;
  const int n = g.n();
  std::vector<std::vector<int>> earlier(n);
  for (const auto& e : g.edges()) earlier[std::max(e.u, e.v)].push_back(std::min(e.u, e.v));
  std::vector<int> col(n, -1);
  mpz_class total = 0;
  std::function<void(int)> rec = [&](int v) {
    if (v == n) {
      ++total;
      return;
    }
    for (int c = 0; c < k; ++c) {
      bool ok = true;
      for (int w : earlier[v])
        if (col[w] == c) {
          ok = false;
          break;
        }
      if (!ok) continue;
      col[v] = c;
      rec(v + 1);
    }
    col[v] = -1;
  };
  rec(0);
  return total;
}

// ---- identities, signs, bounds

GoldenCheck golden_identity_check(const Multigraph& t) {
  require(t.tags().triangulation, "golden_identity_check: input is not tagged as a plane triangulation");
  const auto k = golden_constants();
  GoldenCheck out;
  out.lhs = chromatic(t, k.B10);
  const Golden p5 = chromatic(t, k.B5);
  out.rhs = k.sqrt5 * pow(k.tau, 3L * (t.n() - 3)) * p5 * p5;
  out.equal = out.lhs == out.rhs;
  return out;
}

SignPrediction sign_predict(const Multigraph& g, const Rat& lambda) {
  require(!g.has_loops(), "sign_predict: graph has loops");
  SignPrediction p;
  const int n = g.n(), kappa = components(g);
  auto parity = [](int e) { return (e % 2 == 0) ? 1 : -1; };
  if (lambda.sign() < 0) {
    p = {true, parity(n), "lambda<0"};
  } else if (lambda.sign() > 0 && lambda < Rat(1)) {
    p = {true, parity(n - kappa), "0<lambda<1"};
  } else if (lambda > Rat(1) && lambda < Rat(32, 27)) {
    p = {true, parity(n - kappa - blocks(g).count), "1<lambda<32/27"};
  } else {
    p = {false, 0, "not_covered"};
  }
  return p;
}

namespace {

nlohmann::json finite_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

bool within(double value, double bound) { return !std::isnan(bound) && value <= bound * (1 + 1e-12) + 1e-12; }

}  // namespace

nlohmann::json BoundReport::to_json() const {
  nlohmann::json j = {{"abs_value", value_abs},
                      {"woodall", {{"bound", finite_or_null(woodall)}, {"holds", woodall_ok}}},
                      {"prop72",
                       {{"bound", finite_or_null(prop72)},
                        {"holds", prop72_ok},
                        {"variant", prop72_variant},
                        {"asserted", false}}}};
  if (has_gold1) j["gold1"] = {{"bound", gold1}, {"holds", gold1_ok}};
  return j;
}

BoundReport bounds(const Multigraph& g, const Number& lambda) {
  BoundReport b;
  const CDouble l = approx(lambda);
  const double al = std::abs(l);
  const double n = g.n(), m = g.m();
  b.value_abs = std::abs(approx(chromatic_eval(g, lambda).value));
  b.woodall = std::pow(al, n - m) * std::pow(al + 1, m);
  b.woodall_ok = within(b.value_abs, b.woodall);
  // literal transcription, both regimes; connected variant when applicable
  if (is_connected(g) && g.n() >= 2) {
    const double r = m / (n - 1), alm1 = std::abs(l - 1.0);
    if (r >= alm1) {
      b.prop72 = std::pow(r - 1, n - m - 1) * std::pow(r, m) * al;
      b.prop72_variant = "connected, m/(n-1) >= |lambda-1|";
    } else {
      b.prop72 = std::pow(alm1 - 1, n - m - 1) * std::pow(alm1, m) * al;
      b.prop72_variant = "connected, m/(n-1) < |lambda-1|";
    }
  } else {
    const double r = g.n() > 0 ? m / n : 0.0;
    if (r >= al + 1) {
      b.prop72 = std::pow(r - 1, n - m) * std::pow(r, m);
      b.prop72_variant = "general, m/n >= |lambda|+1";
    } else {
      b.prop72 = b.woodall;
      b.prop72_variant = "general, m/n < |lambda|+1";
    }
  }
  b.prop72_ok = within(b.value_abs, b.prop72);
  const auto k = golden_constants();
  if (g.tags().triangulation && std::holds_alternative<Golden>(lambda) && std::get<Golden>(lambda) == k.B5) {
    b.has_gold1 = true;
    b.gold1 = std::pow(k.tau.to_double(), 5.0 - n);
    b.gold1_ok = within(b.value_abs, b.gold1);
  }
  return b;
}

bool cone_identity_check(const Multigraph& g, const Number& lambda) {
  const Multigraph c = cone(g);
  return std::visit(
      [&](const auto& l) -> bool {
        using T = std::decay_t<decltype(l)>;
        const T l1 = l + T(1);
        const T lhs = chromatic(c, l1);
        const T rhs = l1 * chromatic(g, l);
        if constexpr (std::is_same_v<T, CDouble>) {
          return std::abs(lhs - rhs) <= 1e-9 * (1 + std::abs(rhs));
        } else {
          return lhs == rhs;
        }
      },
      lambda);
}

Number beraha(int n) {
  require(n >= 1, "Beraha index must be positive");
  const auto k = golden_constants();
  switch (n) {
    case 1: return Rat(4);
    case 2: return Rat(0);
    case 3: return Rat(1);
    case 4: return Rat(2);
    case 5: return k.B5;
    case 6: return Rat(3);
    case 10: return k.B10;
    default: return CDouble(2.0 + 2.0 * std::cos(2.0 * M_PI / n), 0.0);
  }
}

nlohmann::json BerahaReport::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& e : entries) {
    rows.push_back({{"n", e.n},
                    {"m", e.m},
                    {"seed", e.seed},
                    {"value", tuttebraid::to_json(e.value)},
                    {"sign", e.sign},
                    {"zero", e.zero},
                    {"near_zero", e.near_zero}});
  }
  return {{"family", family},
          {"index", index},
          {"graphs", entries.size()},
          {"positive", positive},
          {"negative", negative},
          {"zeros", zeros},
          {"near_zeros", near_zeros},
          {"entries", rows}};
}

namespace {

nlohmann::json family_params(const std::string& family, int n) {
  if (family == "wheel" || family == "fan") return {{"k", n - 1}};
  if (family == "gnp") return {{"n", n}, {"p", 0.5}};
  return {{"n", n}};
}

bool family_is_seeded(const std::string& family) {
  return family == "gnp" || family == "apollonian" || family == "maximal_outerplanar";
}

}  // namespace

BerahaReport beraha_survey(const std::string& family, int index, int min_n, int max_n, int per_size,
                           std::uint64_t seed, double zero_threshold) {
  require(index >= 5, "beraha_survey: index must be at least 5");
  require(min_n <= max_n, "beraha_survey: empty size range");
  require(per_size >= 1, "beraha_survey: per_size must be positive");
  BerahaReport rep;
  rep.family = family;
  rep.index = index;
  const Number b = beraha(index);
  for (int n = min_n; n <= max_n; ++n) {
    const int reps = family_is_seeded(family) ? per_size : 1;
    for (int i = 0; i < reps; ++i) {
      const std::uint64_t s = seed + 1000003ULL * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(i);
      const Multigraph g = gen(family, family_params(family, n), s);
      BerahaEntry e;
      e.n = g.n();
      e.m = g.m();
      e.seed = family_is_seeded(family) ? s : 0;
      e.value = chromatic_eval(g, b).value;
      if (const auto* r = std::get_if<Rat>(&e.value)) {
        e.sign = r->sign();
        e.zero = r->is_zero();
      } else if (const auto* gd = std::get_if<Golden>(&e.value)) {
        e.sign = gd->sign();
        e.zero = gd->is_zero();
      } else {
        const CDouble v = approx(e.value);
        e.near_zero = std::abs(v) < zero_threshold;
        e.sign = e.near_zero ? 0 : (v.real() > 0 ? 1 : -1);
      }
      rep.positive += e.sign > 0;
      rep.negative += e.sign < 0;
      rep.zeros += e.zero;
      rep.near_zeros += e.near_zero;
      rep.entries.push_back(std::move(e));
    }
  }
  return rep;
}

// ---- calibration

namespace {

Rat geometric_sum(const Rat& base, int k) {
  Rat s(0), p(1);
  for (int i = 0; i < k; ++i) {
    s += p;
    p *= base;
  }
  return s;
}

}  // namespace

Calibration stretch_calibration(const Multigraph& g, int k, const Rat& x, const Rat& y) {
  require(k >= 1, "stretch_calibration: k must be at least 1");
  const Rat s = geometric_sum(x, k);  // 1 + x + … + x^{k−1}
  require(!s.is_zero(), "stretch_calibration: 1 + x + ... + x^(k-1) vanishes at this x");
  Calibration c;
  c.f = pow(s, g.m() - rank(g));
  c.X = pow(x, k);
  c.Y = (y + s - Rat(1)) / s;
  return c;
}

Calibration thicken_calibration(const Multigraph& g, int k, const Rat& x, const Rat& y) {
  require(k >= 1, "thicken_calibration: k must be at least 1");
  const Rat s = geometric_sum(y, k);  // 1 + y + … + y^{k−1}
  require(!s.is_zero(), "thicken_calibration: 1 + y + ... + y^(k-1) vanishes at this y");
  Calibration c;
  c.f = pow(s, rank(g));
  c.X = (x + s - Rat(1)) / s;
  c.Y = pow(y, k);
  return c;
}

}  // namespace tuttebraid
