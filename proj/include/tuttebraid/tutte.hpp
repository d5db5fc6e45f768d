#pragma once

#include <algorithm>
#include <atomic>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>
#include <typeindex>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "tuttebraid/errors.hpp"
#include "tuttebraid/graph.hpp"
#include "tuttebraid/number_json.hpp"
#include "tuttebraid/ring.hpp"

namespace tuttebraid {

/// Limits apply to the largest biconnected block of the input.
struct TutteCaps {
  int max_vertices = 16;
  int max_edges = 40;
  CanonicalOptions canon{};
};

/// Non-isolated vertex count; isolated vertices never affect T.
int active_vertices(const Multigraph& g);
void check_caps(const Multigraph& g, const TutteCaps& caps, const std::string& what);

/// Memoized deletion–contraction at a fixed point (x, y) of any commutative ring R.
/// The memo is shared across every graph evaluated through the same object.
template <class R>
class TutteEvaluator {
 public:
  TutteEvaluator(R x, R y, TutteCaps caps = {}) : x_(std::move(x)), y_(std::move(y)), caps_(caps) {
    y_zero_ = ring_is_zero(y_);
  }

  R operator()(const Multigraph& g) {
    check_caps(g, caps_, "tutte_eval");
    return eval(g);
  }

  const R& x() const { return x_; }
  const R& y() const { return y_; }
  std::size_t memo_size() const {
    std::lock_guard lock(mu_);
    return memo_.size();
  }
  long hits() const { return hits_; }
  long misses() const { return misses_; }

 private:
  // start + y + y² + … + y^{k−1}
  R geometric(int k, R start = R(1)) const {
    R s = std::move(start), p = y_;
    for (int i = 1; i < k; ++i) {
      s = s + p;
      p = p * y_;
    }
    return s;
  }

  R eval(const Multigraph& g) {
    const int loops = g.loop_count();
    if (loops > 0 && y_zero_) return R(0);
    R result = ring_pow(y_, loops);
    const BlockInfo bi = blocks(g);
    for (const auto& block : bi.edge_sets) {
      result = result * eval_block(g, block);
      if (ring_is_zero(result)) return result;
    }
    return result;
  }

  R eval_block(const Multigraph& g, const std::vector<std::size_t>& ids) {
    std::vector<int> map(g.n(), -1);
    std::vector<Edge> es;
    int nv = 0;
    for (std::size_t id : ids) {
      Edge e = g.edges()[id];
      for (int* p : {&e.u, &e.v}) {
        if (map[*p] < 0) map[*p] = nv++;
        *p = map[*p];
      }
      es.push_back(e);
    }
    for (auto& e : es)
      if (e.u > e.v) std::swap(e.u, e.v);
    if (y_zero_) {
      // loopless with y = 0: only the underlying simple graph matters
      std::sort(es.begin(), es.end());
      es.erase(std::unique(es.begin(), es.end()), es.end());
    }
    if (nv == 2) return geometric(static_cast<int>(es.size()), x_);
    Multigraph b(nv, std::move(es));
    const std::string key = canonical_key(b, caps_.canon);
    {
      std::lock_guard lock(mu_);
      auto it = memo_.find(key);
      if (it != memo_.end()) {
        ++hits_;
        return it->second;
      }
    }
    ++misses_;
    R value = split(b);
    std::lock_guard lock(mu_);
    memo_.emplace(key, value);
    return value;
  }

  // T = T(G − class) + (1 + y + … + y^{k−1})·T(G / class) for the parallel class of the pivot edge
  R split(const Multigraph& b) {
    const auto deg = b.degrees();
    int u = 0;
    for (int v = 1; v < b.n(); ++v)
      if (deg[v] > deg[u]) u = v;
    int w = -1;
    for (const auto& e : b.edges()) {
      const int o = e.u == u ? e.v : (e.v == u ? e.u : -1);
      if (o >= 0 && (w < 0 || deg[o] > deg[w] || (deg[o] == deg[w] && o < w))) w = o;
    }
    std::vector<Edge> rest;
    int k = 0;
    for (const auto& e : b.edges()) {
      if ((e.u == u && e.v == w) || (e.u == w && e.v == u))
        ++k;
      else
        rest.push_back(e);
    }
    const Multigraph deleted(b.n(), rest);
    const int keep = std::min(u, w), gone = std::max(u, w);
    std::vector<Edge> merged;
    for (Edge e : rest) {
      for (int* p : {&e.u, &e.v}) {
        if (*p == gone) *p = keep;
        else if (*p > gone) --*p;
      }
      merged.push_back(e);
    }
    const Multigraph contracted(b.n() - 1, std::move(merged));
    R a = eval(deleted);
    R c = eval(contracted);
    return a + geometric(k) * c;
  }

  R x_, y_;
  TutteCaps caps_;
  bool y_zero_ = false;
  mutable std::mutex mu_;
  std::unordered_map<std::string, R> memo_;
  std::atomic<long> hits_{0}, misses_{0};
};

/// Process-wide evaluators, one per (ring, point), so the memo survives across calls.
template <class R>
TutteEvaluator<R>& shared_evaluator(const R& x, const R& y) {
  static std::mutex mu;
  static std::unordered_map<std::string, std::unique_ptr<TutteEvaluator<R>>> registry;
  const std::string key = to_json(x).dump() + "|" + to_json(y).dump();
  std::lock_guard lock(mu);
  auto& slot = registry[key];
  if (!slot) slot = std::make_unique<TutteEvaluator<R>>(x, y);
  return *slot;
}

template <class R>
R tutte_eval(const Multigraph& g, const R& x, const R& y) {
  return shared_evaluator(x, y)(g);
}

/// counts[a][r]: number of edge subsets A with |A| = a and rank r(A) = r.
struct RankCounts {
  int rank_E = 0;
  std::vector<std::vector<mpz_class>> counts;
};
RankCounts rank_counts(const Multigraph& g, int max_edges = 24);

/// Subgraph expansion Σ_A (x−1)^{r(E)−r(A)} (y−1)^{|A|−r(A)}.
template <class R>
R tutte_from_counts(const RankCounts& rc, const R& x, const R& y) {
  const R xm = x - R(1), ym = y - R(1);
  const int m = static_cast<int>(rc.counts.size()) - 1;
  std::vector<R> px(rc.rank_E + 1, R(1)), py(m + 1, R(1));
  for (int i = 1; i <= rc.rank_E; ++i) px[i] = px[i - 1] * xm;
  for (int i = 1; i <= m; ++i) py[i] = py[i - 1] * ym;
  R total(0);
  for (int a = 0; a <= m; ++a)
    for (int r = 0; r <= rc.rank_E && r <= a; ++r) {
      const mpz_class& c = rc.counts[a][r];
      if (c == 0) continue;
      total = total + ring_from_mpz<R>(c) * px[rc.rank_E - r] * py[a - r];
    }
  return total;
}

template <class R>
R tutte_brute(const Multigraph& g, const R& x, const R& y) {
  return tutte_from_counts(rank_counts(g), x, y);
}

/// Coefficient matrix t[i][j] of T(G; x, y) = Σ t_ij xⁱ yʲ.
struct TuttePoly {
  std::vector<std::vector<mpz_class>> t;
  mpz_class coeff(int i, int j) const;
  template <class R>
  R eval(const R& x, const R& y) const {
    R total(0), xi(1);
    for (const auto& row : t) {
      R yj(1);
      for (const auto& c : row) {
        if (c != 0) total = total + ring_from_mpz<R>(c) * xi * yj;
        yj = yj * y;
      }
      xi = xi * x;
    }
    return total;
  }
  nlohmann::json to_json() const;
  friend bool operator==(const TuttePoly&, const TuttePoly&) = default;
};
TuttePoly tutte_poly(const Multigraph& g, int max_vertices = 12);

// ---- chromatic

/// P_G(λ) = (−1)^{r(E)} λ^κ T(G; 1−λ, 0).
template <class R>
R chromatic(const Multigraph& g, const R& lambda) {
  if (g.has_loops()) return R(0);
  const int k = components(g);
  const int r = g.n() - k;
  R t = tutte_eval(g, R(1) - lambda, R(0));
  R v = ring_pow(lambda, k) * t;
  return (r % 2) ? R(0) - v : v;
}

/// Number-system dispatch; CDouble results are tagged "float" provenance.
struct ChromaticValue {
  Number lambda;
  Number value;
  bool exact = true;
};
ChromaticValue chromatic_eval(const Multigraph& g, const Number& lambda);

/// Proper colouring count by backtracking, the oracle for integer λ.
mpz_class count_colorings(const Multigraph& g, int k);

// ---- identities, signs, bounds

struct GoldenCheck {
  Golden lhs, rhs;
  bool equal = false;
};
GoldenCheck golden_identity_check(const Multigraph& t);

/// Sign predicted for P_G(λ) by the chromatic-root-free intervals; 0 means not covered.
struct SignPrediction {
  bool covered = false;
  int sign = 0;
  std::string interval;
};
SignPrediction sign_predict(const Multigraph& g, const Rat& lambda);

struct BoundReport {
  double value_abs = 0;
  double woodall = 0;
  bool woodall_ok = false;
  double prop72 = 0;
  bool prop72_ok = false;
  std::string prop72_variant;
  bool has_gold1 = false;
  double gold1 = 0;
  bool gold1_ok = false;
  nlohmann::json to_json() const;
};
BoundReport bounds(const Multigraph& g, const Number& lambda);

bool cone_identity_check(const Multigraph& g, const Number& lambda);

/// B_n = 2 + 2cos(2π/n) in the smallest carrier that holds it exactly.
Number beraha(int n);

struct BerahaEntry {
  int n = 0, m = 0;
  std::uint64_t seed = 0;
  Number value;
  int sign = 0;  // exact for Rat/Golden, by real part otherwise
  bool zero = false;
  bool near_zero = false;
};
struct BerahaReport {
  std::string family;
  int index = 0;
  std::vector<BerahaEntry> entries;
  int positive = 0, negative = 0, zeros = 0, near_zeros = 0;
  nlohmann::json to_json() const;
};
BerahaReport beraha_survey(const std::string& family, int index, int min_n, int max_n, int per_size,
                           std::uint64_t seed, double zero_threshold = 1e-7);

// ---- stretch / thicken calibration on the Tutte plane

struct Calibration {
  Rat f, X, Y;
};
/// T(stretch(G,k); x, y) = f·T(G; X, Y) with the hyperbola (x−1)(y−1) preserved.
Calibration stretch_calibration(const Multigraph& g, int k, const Rat& x, const Rat& y);
Calibration thicken_calibration(const Multigraph& g, int k, const Rat& x, const Rat& y);

}  // namespace tuttebraid
