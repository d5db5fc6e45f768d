#include "tuttebraid/graph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>

#include "tuttebraid/errors.hpp"

namespace tuttebraid {

namespace {

Edge norm_edge(int a, int b) { return a <= b ? Edge{a, b} : Edge{b, a}; }

GraphTags family_tags(const std::string& family, nlohmann::json params, std::uint64_t seed, bool planar,
                      bool outerplanar, bool triangulation) {
  GraphTags t;
  t.family = family;
  t.params = std::move(params);
  t.seed = seed;
  t.planar = planar;
  t.outerplanar = outerplanar;
  t.triangulation = triangulation;
  return t;
}

}  // namespace

Multigraph::Multigraph(int n, std::vector<Edge> edges, GraphTags tags)
    : n_(n), edges_(std::move(edges)), tags_(std::move(tags)) {
  require(n >= 0, "vertex count must be non-negative");
  for (auto& e : edges_) {
    require(e.u >= 0 && e.u < n && e.v >= 0 && e.v < n,
            "edge endpoint out of range: [" + std::to_string(e.u) + "," + std::to_string(e.v) + "]");
    e = norm_edge(e.u, e.v);
  }
}

int Multigraph::loop_count() const {
  return static_cast<int>(std::count_if(edges_.begin(), edges_.end(), [](const Edge& e) { return e.is_loop(); }));
}

std::vector<int> Multigraph::degrees() const {
  std::vector<int> d(n_, 0);
  for (const auto& e : edges_) {
    ++d[e.u];
    ++d[e.v];
  }
  return d;
}

std::vector<std::vector<int>> Multigraph::multiplicity() const {
  std::vector<std::vector<int>> a(n_, std::vector<int>(n_, 0));
  for (const auto& e : edges_) {
    ++a[e.u][e.v];
    if (!e.is_loop()) ++a[e.v][e.u];
  }
  return a;
}

std::vector<Edge> Multigraph::sorted_edges() const {
  auto s = edges_;
  std::sort(s.begin(), s.end());
  return s;
}

Multigraph Multigraph::delete_edge(std::size_t e) const {
  require(e < edges_.size(), "no edge with index " + std::to_string(e));
  auto es = edges_;
  es.erase(es.begin() + static_cast<std::ptrdiff_t>(e));
  return Multigraph(n_, std::move(es));
}

Multigraph Multigraph::contract_edge(std::size_t e) const {
  require(e < edges_.size(), "no edge with index " + std::to_string(e));
  const Edge c = edges_[e];
  require(!c.is_loop(), "cannot contract a loop");
  auto relabel = [&](int x) {
    if (x == c.v) return c.u;
    return x > c.v ? x - 1 : x;
  };
  std::vector<Edge> es;
  es.reserve(edges_.size() - 1);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (i == e) continue;
    es.push_back(norm_edge(relabel(edges_[i].u), relabel(edges_[i].v)));
  }
  return Multigraph(n_ - 1, std::move(es));
}

// ---- structure

std::vector<int> component_labels(const Multigraph& g) {
  std::vector<int> parent(g.n());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (const auto& e : g.edges()) parent[find(e.u)] = find(e.v);
  std::vector<int> label(g.n(), -1), root_label(g.n(), -1);
  int next = 0;
  for (int v = 0; v < g.n(); ++v) {
    const int r = find(v);
    if (root_label[r] < 0) root_label[r] = next++;
    label[v] = root_label[r];
  }
  return label;
}

int components(const Multigraph& g) {
  const auto l = component_labels(g);
  return l.empty() ? 0 : *std::max_element(l.begin(), l.end()) + 1;
}

int rank(const Multigraph& g) { return g.n() - components(g); }

bool is_connected(const Multigraph& g) { return components(g) <= 1; }

BlockInfo blocks(const Multigraph& g) {
  BlockInfo info;
  info.loops_ignored = g.has_loops();
  const int n = g.n();
  std::vector<std::vector<std::pair<int, std::size_t>>> adj(n);
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    const Edge& e = g.edges()[i];
    if (e.is_loop()) continue;
    adj[e.u].push_back({e.v, i});
    adj[e.v].push_back({e.u, i});
  }
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<std::size_t> stack;
  int timer = 0;
  // Tarjan over edge ids so parallel edges are handled (only the tree edge itself is skipped).
  std::function<void(int, std::size_t)> dfs = [&](int v, std::size_t via) {
    disc[v] = low[v] = timer++;
    for (const auto& [w, id] : adj[v]) {
      if (id == via) continue;
      if (disc[w] < 0) {
        stack.push_back(id);
        dfs(w, id);
        low[v] = std::min(low[v], low[w]);
        if (low[w] >= disc[v]) {
          std::vector<std::size_t> block;
          while (true) {
            const std::size_t top = stack.back();
            stack.pop_back();
            block.push_back(top);
            if (top == id) break;
          }
          std::sort(block.begin(), block.end());
          info.edge_sets.push_back(std::move(block));
        }
      } else if (disc[w] < disc[v]) {
        stack.push_back(id);
        low[v] = std::min(low[v], disc[w]);
      }
    }
  };
  const std::size_t none = static_cast<std::size_t>(-1);
  for (int v = 0; v < n; ++v)
    if (disc[v] < 0) dfs(v, none);
  info.count = static_cast<int>(info.edge_sets.size());
  return info;
}

std::vector<std::size_t> spanning_forest(const Multigraph& g) {
  std::vector<int> parent(g.n());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    const int a = find(g.edges()[i].u), b = find(g.edges()[i].v);
    if (a != b) {
      parent[a] = b;
      out.push_back(i);
    }
  }
  return out;
}

// ---- generators

Multigraph complete(int n) {
  require(n >= 0, "complete: n must be non-negative");
  std::vector<Edge> es;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) es.push_back({i, j});
  return Multigraph(n, std::move(es),
                    family_tags("complete", {{"n", n}}, 0, n <= 4, n <= 3, n == 3 || n == 4));
}

Multigraph cycle(int n) {
  require(n >= 3, "cycle: n must be at least 3");
  std::vector<Edge> es;
  for (int i = 0; i < n; ++i) es.push_back(norm_edge(i, (i + 1) % n));
  return Multigraph(n, std::move(es), family_tags("cycle", {{"n", n}}, 0, true, true, n == 3));
}

Multigraph path(int n) {
  require(n >= 1, "path: n must be at least 1");
  std::vector<Edge> es;
  for (int i = 0; i + 1 < n; ++i) es.push_back({i, i + 1});
  return Multigraph(n, std::move(es), family_tags("path", {{"n", n}}, 0, true, true, false));
}

Multigraph wheel(int k) {
  require(k >= 3, "wheel: rim must have at least 3 vertices");
  Multigraph g = cone(cycle(k));
  g.tags() = family_tags("wheel", {{"k", k}}, 0, true, false, k == 3);
  return g;
}

Multigraph fan(int k) {
  require(k >= 1, "fan: path must have at least 1 vertex");
  Multigraph g = cone(path(k));
  g.tags() = family_tags("fan", {{"k", k}}, 0, true, true, false);
  return g;
}

Multigraph gnp(int n, double p, std::uint64_t seed) {
  require(n >= 0, "gnp: n must be non-negative");
  require(p >= 0.0 && p <= 1.0, "gnp: p must lie in [0,1]");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<Edge> es;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng)) es.push_back({i, j});
  return Multigraph(n, std::move(es), family_tags("gnp", {{"n", n}, {"p", p}}, seed, false, false, false));
}

Multigraph apollonian(int n, std::uint64_t seed) {
  require(n >= 4, "apollonian: n must be at least 4");
  std::mt19937_64 rng(seed);
  std::vector<Edge> es = complete(4).edges();
  std::vector<std::array<int, 3>> faces = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
  for (int v = 4; v < n; ++v) {
    std::uniform_int_distribution<std::size_t> pick(0, faces.size() - 1);
    const std::size_t f = pick(rng);
    const auto [a, b, c] = faces[f];
    es.push_back({a, v});
    es.push_back({b, v});
    es.push_back({c, v});
    faces[f] = {a, b, v};
    faces.push_back({a, c, v});
    faces.push_back({b, c, v});
  }
  return Multigraph(n, std::move(es), family_tags("apollonian", {{"n", n}}, seed, true, false, true));
}

Multigraph maximal_outerplanar(int n, std::uint64_t seed) {
  require(n >= 2, "maximal_outerplanar: n must be at least 2");
  std::mt19937_64 rng(seed);
  std::vector<Edge> es;
  if (n == 2) {
    es.push_back({0, 1});
  } else {
    for (int i = 0; i < n; ++i) es.push_back(norm_edge(i, (i + 1) % n));
    // random ear clipping of the convex polygon
    std::vector<int> poly(n);
    std::iota(poly.begin(), poly.end(), 0);
    while (poly.size() > 3) {
      std::uniform_int_distribution<std::size_t> pick(0, poly.size() - 1);
      const std::size_t i = pick(rng);
      const std::size_t s = poly.size();
      es.push_back(norm_edge(poly[(i + s - 1) % s], poly[(i + 1) % s]));
      poly.erase(poly.begin() + static_cast<std::ptrdiff_t>(i));
    }
  }
  return Multigraph(n, std::move(es), family_tags("maximal_outerplanar", {{"n", n}}, seed, true, true, n == 3));
}

std::vector<std::string> family_names() {
  return {"complete", "cycle", "path", "wheel", "fan", "gnp", "apollonian", "maximal_outerplanar"};
}

Multigraph gen(const std::string& family, const nlohmann::json& params, std::uint64_t seed) {
  auto int_param = [&](const char* key) {
    require(params.contains(key) && params.at(key).is_number_integer(),
            family + ": missing integer parameter '" + key + "'");
    return params.at(key).get<int>();
  };
  if (family == "complete") return complete(int_param("n"));
  if (family == "cycle") return cycle(int_param("n"));
  if (family == "path") return path(int_param("n"));
  if (family == "wheel") return wheel(int_param("k"));
  if (family == "fan") return fan(int_param("k"));
  if (family == "gnp") {
    require(params.contains("p") && params.at("p").is_number(), "gnp: missing parameter 'p'");
    return gnp(int_param("n"), params.at("p").get<double>(), seed);
  }
  if (family == "apollonian") return apollonian(int_param("n"), seed);
  if (family == "maximal_outerplanar") return maximal_outerplanar(int_param("n"), seed);
  throw PreconditionError("unknown graph family '" + family + "'");
}

// ---- transforms

namespace {

GraphTags derived_tags(const Multigraph& g, const std::string& op, bool keep_outer) {
  GraphTags t = g.tags();
  t.triangulation = false;
  t.outerplanar = t.outerplanar && keep_outer;
  t.family = t.family.empty() ? op : t.family + "+" + op;
  return t;
}

}  // namespace

Multigraph add_isolated(const Multigraph& g, int k) {
  require(k >= 0, "add_isolated: k must be non-negative");
  if (k == 0) return g;
  return Multigraph(g.n() + k, g.edges(), derived_tags(g, "isolated", true));
}

Multigraph attach_path(const Multigraph& g, int v, int length) {
  require(v >= 0 && v < g.n(), "attach_path: vertex " + std::to_string(v) + " not in graph");
  require(length >= 1, "attach_path: length must be at least 1");
  auto es = g.edges();
  int prev = v;
  for (int i = 0; i < length; ++i) {
    es.push_back({prev, g.n() + i});
    prev = g.n() + i;
  }
  return Multigraph(g.n() + length, std::move(es), derived_tags(g, "path", true));
}

Multigraph stretch(const Multigraph& g, int k) {
  require(k >= 1, "stretch: k must be at least 1");
  if (k == 1) return g;
  std::vector<Edge> es;
  int next = g.n();
  for (const auto& e : g.edges()) {
    int prev = e.u;
    for (int i = 0; i < k - 1; ++i) {
      es.push_back(norm_edge(prev, next));
      prev = next++;
    }
    es.push_back(norm_edge(prev, e.v));
  }
  return Multigraph(next, std::move(es), derived_tags(g, "stretch", true));
}

Multigraph thicken(const Multigraph& g, int k) {
  require(k >= 1, "thicken: k must be at least 1");
  if (k == 1) return g;
  std::vector<Edge> es;
  for (const auto& e : g.edges())
    for (int i = 0; i < k; ++i) es.push_back(e);
  return Multigraph(g.n(), std::move(es), derived_tags(g, "thicken", true));
}

Multigraph cone(const Multigraph& g) {
  auto es = g.edges();
  for (int v = 0; v < g.n(); ++v) es.push_back({v, g.n()});
  GraphTags t = derived_tags(g, "cone", false);
  // apex over an outerplanar drawing sits in the outer face
  t.planar = g.tags().outerplanar;
  return Multigraph(g.n() + 1, std::move(es), t);
}

// ---- canonical form

namespace {

struct Canon {
  int n = 0;
  std::vector<std::vector<int>> a;
  long leaves = 0;
  long budget = 0;
  bool exhausted = false;
  std::vector<int> best_perm;  // best_perm[v] = position of v
  std::string best;
  std::vector<std::vector<int>> automorphisms;

  // Equitable refinement. Colours are dense ranks of label-invariant signatures.
  void refine(std::vector<int>& col) const {
    int classes = 1 + *std::max_element(col.begin(), col.end());
    while (true) {
      std::vector<std::pair<std::vector<int>, int>> sig(n);
      for (int v = 0; v < n; ++v) {
        std::vector<int> s;
        s.push_back(col[v]);
        std::vector<std::pair<int, int>> nb;
        for (int w = 0; w < n; ++w)
          if (a[v][w] && w != v) nb.push_back({col[w], a[v][w]});
        std::sort(nb.begin(), nb.end());
        for (auto [c, k] : nb) {
          s.push_back(c);
          s.push_back(k);
        }
        sig[v] = {std::move(s), v};
      }
      std::vector<std::vector<int>> keys;
      for (auto& [s, v] : sig) keys.push_back(s);
      std::sort(keys.begin(), keys.end());
      keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
      for (int v = 0; v < n; ++v)
        col[v] = static_cast<int>(std::lower_bound(keys.begin(), keys.end(), sig[v].first) - keys.begin());
      const int now = static_cast<int>(keys.size());
      if (now == classes) return;
      classes = now;
    }
  }

  std::string encode(const std::vector<int>& pos) const {
    std::vector<int> inv(n);
    for (int v = 0; v < n; ++v) inv[pos[v]] = v;
    std::string s = "C" + std::to_string(n) + ":";
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        s += std::to_string(a[inv[i]][inv[j]]);
        s += ',';
      }
    return s;
  }

  void search(std::vector<int> col, std::vector<int>& prefix) {
    if (exhausted) return;
    refine(col);
    // first smallest non-singleton cell
    std::vector<int> size(n, 0);
    for (int c : col) ++size[c];
    int target = -1;
    for (int c = 0; c < n; ++c)
      if (size[c] > 1 && (target < 0 || size[c] < size[target])) target = c;
    if (target < 0) {
      if (++leaves > budget) {
        exhausted = true;
        return;
      }
      std::string s = encode(col);
      if (best.empty() || s < best) {
        best = std::move(s);
        best_perm = col;
      } else if (s == best) {
        // col and best_perm give the same matrix: v ↦ best⁻¹(col(v)) is an automorphism
        std::vector<int> inv(n), aut(n);
        for (int v = 0; v < n; ++v) inv[best_perm[v]] = v;
        for (int v = 0; v < n; ++v) aut[v] = inv[col[v]];
        automorphisms.push_back(std::move(aut));
      }
      return;
    }
    std::vector<int> cell;
    for (int v = 0; v < n; ++v)
      if (col[v] == target) cell.push_back(v);
    std::vector<int> explored;
    for (int v : cell) {
      if (in_explored_orbit(v, explored, prefix)) continue;
      explored.push_back(v);
      std::vector<int> child(n);
      for (int w = 0; w < n; ++w) child[w] = 2 * col[w] + 1;
      child[v] = 2 * col[v];
      prefix.push_back(v);
      search(std::move(child), prefix);
      prefix.pop_back();
      if (exhausted) return;
    }
  }

  // Orbits of the group generated by found automorphisms that fix the prefix pointwise.
  bool in_explored_orbit(int v, const std::vector<int>& explored, const std::vector<int>& prefix) const {
    if (explored.empty() || automorphisms.empty()) return false;
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (const auto& g : automorphisms) {
      bool fixes = true;
      for (int p : prefix)
        if (g[p] != p) {
          fixes = false;
          break;
        }
      if (!fixes) continue;
      for (int x = 0; x < n; ++x) parent[find(x)] = find(g[x]);
    }
    for (int u : explored)
      if (find(u) == find(v)) return true;
    return false;
  }
};

std::string labeled_key(const Multigraph& g) {
  std::string s = "L" + std::to_string(g.n()) + ":";
  for (const auto& e : g.sorted_edges()) s += std::to_string(e.u) + "-" + std::to_string(e.v) + ",";
  return s;
}

}  // namespace

std::string canonical_key(const Multigraph& g, const CanonicalOptions& opt) {
  if (g.n() > opt.vertex_cap) return labeled_key(g);
  if (g.n() == 0) return "C0:";
  Canon c;
  c.n = g.n();
  c.a = g.multiplicity();
  c.budget = opt.leaf_budget;
  std::vector<int> col(g.n());
  for (int v = 0; v < g.n(); ++v) col[v] = c.a[v][v];  // loop count as the initial colour
  std::vector<int> prefix;
  c.search(col, prefix);
  if (c.exhausted) return labeled_key(g);
  return c.best;
}

std::vector<Multigraph> enumerate_graphs(int n, int max_m) {
  require(n >= 0 && n <= 16, "enumerate_graphs: n must lie in [0,16]");
  std::vector<Multigraph> out;
  std::vector<Multigraph> level = {Multigraph(n)};
  const int full = n * (n - 1) / 2;
  for (int m = 0; m <= std::min(max_m, full); ++m) {
    out.insert(out.end(), level.begin(), level.end());
    if (m == std::min(max_m, full)) break;
    std::map<std::string, Multigraph> next;
    for (const auto& g : level) {
      const auto a = g.multiplicity();
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          if (a[i][j]) continue;
          auto es = g.edges();
          es.push_back({i, j});
          Multigraph h(n, std::move(es));
          next.emplace(canonical_key(h, {16, 1L << 40}), std::move(h));
        }
    }
    level.clear();
    for (auto& [k, g] : next) level.push_back(std::move(g));
  }
  return out;
}

// ---- json

nlohmann::json to_json(const Multigraph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : g.edges()) edges.push_back({e.u, e.v});
  nlohmann::json j = {{"n", g.n()}, {"edges", edges}};
  const auto& t = g.tags();
  if (!t.family.empty() || t.planar || t.outerplanar || t.triangulation) {
    j["tags"] = {{"planar", t.planar},
                 {"outerplanar", t.outerplanar},
                 {"triangulation", t.triangulation},
                 {"family", t.family},
                 {"params", t.params},
                 {"seed", t.seed}};
  }
  return j;
}

Multigraph graph_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.at("n").is_number_integer())
    throw ParseError("graph JSON needs an integer field \"n\"");
  const int n = j.at("n").get<int>();
  std::vector<Edge> es;
  if (j.contains("edges")) {
    if (!j.at("edges").is_array()) throw ParseError("graph JSON \"edges\" must be an array");
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
        throw ParseError("each edge must be a pair of integers, got " + e.dump());
      es.push_back({e[0].get<int>(), e[1].get<int>()});
    }
  }
  GraphTags t;
  if (j.contains("tags")) {
    const auto& tj = j.at("tags");
    if (!tj.is_object()) throw ParseError("graph JSON \"tags\" must be an object");
    t.planar = tj.value("planar", false);
    t.outerplanar = tj.value("outerplanar", false);
    t.triangulation = tj.value("triangulation", false);
    t.family = tj.value("family", std::string());
    t.params = tj.value("params", nlohmann::json::object());
    t.seed = tj.value("seed", std::uint64_t{0});
  }
  return Multigraph(n, std::move(es), std::move(t));
}

}  // namespace tuttebraid
