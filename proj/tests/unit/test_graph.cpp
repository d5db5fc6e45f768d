#include <doctest.h>

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>

#include "tuttebraid/errors.hpp"
#include "tuttebraid/graph.hpp"

using namespace tuttebraid;

namespace {

Multigraph two_triangles() { return Multigraph(5, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {2, 4}}); }

Multigraph random_multigraph(std::mt19937_64& rng, int max_n, int max_m, bool loops) {
  std::uniform_int_distribution<int> nd(1, max_n);
  const int n = nd(rng);
  std::uniform_int_distribution<int> md(0, max_m), vd(0, n - 1);
  std::vector<Edge> es;
  for (int i = md(rng); i > 0; --i) {
    int a = vd(rng), b = vd(rng);
    if (!loops && a == b) continue;
    es.push_back({a, b});
  }
  return Multigraph(n, es);
}

Multigraph relabel(const Multigraph& g, const std::vector<int>& perm) {
  std::vector<Edge> es;
  for (const auto& e : g.edges()) es.push_back({perm[e.u], perm[e.v]});
  return Multigraph(g.n(), es);
}

int brute_components(const Multigraph& g) {
  std::vector<int> seen(g.n(), 0);
  int count = 0;
  for (int s = 0; s < g.n(); ++s) {
    if (seen[s]) continue;
    ++count;
    std::vector<int> stack = {s};
    seen[s] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (const auto& e : g.edges()) {
        int w = e.u == v ? e.v : (e.v == v ? e.u : -1);
        if (w >= 0 && !seen[w]) seen[w] = 1, stack.push_back(w);
      }
    }
  }
  return count;
}

// Two non-loop edges share a block iff splitting any single vertex never separates them.
int brute_blocks(const Multigraph& g) {
  std::vector<std::size_t> ids;
  for (std::size_t i = 0; i < g.edges().size(); ++i)
    if (!g.edges()[i].is_loop()) ids.push_back(i);
  const std::size_t m = ids.size();
  std::vector<std::vector<bool>> together(m, std::vector<bool>(m, true));
  for (int x = 0; x < g.n(); ++x) {
    // union edges through shared endpoints other than x
    std::vector<int> parent(m);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) {
        const Edge &e = g.edges()[ids[i]], &f = g.edges()[ids[j]];
        for (int p : {e.u, e.v})
          if (p != x && (p == f.u || p == f.v)) parent[find(i)] = find(j);
      }
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        if (find(i) != find(j)) together[i][j] = false;
  }
  std::vector<bool> done(m, false);
  int count = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (done[i]) continue;
    ++count;
    for (std::size_t j = 0; j < m; ++j)
      if (together[i][j]) done[j] = true;
  }
  return count;
}

}  // namespace

TEST_CASE("delete and contract") {
  const Multigraph k3 = complete(3);
  const Multigraph c = k3.contract_edge(0);
  CHECK(c.n() == 2);
  CHECK(c.m() == 2);
  CHECK(c.edges()[0] == Edge{0, 1});
  CHECK(c.edges()[1] == Edge{0, 1});

  const Multigraph looped(2, {{0, 0}, {0, 1}});
  const Multigraph d = looped.delete_edge(0);
  CHECK(d.n() == 2);
  CHECK(d.m() == 1);
  CHECK_FALSE(d.has_loops());
  CHECK_THROWS_AS(looped.contract_edge(0), PreconditionError);
  CHECK_THROWS_AS(looped.delete_edge(5), PreconditionError);

  // contracting one of two parallel edges leaves a loop
  const Multigraph par(2, {{0, 1}, {0, 1}});
  CHECK(par.contract_edge(1).edges() == std::vector<Edge>{{0, 0}});
  // the smaller endpoint survives, higher labels shift down
  const Multigraph p4 = path(4).contract_edge(1);
  CHECK(p4.sorted_edges() == std::vector<Edge>{{0, 1}, {1, 2}});
}

TEST_CASE("components, blocks, spanning forest") {
  CHECK(components(add_isolated(complete(3), 2)) == 3);
  CHECK(blocks(two_triangles()).count == 2);
  CHECK(blocks(path(4)).count == 3);
  CHECK(blocks(complete(4)).count == 1);
  CHECK(blocks(Multigraph(3)).count == 0);
  CHECK(blocks(Multigraph(1, {{0, 0}})).loops_ignored);

  const Multigraph g = add_isolated(two_triangles(), 2);
  const auto f = spanning_forest(g);
  CHECK(static_cast<int>(f.size()) == g.n() - components(g));

  std::mt19937_64 rng(3);
  for (int i = 0; i < 1000; ++i) {
    const Multigraph h = random_multigraph(rng, 8, 12, true);
    REQUIRE(components(h) == brute_components(h));
    REQUIRE(blocks(h).count == brute_blocks(h));
    REQUIRE(static_cast<int>(spanning_forest(h).size()) == rank(h));
  }
}

TEST_CASE("generators") {
  CHECK(complete(4).m() == 6);
  CHECK(apollonian(4, 1) == complete(4));
  CHECK(apollonian(4, 1).tags().triangulation);
  for (int n = 4; n <= 14; ++n) {
    const Multigraph t = apollonian(n, 1000 + n);
    REQUIRE(t.m() == 3 * n - 6);
    REQUIRE(t.tags().planar);
  }
  const Multigraph mo = maximal_outerplanar(5, 9);
  CHECK(mo.m() == 7);
  CHECK(mo.tags().outerplanar);
  for (int n = 3; n <= 12; ++n) {
    const Multigraph h = maximal_outerplanar(n, n);
    REQUIRE(h.m() == 2 * n - 3);
    REQUIRE(blocks(h).count == 1);
  }
  CHECK(gnp(9, 0.4, 77) == gnp(9, 0.4, 77));
  CHECK(gen("apollonian", {{"n", 8}}, 5) == apollonian(8, 5));
  CHECK(wheel(4).n() == 5);
  CHECK(wheel(4).m() == 8);
  CHECK(fan(4).m() == 7);
  CHECK_THROWS_AS(gen("petersen", {{"n", 10}}, 0), PreconditionError);
  CHECK_THROWS_AS(apollonian(3, 0), PreconditionError);
}

TEST_CASE("transforms") {
  const Multigraph k3 = complete(3);
  const Multigraph iso = add_isolated(k3, 3);
  CHECK(iso.n() == 6);
  CHECK(iso.m() == 3);
  CHECK(components(iso) == 4);
  CHECK(add_isolated(k3, 0) == k3);

  const Multigraph ap = attach_path(k3, 0, 6);
  CHECK(ap.n() == 9);
  CHECK(ap.m() == 9);
  CHECK(components(ap) == 1);
  CHECK(attach_path(Multigraph(1), 0, 1) == complete(2));
  CHECK_THROWS_AS(attach_path(k3, 7, 1), PreconditionError);

  CHECK(canonical_key(stretch(k3, 2)) == canonical_key(cycle(6)));
  const Multigraph th = thicken(complete(2), 3);
  CHECK(th.n() == 2);
  CHECK(th.m() == 3);
  CHECK(stretch(k3, 1) == k3);
  CHECK(thicken(k3, 1) == k3);

  CHECK(canonical_key(cone(cycle(4))) == canonical_key(wheel(4)));
  CHECK(canonical_key(cone(Multigraph(3))) == canonical_key(Multigraph(4, {{0, 3}, {1, 3}, {2, 3}})));
  CHECK(cone(k3) == complete(4));
  CHECK(cone(maximal_outerplanar(6, 1)).tags().planar);

  std::mt19937_64 rng(17);
  for (int i = 0; i < 1000; ++i) {
    const Multigraph g = random_multigraph(rng, 7, 9, true);
    for (int k = 1; k <= 3; ++k) {
      const Multigraph s = stretch(g, k);
      REQUIRE(s.m() == k * g.m());
      REQUIRE(s.n() == g.n() + g.m() * (k - 1));
      REQUIRE(thicken(g, k).m() == k * g.m());
    }
  }
}

TEST_CASE("canonical key") {
  CHECK(canonical_key(complete(3)) == canonical_key(relabel(complete(3), {2, 0, 1})));
  CHECK(canonical_key(complete(3)) != canonical_key(path(3)));

  const Multigraph pendant(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}});
  std::vector<int> perm = {0, 1, 2, 3};
  const std::string key = canonical_key(pendant);
  do {
    REQUIRE(canonical_key(relabel(pendant, perm)) == key);
  } while (std::next_permutation(perm.begin(), perm.end()));

  // multigraphs with loops under random relabeling
  std::mt19937_64 rng(23);
  for (int i = 0; i < 500; ++i) {
    const Multigraph g = random_multigraph(rng, 9, 14, true);
    std::vector<int> p(g.n());
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    REQUIRE(canonical_key(relabel(g, p)) == canonical_key(g));
  }
  // highly symmetric inputs stay cheap and canonical
  CHECK(canonical_key(complete(12))[0] == 'C');
  CHECK(canonical_key(thicken(cycle(14), 2))[0] == 'C');
  CHECK(canonical_key(complete(17))[0] == 'L');
  CHECK(canonical_key(complete(8), {16, 3})[0] == 'L');
}

TEST_CASE("graph classes are separated") {
  const std::vector<std::size_t> expected = {1, 1, 2, 4, 11, 34, 156};
  for (int n = 0; n <= 6; ++n) {
    const auto all = enumerate_graphs(n, n * (n - 1) / 2);
    REQUIRE(all.size() == expected[n]);
    std::set<std::string> keys;
    for (const auto& g : all) keys.insert(canonical_key(g));
    REQUIRE(keys.size() == expected[n]);
  }
  CHECK(enumerate_graphs(7, 21).size() == 1044);
}

TEST_CASE("graph json") {
  const Multigraph g = apollonian(7, 3);
  const Multigraph back = graph_from_json(nlohmann::json::parse(to_json(g).dump()));
  CHECK(back == g);
  CHECK(back.tags().triangulation);
  CHECK(graph_from_json(nlohmann::json::parse(R"({"n":2,"edges":[[1,1],[0,1]]})")).loop_count() == 1);
  CHECK_THROWS_AS(graph_from_json(nlohmann::json::parse(R"({"edges":[]})")), ParseError);
  CHECK_THROWS_AS(graph_from_json(nlohmann::json::parse(R"({"n":2,"edges":[[0,2]]})")), PreconditionError);
}
