#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace tuttebraid {

struct Edge {
  int u = 0;
  int v = 0;  // u <= v after normalization; u == v is a loop
  bool is_loop() const { return u == v; }
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Structural guarantees recorded by the generator that built a graph.
/// Nothing here is ever inferred by testing the graph itself.
struct GraphTags {
  bool planar = false;
  bool outerplanar = false;
  bool triangulation = false;
  std::string family;
  nlohmann::json params = nlohmann::json::object();
  std::uint64_t seed = 0;
};

class Multigraph {
 public:
  Multigraph() = default;
  explicit Multigraph(int n, std::vector<Edge> edges = {}, GraphTags tags = {});

  int n() const { return n_; }
  int m() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const GraphTags& tags() const { return tags_; }
  GraphTags& tags() { return tags_; }

  int loop_count() const;
  bool has_loops() const { return loop_count() > 0; }
  std::vector<int> degrees() const;  // a loop adds 2
  /// n×n multiplicity matrix, loops on the diagonal.
  std::vector<std::vector<int>> multiplicity() const;

  Multigraph delete_edge(std::size_t e) const;
  /// Merge the endpoints of a non-loop edge. The smaller index survives; higher indices shift down.
  Multigraph contract_edge(std::size_t e) const;

  friend bool operator==(const Multigraph& a, const Multigraph& b) {
    return a.n_ == b.n_ && a.sorted_edges() == b.sorted_edges();
  }
  std::vector<Edge> sorted_edges() const;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  GraphTags tags_;
};

// structure
std::vector<int> component_labels(const Multigraph& g);
int components(const Multigraph& g);
/// r(E) = n − κ.
int rank(const Multigraph& g);

struct BlockInfo {
  int count = 0;              // biconnected blocks holding at least one non-loop edge
  bool loops_ignored = false;
  std::vector<std::vector<std::size_t>> edge_sets;  // edge indices per block, loops excluded
};
BlockInfo blocks(const Multigraph& g);
/// Spanning forest, one tree per component; returns edge indices.
std::vector<std::size_t> spanning_forest(const Multigraph& g);
bool is_connected(const Multigraph& g);

// generators
Multigraph complete(int n);
Multigraph cycle(int n);
Multigraph path(int n);
Multigraph wheel(int k);  // hub joined to a k-cycle; hub is vertex k
Multigraph fan(int k);    // hub joined to a k-path; hub is vertex k
Multigraph gnp(int n, double p, std::uint64_t seed);
Multigraph apollonian(int n, std::uint64_t seed);
Multigraph maximal_outerplanar(int n, std::uint64_t seed);
/// Dispatch by family name; params holds "n", "k" or "p" as the family needs.
Multigraph gen(const std::string& family, const nlohmann::json& params, std::uint64_t seed);
std::vector<std::string> family_names();

// transforms
Multigraph add_isolated(const Multigraph& g, int k);
Multigraph attach_path(const Multigraph& g, int v, int length);
Multigraph stretch(const Multigraph& g, int k);
Multigraph thicken(const Multigraph& g, int k);
Multigraph cone(const Multigraph& g);

struct CanonicalOptions {
  int vertex_cap = 16;
  long leaf_budget = 50000;
};
/// Isomorphism-invariant key ('C' prefix). Past the caps a labeled key ('L' prefix) is returned:
/// still sound, just fewer cache hits.
std::string canonical_key(const Multigraph& g, const CanonicalOptions& opt = {});

/// One representative per isomorphism class of simple graphs on n vertices with at most max_m edges.
std::vector<Multigraph> enumerate_graphs(int n, int max_m);

nlohmann::json to_json(const Multigraph& g);
Multigraph graph_from_json(const nlohmann::json& j);

}  // namespace tuttebraid
