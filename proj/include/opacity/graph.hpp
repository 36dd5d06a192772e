#pragma once

// Undirected weighted graphs: representation, random generators,
// exhaustive small-graph enumeration, statistics, and edge-list IO.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "opacity/errors.hpp"
#include "opacity/rng.hpp"

namespace opacity {

using NodeId = std::uint32_t;

struct Edge {
  NodeId to;
  double weight;
};

// Simple undirected graph. Adjacency lists are kept sorted by neighbor id,
// weights default to 1.0. Self-loops and duplicate edges are rejected.
// Instances are immutable once built and safe to share across threads.
class Graph {
 public:
  Graph() = default;
  explicit Graph(NodeId n) : adj_(n) {}

  NodeId node_count() const { return static_cast<NodeId>(adj_.size()); }
  std::uint64_t edge_count() const { return edge_count_; }

  void add_edge(NodeId a, NodeId b, double weight = 1.0);
  bool has_edge(NodeId a, NodeId b) const;
  double edge_weight(NodeId a, NodeId b) const;  // throws LookupError if absent

  // Manual weight override; exists for weighted fixtures in tests.
  void set_edge_weight(NodeId a, NodeId b, double weight);

  std::span<const Edge> neighbors(NodeId i) const {
    check_node(i);
    return adj_[i];
  }
  std::size_t degree(NodeId i) const {
    check_node(i);
    return adj_[i].size();
  }
  // Sum of incident edge weights (denominator of fractional exposure).
  double incident_weight(NodeId i) const;

  bool connected() const;
  // Asserts adjacency symmetry and weight agreement; cheap enough to call
  // from tests and debug paths.
  bool symmetric() const;

 private:
  void check_node(NodeId i) const {
    if (i >= adj_.size()) {
      throw LookupError("unknown node id " + std::to_string(i));
    }
  }

  std::vector<std::vector<Edge>> adj_;
  std::uint64_t edge_count_ = 0;
};

struct GraphStats {
  double mean_degree = 0.0;
  double clustering = 0.0;  // global: 3 * triangles / connected triples
  std::uint64_t dyad_count = 0;  // = |E|
  std::uint64_t triangle_count = 0;
};

// Preferential attachment growth from a star seed on m+1 nodes; every later
// node attaches m edges, so |E| = m * (n - m). Requires n > m >= 1.
Graph generate_ba(NodeId n, NodeId m, std::uint64_t seed);

// Holme-Kim style growth: same seeding and edge budget as generate_ba, but
// after each preferential step the next attachment closes a triangle with
// probability p_triangle (falling back to preferential attachment when no
// eligible neighbor exists).
Graph generate_plc(NodeId n, NodeId m, double p_triangle, std::uint64_t seed);

// Ring lattice over k_ring nearest neighbors with probability-p rewiring.
// Edge count is exactly n * k_ring / 2. Regenerates with derived sub-seeds
// up to 100 times until connected.
Graph generate_ws(NodeId n, NodeId k_ring, double p_rewire, std::uint64_t seed);

// One representative per isomorphism class of connected simple graphs with
// min_order..max_order nodes, ordered by (order, canonical form).
// Supported range: 2 <= min_order <= max_order <= 5.
std::vector<Graph> enumerate_small_graphs(int min_order, int max_order);

// Canonical form string, minimized over all node permutations. Usable as a
// graph identity key for small graphs (order <= 8).
std::string canonical_form(const Graph& g);

GraphStats graph_stats(const Graph& g);

// Exact triangle count by triple enumeration; O(n^3) oracle for tests.
std::uint64_t count_triangles_brute(const Graph& g);

// Subgraph on `nodes`, relabeled 0..|nodes|-1 in the order given.
Graph induced_subgraph(const Graph& g, std::span<const NodeId> nodes);

// Deterministic fixtures.
Graph make_complete(NodeId n);
Graph make_path(NodeId n);
Graph make_cycle(NodeId n);
Graph make_star(NodeId leaves);  // node 0 is the hub

// Edge-list file: one edge per line, "a<TAB>b<TAB>weight", weight optional.
Graph read_edge_list(const std::string& path);
void write_edge_list(const Graph& g, const std::string& path);

}  // namespace opacity
