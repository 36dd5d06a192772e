#include "opacity/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "opacity/csv.hpp"

namespace opacity {

namespace {

std::vector<Edge>::const_iterator find_edge(const std::vector<Edge>& list, NodeId to) {
  auto it = std::lower_bound(list.begin(), list.end(), to,
                             [](const Edge& e, NodeId id) { return e.to < id; });
  if (it != list.end() && it->to == to) return it;
  return list.end();
}

}  // namespace

void Graph::add_edge(NodeId a, NodeId b, double weight) {
  check_node(a);
  check_node(b);
  if (a == b) throw ParamError("self-loop rejected on node " + std::to_string(a));
  if (weight < 0.0) throw ParamError("negative edge weight");
  if (has_edge(a, b)) {
    throw ParamError("duplicate edge " + std::to_string(a) + "-" + std::to_string(b));
  }
  auto insert_into = [&](NodeId from, NodeId to) {
    auto& list = adj_[from];
    auto it = std::lower_bound(list.begin(), list.end(), to,
                               [](const Edge& e, NodeId id) { return e.to < id; });
    list.insert(it, Edge{to, weight});
  };
  insert_into(a, b);
  insert_into(b, a);
  ++edge_count_;
}

bool Graph::has_edge(NodeId a, NodeId b) const {
  check_node(a);
  check_node(b);
  return find_edge(adj_[a], b) != adj_[a].end();
}

double Graph::edge_weight(NodeId a, NodeId b) const {
  check_node(a);
  check_node(b);
  auto it = find_edge(adj_[a], b);
  if (it == adj_[a].end()) {
    throw LookupError("no edge " + std::to_string(a) + "-" + std::to_string(b));
  }
  return it->weight;
}

void Graph::set_edge_weight(NodeId a, NodeId b, double weight) {
  check_node(a);
  check_node(b);
  if (weight < 0.0) throw ParamError("negative edge weight");
  auto set_one = [&](NodeId from, NodeId to) {
    auto it = find_edge(adj_[from], to);
    if (it == adj_[from].end()) {
      throw LookupError("no edge " + std::to_string(from) + "-" + std::to_string(to));
    }
    const_cast<Edge&>(*it).weight = weight;
  };
  set_one(a, b);
  set_one(b, a);
}

double Graph::incident_weight(NodeId i) const {
  check_node(i);
  double total = 0.0;
  for (const Edge& e : adj_[i]) total += e.weight;
  return total;
}

bool Graph::connected() const {
  if (adj_.empty()) return true;
  std::vector<std::uint8_t> seen(adj_.size(), 0);
  std::vector<NodeId> stack{0};
  seen[0] = 1;
  std::size_t visited = 1;
  while (!stack.empty()) {
    NodeId u = stack.back();
    stack.pop_back();
    for (const Edge& e : adj_[u]) {
      if (!seen[e.to]) {
        seen[e.to] = 1;
        ++visited;
        stack.push_back(e.to);
      }
    }
  }
  return visited == adj_.size();
}

bool Graph::symmetric() const {
  for (NodeId i = 0; i < adj_.size(); ++i) {
    for (const Edge& e : adj_[i]) {
      if (e.to >= adj_.size()) return false;
      auto it = find_edge(adj_[e.to], i);
      if (it == adj_[e.to].end() || it->weight != e.weight) return false;
    }
  }
  return true;
}

namespace {

Graph star_seed(NodeId n, NodeId m) {
  Graph g(n);
  for (NodeId i = 1; i <= m; ++i) g.add_edge(0, i);
  return g;
}

void check_growth_params(NodeId n, NodeId m) {
  if (m < 1 || n <= m) {
    throw ParamError("growth generator requires n > m >= 1");
  }
}

// Picks a target by degree-proportional sampling from the repeat list,
// retrying past already-chosen or self targets.
NodeId preferential_target(const std::vector<NodeId>& repeats, NodeId source,
                           const Graph& g, Rng& rng) {
  while (true) {
    NodeId candidate = repeats[rng.below(repeats.size())];
    if (candidate != source && !g.has_edge(source, candidate)) return candidate;
  }
}

}  // namespace

Graph generate_ba(NodeId n, NodeId m, std::uint64_t seed) {
  check_growth_params(n, m);
  Graph g = star_seed(n, m);
  Rng rng(seed);
  std::vector<NodeId> repeats;
  repeats.reserve(2ull * m * (n - m));
  for (NodeId i = 0; i <= m; ++i) {
    for (std::size_t d = 0; d < g.degree(i); ++d) repeats.push_back(i);
  }
  for (NodeId source = m + 1; source < n; ++source) {
    std::vector<NodeId> chosen;
    chosen.reserve(m);
    for (NodeId e = 0; e < m; ++e) {
      NodeId target = preferential_target(repeats, source, g, rng);
      g.add_edge(source, target);
      chosen.push_back(target);
    }
    for (NodeId t : chosen) repeats.push_back(t);
    repeats.insert(repeats.end(), m, source);
  }
  return g;
}

Graph generate_plc(NodeId n, NodeId m, double p_triangle, std::uint64_t seed) {
  check_growth_params(n, m);
  if (p_triangle < 0.0 || p_triangle > 1.0) {
    throw ParamError("p_triangle must lie in [0,1]");
  }
  Graph g = star_seed(n, m);
  Rng rng(seed);
  std::vector<NodeId> repeats;
  repeats.reserve(2ull * m * (n - m));
  for (NodeId i = 0; i <= m; ++i) {
    for (std::size_t d = 0; d < g.degree(i); ++d) repeats.push_back(i);
  }
  for (NodeId source = m + 1; source < n; ++source) {
    std::vector<NodeId> chosen;
    chosen.reserve(m);
    NodeId last_target = 0;
    bool have_target = false;
    for (NodeId e = 0; e < m; ++e) {
      NodeId target = 0;
      bool closed = false;
      if (have_target && rng.bernoulli(p_triangle)) {
        // Triad closure: link to a random neighbor of the previous target.
        std::vector<NodeId> eligible;
        for (const Edge& nb : g.neighbors(last_target)) {
          if (nb.to != source && !g.has_edge(source, nb.to)) eligible.push_back(nb.to);
        }
        if (!eligible.empty()) {
          target = eligible[rng.below(eligible.size())];
          closed = true;
        }
      }
      if (!closed) target = preferential_target(repeats, source, g, rng);
      g.add_edge(source, target);
      chosen.push_back(target);
      last_target = target;
      have_target = true;
    }
    for (NodeId t : chosen) repeats.push_back(t);
    repeats.insert(repeats.end(), m, source);
  }
  return g;
}

namespace {

Graph ws_attempt(NodeId n, NodeId k_ring, double p_rewire, std::uint64_t seed) {
  const NodeId half = k_ring / 2;
  std::vector<std::vector<NodeId>> adj(n);
  auto linked = [&](NodeId a, NodeId b) {
    return std::find(adj[a].begin(), adj[a].end(), b) != adj[a].end();
  };
  auto link = [&](NodeId a, NodeId b) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  };
  auto unlink = [&](NodeId a, NodeId b) {
    adj[a].erase(std::find(adj[a].begin(), adj[a].end(), b));
    adj[b].erase(std::find(adj[b].begin(), adj[b].end(), a));
  };
  for (NodeId j = 1; j <= half; ++j) {
    for (NodeId i = 0; i < n; ++i) link(i, static_cast<NodeId>((i + j) % n));
  }
  Rng rng(seed);
  for (NodeId j = 1; j <= half; ++j) {
    for (NodeId i = 0; i < n; ++i) {
      if (!rng.bernoulli(p_rewire)) continue;
      if (adj[i].size() >= n - 1) continue;  // saturated, nowhere to rewire
      NodeId fresh;
      do {
        fresh = static_cast<NodeId>(rng.below(n));
      } while (fresh == i || linked(i, fresh));
      unlink(i, static_cast<NodeId>((i + j) % n));
      link(i, fresh);
    }
  }
  Graph g(n);
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId b : adj[i]) {
      if (i < b) g.add_edge(i, b);
    }
  }
  return g;
}

}  // namespace

Graph generate_ws(NodeId n, NodeId k_ring, double p_rewire, std::uint64_t seed) {
  if (k_ring == 0 || k_ring % 2 != 0) throw ParamError("k_ring must be even and positive");
  if (k_ring >= n) throw ParamError("k_ring must be smaller than n");
  if (p_rewire < 0.0 || p_rewire > 1.0) throw ParamError("p_rewire must lie in [0,1]");
  for (int attempt = 0; attempt < 100; ++attempt) {
    Graph g = ws_attempt(n, k_ring, p_rewire, split_seed(seed, attempt));
    if (g.connected()) return g;
  }
  throw ParamError("failed to generate a connected Watts-Strogatz graph in 100 attempts");
}

namespace {

int pair_index(int i, int j, int n) {
  // index of unordered pair (i < j) in row-major upper triangle
  int idx = 0;
  for (int a = 0; a < i; ++a) idx += n - a - 1;
  return idx + (j - i - 1);
}

bool mask_connected(std::uint32_t mask, int n) {
  std::vector<int> stack{0};
  std::uint32_t seen = 1;
  int visited = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int v = 0; v < n; ++v) {
      if (v == u || (seen >> v) & 1) continue;
      int i = std::min(u, v), j = std::max(u, v);
      if ((mask >> pair_index(i, j, n)) & 1) {
        seen |= 1u << v;
        ++visited;
        stack.push_back(v);
      }
    }
  }
  return visited == n;
}

std::uint32_t permute_mask(std::uint32_t mask, const std::vector<int>& perm, int n) {
  std::uint32_t out = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if ((mask >> pair_index(i, j, n)) & 1) {
        int pi = perm[i], pj = perm[j];
        if (pi > pj) std::swap(pi, pj);
        out |= 1u << pair_index(pi, pj, n);
      }
    }
  }
  return out;
}

std::uint32_t canonical_mask(std::uint32_t mask, int n) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::uint32_t best = permute_mask(mask, perm, n);
  while (std::next_permutation(perm.begin(), perm.end())) {
    best = std::min(best, permute_mask(mask, perm, n));
  }
  return best;
}

Graph graph_from_mask(std::uint32_t mask, int n) {
  Graph g(static_cast<NodeId>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if ((mask >> pair_index(i, j, n)) & 1) g.add_edge(i, j);
    }
  }
  return g;
}

}  // namespace

std::vector<Graph> enumerate_small_graphs(int min_order, int max_order) {
  if (min_order < 2 || max_order > 5 || min_order > max_order) {
    throw ParamError("enumerate_small_graphs supports orders 2..5");
  }
  std::vector<Graph> out;
  for (int n = min_order; n <= max_order; ++n) {
    const int pairs = n * (n - 1) / 2;
    std::vector<std::uint32_t> canon;
    for (std::uint32_t mask = 0; mask < (1u << pairs); ++mask) {
      if (!mask_connected(mask, n)) continue;
      std::uint32_t c = canonical_mask(mask, n);
      if (c == mask) canon.push_back(c);  // keep exactly the canonical member
    }
    std::sort(canon.begin(), canon.end());
    for (std::uint32_t c : canon) out.push_back(graph_from_mask(c, n));
  }
  return out;
}

std::string canonical_form(const Graph& g) {
  const int n = static_cast<int>(g.node_count());
  if (n > 8) throw ParamError("canonical_form supports order <= 8");
  std::uint32_t mask = 0;
  for (NodeId i = 0; i < g.node_count(); ++i) {
    for (const Edge& e : g.neighbors(i)) {
      if (i < e.to) mask |= 1u << pair_index(static_cast<int>(i), static_cast<int>(e.to), n);
    }
  }
  std::uint32_t c = n >= 2 ? canonical_mask(mask, n) : 0;
  std::ostringstream os;
  os << n << ":";
  bool first = true;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if ((c >> pair_index(i, j, n)) & 1) {
        if (!first) os << ",";
        os << i << "-" << j;
        first = false;
      }
    }
  }
  return os.str();
}

GraphStats graph_stats(const Graph& g) {
  if (g.node_count() == 0) throw ParamError("stats undefined on the empty graph");
  GraphStats s;
  s.dyad_count = g.edge_count();
  s.mean_degree = 2.0 * static_cast<double>(g.edge_count()) / g.node_count();
  std::uint64_t triples = 0;
  std::uint64_t triangle_ends = 0;  // ordered (edge, common-neighbor) incidences
  for (NodeId i = 0; i < g.node_count(); ++i) {
    const std::size_t d = g.degree(i);
    triples += d >= 2 ? d * (d - 1) / 2 : 0;
    for (const Edge& e : g.neighbors(i)) {
      if (e.to < i) continue;
      // count common neighbors of (i, e.to) by sorted intersection
      auto a = g.neighbors(i);
      auto b = g.neighbors(e.to);
      std::size_t x = 0, y = 0;
      while (x < a.size() && y < b.size()) {
        if (a[x].to == b[y].to) {
          ++triangle_ends;
          ++x;
          ++y;
        } else if (a[x].to < b[y].to) {
          ++x;
        } else {
          ++y;
        }
      }
    }
  }
  s.triangle_count = triangle_ends / 3;
  s.clustering = triples == 0 ? 0.0
                              : 3.0 * static_cast<double>(s.triangle_count) /
                                    static_cast<double>(triples);
  return s;
}

std::uint64_t count_triangles_brute(const Graph& g) {
  std::uint64_t t = 0;
  const NodeId n = g.node_count();
  for (NodeId a = 0; a < n; ++a) {
    for (NodeId b = a + 1; b < n; ++b) {
      if (!g.has_edge(a, b)) continue;
      for (NodeId c = b + 1; c < n; ++c) {
        if (g.has_edge(a, c) && g.has_edge(b, c)) ++t;
      }
    }
  }
  return t;
}

Graph induced_subgraph(const Graph& g, std::span<const NodeId> nodes) {
  std::vector<NodeId> map(g.node_count(), UINT32_MAX);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i] >= g.node_count()) {
      throw LookupError("unknown node id " + std::to_string(nodes[i]));
    }
    map[nodes[i]] = static_cast<NodeId>(i);
  }
  Graph sub(static_cast<NodeId>(nodes.size()));
  for (NodeId u : nodes) {
    for (const Edge& e : g.neighbors(u)) {
      if (u < e.to && map[e.to] != UINT32_MAX) {
        sub.add_edge(map[u], map[e.to], e.weight);
      }
    }
  }
  return sub;
}

Graph make_complete(NodeId n) {
  Graph g(n);
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) g.add_edge(i, j);
  }
  return g;
}

Graph make_path(NodeId n) {
  Graph g(n);
  for (NodeId i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

Graph make_cycle(NodeId n) {
  if (n < 3) throw ParamError("cycle needs at least 3 nodes");
  Graph g = make_path(n);
  g.add_edge(n - 1, 0);
  return g;
}

Graph make_star(NodeId leaves) {
  Graph g(leaves + 1);
  for (NodeId i = 1; i <= leaves; ++i) g.add_edge(0, i);
  return g;
}

Graph read_edge_list(const std::string& path) {
  LineReader reader(path);
  std::string line;
  struct Row {
    NodeId a, b;
    double w;
  };
  std::vector<Row> rows;
  NodeId max_id = 0;
  bool any = false;
  while (reader.next(line)) {
    std::istringstream is(line);
    long long a = -1, b = -1;
    double w = 1.0;
    if (!(is >> a >> b)) throw ParseError(reader.where() + ": expected 'a b [weight]'");
    is >> w;
    if (a < 0 || b < 0) throw ParseError(reader.where() + ": node ids must be non-negative");
    rows.push_back({static_cast<NodeId>(a), static_cast<NodeId>(b), w});
    max_id = std::max({max_id, static_cast<NodeId>(a), static_cast<NodeId>(b)});
    any = true;
  }
  Graph g(any ? max_id + 1 : 0);
  for (const Row& r : rows) g.add_edge(r.a, r.b, r.w);
  return g;
}

void write_edge_list(const Graph& g, const std::string& path) {
  auto out = open_output(path);
  for (NodeId i = 0; i < g.node_count(); ++i) {
    for (const Edge& e : g.neighbors(i)) {
      if (i < e.to) out << i << "\t" << e.to << "\t" << fmt_double(e.weight) << "\n";
    }
  }
}

}  // namespace opacity
