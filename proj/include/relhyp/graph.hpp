#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace relhyp {

// Finite undirected simple graph.  Vertices are 0..n-1; each edge has an id
// and a stored orientation (tail, head) used as the reference orientation for
// 1-chains.  Vertex ids double as the canonical vertex order, so builders are
// expected to number vertices in their ShortLex label order.
struct Graph {
  int n = 0;
  std::vector<std::array<int, 2>> edges;
  std::vector<std::vector<std::pair<int, int>>> adj;  // vertex -> (neighbor, edge)

  int add_vertex() {
    adj.emplace_back();
    return n++;
  }
  void add_vertices(int k) {
    adj.resize(adj.size() + k);
    n += k;
  }
  int add_edge(int u, int v);
  int edge_between(int u, int v) const;  // -1 if absent
  size_t n_edges() const { return edges.size(); }
  int degree(int v) const { return int(adj[v].size()); }
};

std::vector<int> bfs_distances(const Graph& g, int src);
std::vector<int> bfs_distances_multi(const Graph& g, const std::vector<int>& sources);
// BFS distances on the subgraph induced by `allowed`; forbidden vertices get -1.
std::vector<int> bfs_distances_restricted(const Graph& g, int src,
                                          const std::vector<char>& allowed);

// All-pairs distance matrix (-1 for unreachable); n BFS passes.
std::vector<std::vector<int>> all_pairs_distances(const Graph& g);

// Serialization used by the horoball and cusped-space tools: one line per
// edge "u v kind", preceded by a "vertices <n>" header.  Labels are the
// caller's vertex annotations.
std::string serialize_graph(const Graph& g, const std::vector<std::string>& vertex_labels,
                            const std::vector<std::string>& edge_kinds);

}  // namespace relhyp
