#include "relhyp/graph.hpp"

#include <deque>
#include <sstream>

#include "relhyp/errors.hpp"

namespace relhyp {

int Graph::add_edge(int u, int v) {
  if (u == v) throw self_loop("self loops are not allowed");
  int id = int(edges.size());
  edges.push_back({u, v});
  adj[u].push_back({v, id});
  adj[v].push_back({u, id});
  return id;
}

int Graph::edge_between(int u, int v) const {
  for (auto [w, e] : adj[u])
    if (w == v) return e;
  return -1;
}

std::vector<int> bfs_distances(const Graph& g, int src) {
  return bfs_distances_multi(g, {src});
}

std::vector<int> bfs_distances_multi(const Graph& g, const std::vector<int>& sources) {
  std::vector<int> dist(g.n, -1);
  std::deque<int> q;
  for (int s : sources) {
    if (dist[s] == -1) {
      dist[s] = 0;
      q.push_back(s);
    }
  }
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    for (auto [v, e] : g.adj[u]) {
      if (dist[v] == -1) {
        dist[v] = dist[u] + 1;
        q.push_back(v);
      }
    }
  }
  return dist;
}

std::vector<int> bfs_distances_restricted(const Graph& g, int src,
                                          const std::vector<char>& allowed) {
  std::vector<int> dist(g.n, -1);
  if (!allowed[src]) return dist;
  std::deque<int> q{src};
  dist[src] = 0;
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    for (auto [v, e] : g.adj[u]) {
      if (allowed[v] && dist[v] == -1) {
        dist[v] = dist[u] + 1;
        q.push_back(v);
      }
    }
  }
  return dist;
}

std::vector<std::vector<int>> all_pairs_distances(const Graph& g) {
  std::vector<std::vector<int>> d(g.n);
  for (int v = 0; v < g.n; ++v) d[v] = bfs_distances(g, v);
  return d;
}

std::string serialize_graph(const Graph& g, const std::vector<std::string>& vertex_labels,
                            const std::vector<std::string>& edge_kinds) {
  std::ostringstream os;
  os << "vertices " << g.n << "\n";
  for (int v = 0; v < g.n; ++v)
    os << "label " << v << ' '
       << (v < int(vertex_labels.size()) ? vertex_labels[v] : std::string("-")) << "\n";
  for (size_t e = 0; e < g.edges.size(); ++e)
    os << "edge " << g.edges[e][0] << ' ' << g.edges[e][1] << ' '
       << (e < edge_kinds.size() ? edge_kinds[e] : std::string("-")) << "\n";
  return os.str();
}

}  // namespace relhyp
