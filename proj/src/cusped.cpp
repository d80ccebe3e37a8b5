#include "relhyp/cusped.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "relhyp/errors.hpp"

namespace relhyp {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

std::vector<CosetHoroball> compute_cosets(const CayleyBall& ball,
                                          const RelativePresentation& rp) {
  std::vector<CosetHoroball> out;
  for (const auto& p : rp.parabolics) {
    UnionFind uf(ball.g.n);
    for (size_t e = 0; e < ball.g.edges.size(); ++e) {
      if (p.contains_generator(ball.edge_label[e]))
        uf.unite(ball.g.edges[e][0], ball.g.edges[e][1]);
    }
    std::map<int, std::vector<int>> classes;
    for (int v = 0; v < ball.g.n; ++v) classes[uf.find(v)].push_back(v);
    std::vector<std::vector<int>> sorted;
    for (auto& [root, members] : classes) {
      std::sort(members.begin(), members.end());
      sorted.push_back(members);
    }
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& a, const auto& b) { return a[0] < b[0]; });
    for (auto& members : sorted) {
      CosetHoroball c;
      c.parabolic = p.id;
      c.transversal = members[0];
      c.members = members;
      c.subgraph.add_vertices(int(members.size()));
      for (size_t i = 0; i < members.size(); ++i) {
        for (auto [w, e] : ball.g.adj[members[i]]) {
          if (!p.contains_generator(ball.edge_label[e])) continue;
          auto it = std::lower_bound(members.begin(), members.end(), w);
          if (it == members.end() || *it != w) continue;
          size_t j = size_t(it - members.begin());
          if (j > i) c.subgraph.add_edge(int(i), int(j));
        }
      }
      c.sub_dist = all_pairs_distances(c.subgraph);
      out.push_back(std::move(c));
    }
  }
  return out;
}

int ceil_log2_long(long d) {
  int m = 0;
  long s = 1;
  while (s < d) {
    s <<= 1;
    ++m;
  }
  return m;
}

}  // namespace

int CuspedBall::horo_vid(int coset, int member_index, int k) const {
  if (k == 0) return cosets[coset].members[member_index];
  return cosets[coset].horo_start + (k - 1) * int(cosets[coset].members.size()) +
         member_index;
}

std::string CuspedBall::vertex_label(const GroupOracle& o, int v) const {
  if (depth_of[v] == 0) {
    const Word& w = ball.labels[v];
    return w.empty() ? "1" : rp.word_to_string(w);
  }
  const CosetHoroball& c = cosets[coset_of[v]];
  const Word& t = ball.labels[c.transversal];
  const Word& m = ball.labels[c.members[base_of[v]]];
  Word p = o.normal_form(t.inverse() * m);
  std::ostringstream os;
  os << "(" << c.parabolic << "," << (t.empty() ? "1" : rp.word_to_string(t)) << ","
     << (p.empty() ? "1" : rp.word_to_string(p)) << "," << depth_of[v] << ")";
  return os.str();
}

std::vector<int> CuspedBall::deep_part(int coset, long L) const {
  std::vector<int> out;
  long lo = std::max(L, 1L);
  const auto& c = cosets[coset];
  for (int k = int(lo); k <= horo_depth; ++k)
    for (size_t p = 0; p < c.members.size(); ++p)
      out.push_back(horo_vid(coset, int(p), k));
  return out;
}

std::vector<int> CuspedBall::inner_vertices(int margin) const {
  std::vector<int> out;
  for (int v = 0; v < g.n; ++v) {
    int proj;
    if (depth_of[v] == 0) {
      proj = int(ball.labels[v].size());
    } else {
      proj = int(ball.labels[cosets[coset_of[v]].members[base_of[v]]].size());
    }
    if (proj <= cayley_radius - margin && depth_of[v] <= horo_depth - margin)
      out.push_back(v);
  }
  return out;
}

CuspedBall build_cusped_ball(const GroupOracle& o, const RelativePresentation& rp,
                             int R, int T, long max_vertices) {
  if (!o.complete()) throw incomplete_oracle("cusped ball needs a certified oracle");
  CuspedBall b;
  b.rp = rp;
  b.cayley_radius = R;
  b.horo_depth = T;
  b.ball = cayley_ball(o, R, max_vertices);
  b.cosets = compute_cosets(b.ball, rp);

  long total = b.ball.g.n;
  for (const auto& c : b.cosets) total += long(c.members.size()) * T;
  if (total > max_vertices) throw resource_limit("cusped ball exceeds the vertex cap");

  b.g.add_vertices(b.ball.g.n);
  b.depth_of.assign(b.ball.g.n, 0);
  b.coset_of.assign(b.ball.g.n, -1);
  b.base_of.resize(b.ball.g.n);
  std::iota(b.base_of.begin(), b.base_of.end(), 0);
  for (const auto& e : b.ball.g.edges) {
    b.g.add_edge(e[0], e[1]);
    b.edge_kind.push_back(CuspedEdgeKind::Cayley);
  }

  for (size_t ci = 0; ci < b.cosets.size(); ++ci) {
    CosetHoroball& c = b.cosets[ci];
    int nb = int(c.members.size());
    c.horo_start = b.g.n;
    if (T == 0) continue;
    b.g.add_vertices(nb * T);
    for (int k = 1; k <= T; ++k)
      for (int p = 0; p < nb; ++p) {
        b.depth_of.push_back(k);
        b.coset_of.push_back(int(ci));
        b.base_of.push_back(p);
      }
    for (int p = 0; p < nb; ++p) {
      b.g.add_edge(c.members[p], b.horo_vid(int(ci), p, 1));
      b.edge_kind.push_back(CuspedEdgeKind::Vertical);
      for (int k = 1; k < T; ++k) {
        b.g.add_edge(b.horo_vid(int(ci), p, k), b.horo_vid(int(ci), p, k + 1));
        b.edge_kind.push_back(CuspedEdgeKind::Vertical);
      }
    }
    for (int k = 1; k <= T; ++k) {
      long span = k >= 62 ? (1L << 61) : (1L << k);
      for (int p = 0; p < nb; ++p)
        for (int q = p + 1; q < nb; ++q) {
          int d = c.sub_dist[p][q];
          if (d > 0 && long(d) <= span) {
            b.g.add_edge(b.horo_vid(int(ci), p, k), b.horo_vid(int(ci), q, k));
            b.edge_kind.push_back(CuspedEdgeKind::Horizontal);
          }
        }
    }
  }
  return b;
}

std::optional<int> l_horoball(const CuspedBall& b, int v, long L) {
  if (L >= 1) {
    if (b.depth_of[v] >= L) return b.coset_of[v];
    return std::nullopt;
  }
  if (b.depth_of[v] >= 1) return b.coset_of[v];
  for (size_t ci = 0; ci < b.cosets.size(); ++ci) {
    const auto& m = b.cosets[ci].members;
    if (std::binary_search(m.begin(), m.end(), v)) return int(ci);
  }
  return std::nullopt;
}

std::optional<int> translate_vertex(const CuspedBall& b, const GroupOracle& o,
                                    const Word& g, int v) {
  auto image_of_cayley = [&](int u) -> std::optional<int> {
    Word img = o.normal_form(g * b.ball.labels[u]);
    int id = b.ball.vertex_of(img);
    if (id < 0) return std::nullopt;
    return id;
  };
  if (b.depth_of[v] == 0) return image_of_cayley(v);
  const auto& c = b.cosets[b.coset_of[v]];
  auto w = image_of_cayley(c.members[b.base_of[v]]);
  if (!w) return std::nullopt;
  for (size_t ci = 0; ci < b.cosets.size(); ++ci) {
    if (b.cosets[ci].parabolic != c.parabolic) continue;
    const auto& m = b.cosets[ci].members;
    auto it = std::lower_bound(m.begin(), m.end(), *w);
    if (it != m.end() && *it == *w)
      return b.horo_vid(int(ci), int(it - m.begin()), b.depth_of[v]);
  }
  return std::nullopt;
}

std::vector<int> cusped_sigma(const CuspedBall& b, int u, int v, long L2) {
  int coset = b.depth_of[u] >= 1 ? b.coset_of[u] : b.coset_of[v];
  if (coset < 0) throw error("cusped_sigma endpoints are not in a horoball");
  const auto& c = b.cosets[coset];
  auto member_index = [&](int x) -> int {
    if (b.depth_of[x] >= 1) {
      if (b.coset_of[x] != coset)
        throw error("cusped_sigma endpoints in different horoballs");
      return b.base_of[x];
    }
    auto it = std::lower_bound(c.members.begin(), c.members.end(), x);
    if (it == c.members.end() || *it != x)
      throw error("cusped_sigma endpoint is not in the horoball's coset");
    return int(it - c.members.begin());
  };
  int p = member_index(u), q = member_index(v);
  int ku = b.depth_of[u], kv = b.depth_of[v];
  std::vector<int> path;
  if (p == q) {
    int step = ku <= kv ? 1 : -1;
    for (int k = ku; k != kv + step; k += step) path.push_back(b.horo_vid(coset, p, k));
    return path;
  }
  long d = c.sub_dist[p][q];
  if (d < 0) throw error("cusped_sigma: coset subgraph disconnected");
  int R = std::max(ceil_log2_long(d), std::max(ku, kv));
  if (long(R) == L2) R = int(L2 + 1);
  if (R > b.horo_depth)
    throw truncation_unsound("sigma path needs depth " + std::to_string(R) +
                             " beyond the truncation");
  for (int k = ku; k <= R; ++k) path.push_back(b.horo_vid(coset, p, k));
  for (int k = R; k >= kv; --k) path.push_back(b.horo_vid(coset, q, k));
  return path;
}

ConedOffGraph build_coned_off(const GroupOracle& o, const RelativePresentation& rp,
                              int R, long max_vertices) {
  if (!o.complete()) throw incomplete_oracle("coned-off graph needs a certified oracle");
  ConedOffGraph out;
  CayleyBall ball = cayley_ball(o, R, max_vertices);
  auto cosets = compute_cosets(ball, rp);
  out.n_cayley = ball.g.n;
  out.g.add_vertices(ball.g.n);
  for (const auto& e : ball.g.edges) out.g.add_edge(e[0], e[1]);
  for (const auto& c : cosets) {
    int cone = out.g.add_vertex();
    out.cone_vertex.push_back(cone);
    out.cone_label.push_back({c.parabolic, c.transversal});
    for (int m : c.members) out.g.add_edge(m, cone);
  }
  return out;
}

std::string serialize_cusped(const CuspedBall& b, const GroupOracle& o) {
  std::ostringstream os;
  os << "cayley-radius " << b.cayley_radius << "\n";
  os << "horoball-depth " << b.horo_depth << "\n";
  os << "vertices " << b.g.n << "\n";
  for (int v = 0; v < b.g.n; ++v)
    os << "label " << v << ' ' << b.vertex_label(o, v) << "\n";
  for (size_t e = 0; e < b.g.edges.size(); ++e) {
    const char* kind = b.edge_kind[e] == CuspedEdgeKind::Cayley     ? "cayley"
                       : b.edge_kind[e] == CuspedEdgeKind::Vertical ? "vertical"
                                                                    : "horizontal";
    os << "edge " << b.g.edges[e][0] << ' ' << b.g.edges[e][1] << ' ' << kind << "\n";
  }
  return os.str();
}

}  // namespace relhyp
