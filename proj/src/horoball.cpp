#include "relhyp/horoball.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "relhyp/errors.hpp"

namespace relhyp {

long HoroballGraph::horizontal_span(int k) const {
  if (k >= 62) return std::numeric_limits<long>::max() / 4;
  return 1L << k;
}

bool HoroballGraph::horizontal_edge_exists(int v, int w, int k) const {
  if (v == w) return false;
  int d = base_dist[v][w];
  if (d <= 0) return false;
  return long(d) <= horizontal_span(k);
}

bool HoroballGraph::adjacent(HoroVertex a, HoroVertex b) const {
  if (a.base == b.base) return std::abs(a.depth - b.depth) == 1;
  if (a.depth != b.depth) return false;
  return horizontal_edge_exists(a.base, b.base, a.depth);
}

HoroballGraph build_horoball(const Graph& base, int explicit_depth) {
  HoroballGraph h;
  h.base = base;
  h.base_dist = all_pairs_distances(base);
  for (int v = 0; v < base.n; ++v)
    for (int w = 0; w < base.n; ++w)
      if (h.base_dist[v][w] < 0) throw disconnected("horoball base must be connected");
  h.explicit_depth = explicit_depth;

  int nb = base.n;
  h.g.add_vertices(nb * (explicit_depth + 1));
  // depth-0 horizontal edges are the base edges
  for (const auto& e : base.edges) {
    h.g.add_edge(e[0], e[1]);
    h.edge_kind.push_back(HoroEdgeKind::Horizontal0);
  }
  for (int k = 1; k <= explicit_depth; ++k) {
    for (int v = 0; v < nb; ++v)
      for (int w = v + 1; w < nb; ++w)
        if (h.horizontal_edge_exists(v, w, k)) {
          h.g.add_edge(k * nb + v, k * nb + w);
          h.edge_kind.push_back(HoroEdgeKind::Horizontal);
        }
  }
  for (int k = 0; k < explicit_depth; ++k)
    for (int v = 0; v < nb; ++v) {
      h.g.add_edge(k * nb + v, (k + 1) * nb + v);
      h.edge_kind.push_back(HoroEdgeKind::Vertical);
    }
  return h;
}

namespace {

// smallest M with 2^M >= d (d >= 1)
int ceil_log2(long d) {
  int m = 0;
  long s = 1;
  while (s < d) {
    s <<= 1;
    ++m;
  }
  return m;
}

struct DescentPlan {
  int cost;
  int depth;  // M
  int hops;
};

DescentPlan best_descent(const HoroballGraph& h, HoroVertex a, HoroVertex b) {
  long d = h.base_dist[a.base][b.base];
  int mlo = std::max(a.depth, b.depth);
  int mhi = std::max(mlo, ceil_log2(d));  // above this, one hop suffices and
                                          // deeper only costs more
  DescentPlan best{std::numeric_limits<int>::max(), -1, 0};
  for (int M = mlo; M <= mhi; ++M) {
    long span = h.horizontal_span(M);
    long hops = (d + span - 1) / span;
    if (hops > 3) continue;
    int cost = (M - a.depth) + (M - b.depth) + int(hops);
    if (cost < best.cost) best = DescentPlan{cost, M, int(hops)};
  }
  return best;
}

}  // namespace

int horoball_distance(const HoroballGraph& h, HoroVertex a, HoroVertex b) {
  if (a.base == b.base) return std::abs(a.depth - b.depth);
  return best_descent(h, a, b).cost;
}

std::vector<HoroVertex> horoball_geodesic(const HoroballGraph& h, HoroVertex a,
                                          HoroVertex b) {
  if (a == b) return {a};
  std::vector<HoroVertex> path;
  if (a.base == b.base) {
    int step = a.depth < b.depth ? 1 : -1;
    for (int k = a.depth; k != b.depth + step; k += step) path.push_back({a.base, k});
    return path;
  }
  DescentPlan plan = best_descent(h, a, b);
  int M = plan.depth;
  long span = h.horizontal_span(M);
  for (int k = a.depth; k <= M; ++k) path.push_back({a.base, k});
  // greedy least intermediate base vertices subject to feasibility
  int cur = a.base;
  for (int hop = plan.hops; hop > 1; --hop) {
    int pick = -1;
    for (int x = 0; x < h.base.n; ++x) {
      if (x == cur) continue;
      if (long(h.base_dist[cur][x]) > span) continue;
      if (long(h.base_dist[x][b.base]) > span * (hop - 1)) continue;
      pick = x;
      break;
    }
    if (pick < 0) throw error("infeasible hop plan in horoball_geodesic");
    path.push_back({pick, M});
    cur = pick;
  }
  for (int k = M; k >= b.depth; --k) path.push_back({b.base, k});
  return path;
}

// ---------------------------------------------------------------------------
// Filling

namespace {

// removes u->v->u spurs from the circular walk; chain-neutral
void remove_backtracks(std::vector<HoroVertex>& loop) {
  bool changed = true;
  while (changed) {
    changed = false;
    size_t n = loop.size();
    if (n == 2) {
      // circular walk u->v->u is a doubled edge
      loop.clear();
      return;
    }
    if (n < 2) return;
    for (size_t i = 0; i < n; ++i) {
      if (loop[i] == loop[(i + 2) % n]) {
        // drop positions i+1 and i+2 (mod n)
        std::rotate(loop.begin(), loop.begin() + (i + 1) % n, loop.end());
        loop.erase(loop.begin(), loop.begin() + 2);
        changed = true;
        break;
      }
    }
  }
}

}  // namespace

HoroFilling horoball_fill(const HoroballGraph& h, const std::vector<HoroVertex>& loop_in) {
  if (loop_in.size() < 2 || !(loop_in.front() == loop_in.back()))
    throw not_a_loop("filling input must be a closed walk");
  std::vector<HoroVertex> loop(loop_in.begin(), loop_in.end() - 1);
  for (size_t i = 0; i < loop.size(); ++i) {
    const HoroVertex& u = loop[i];
    const HoroVertex& v = loop[(i + 1) % loop.size()];
    if (!h.adjacent(u, v)) throw not_a_loop("consecutive loop vertices not adjacent");
  }

  HoroFilling fill;
  remove_backtracks(loop);
  long guard = 0;
  while (!loop.empty()) {
    if (++guard > 100000) throw error("filling failed to terminate");
    if (loop.size() == 1) throw not_a_loop("degenerate loop");
    // rotate so the least vertex leads; keeps the construction deterministic
    size_t least = 0;
    for (size_t i = 1; i < loop.size(); ++i)
      if (loop[i] < loop[least]) least = i;
    std::rotate(loop.begin(), loop.begin() + least, loop.end());

    int j = loop[0].depth;
    for (const auto& v : loop) j = std::min(j, v.depth);
    if (j + 1 >= 62) throw depth_overflow("filling pushed past representable depth");

    bool all_horizontal_j = true;
    for (const auto& v : loop)
      if (v.depth != j) all_horizontal_j = false;

    if (all_horizontal_j && loop.size() == 3) {
      fill.cells.push_back(FillingCell{CellKind::HorizontalTriangle,
                                       {loop[0], loop[1], loop[2], loop[0]}});
      break;
    }
    if (all_horizontal_j && loop.size() == 4) {
      HoroVertex u = loop[0], v = loop[1], w = loop[2], x = loop[3];
      if (h.horizontal_edge_exists(u.base, w.base, j)) {
        fill.cells.push_back(FillingCell{CellKind::HorizontalTriangle, {u, v, w, u}});
        fill.cells.push_back(FillingCell{CellKind::HorizontalTriangle, {u, w, x, u}});
      } else if (h.horizontal_edge_exists(v.base, x.base, j)) {
        fill.cells.push_back(FillingCell{CellKind::HorizontalTriangle, {v, w, x, v}});
        fill.cells.push_back(FillingCell{CellKind::HorizontalTriangle, {v, x, u, v}});
      } else {
        HoroVertex u1{u.base, j + 1}, w1{w.base, j + 1};
        fill.cells.push_back(
            FillingCell{CellKind::VerticalPentagon, {u, v, w, w1, u1, u}});
        fill.cells.push_back(
            FillingCell{CellKind::VerticalPentagon, {w, x, u, u1, w1, w}});
      }
      break;
    }

    // locate a maximal horizontal run at depth j and rotate it to the front
    size_t n = loop.size();
    size_t run_len = 0;
    if (all_horizontal_j) {
      run_len = n;  // the run is the whole circle
    } else {
      size_t run_start = n;
      for (size_t i = 0; i < n; ++i) {
        bool edge_here = loop[i].depth == j && loop[(i + 1) % n].depth == j;
        bool edge_prev = loop[(i + n - 1) % n].depth == j && loop[i].depth == j;
        if (edge_here && !edge_prev) {
          run_start = i;
          break;
        }
      }
      if (run_start == n) throw not_a_loop("no horizontal edge at minimal depth");
      std::rotate(loop.begin(), loop.begin() + run_start, loop.end());
      while (run_len < n - 1 && loop[run_len].depth == j && loop[run_len + 1].depth == j)
        ++run_len;
    }

    // Step A: a same-depth shortcut across two adjacent run edges
    bool shortcut = false;
    for (size_t s = 0; s + 2 <= run_len; ++s) {
      HoroVertex u = loop[s % n];
      HoroVertex v = loop[(s + 1) % n];
      HoroVertex w = loop[(s + 2) % n];
      if (u.base != w.base && h.horizontal_edge_exists(u.base, w.base, j)) {
        fill.cells.push_back(FillingCell{CellKind::HorizontalTriangle, {u, v, w, u}});
        loop.erase(loop.begin() + (s + 1) % n);
        shortcut = true;
        break;
      }
    }
    if (shortcut) {
      remove_backtracks(loop);
      continue;
    }

    // Step B: push the run down, pentagons over pairs, a square on a leftover
    std::vector<HoroVertex> replacement;  // walk from loop[0] to loop[run_len % n]
    replacement.push_back(loop[0]);
    size_t s = 0;
    while (s < run_len) {
      HoroVertex u = loop[s % n];
      if (s + 2 <= run_len) {
        HoroVertex v = loop[(s + 1) % n];
        HoroVertex w = loop[(s + 2) % n];
        HoroVertex u1{u.base, j + 1}, w1{w.base, j + 1};
        fill.cells.push_back(
            FillingCell{CellKind::VerticalPentagon, {u, v, w, w1, u1, u}});
        replacement.push_back(u1);
        replacement.push_back(w1);
        replacement.push_back(w);
        s += 2;
      } else {
        HoroVertex w = loop[(s + 1) % n];
        HoroVertex u1{u.base, j + 1}, w1{w.base, j + 1};
        fill.cells.push_back(FillingCell{CellKind::VerticalSquare, {u, w, w1, u1, u}});
        replacement.push_back(u1);
        replacement.push_back(w1);
        replacement.push_back(w);
        s += 1;
      }
    }
    std::vector<HoroVertex> rebuilt(replacement.begin(), replacement.end());
    if (run_len == n) {
      // whole-circle run: replacement is a closed walk; drop the repeated
      // start vertex
      rebuilt.pop_back();
    } else {
      // replacement already ends at loop[run_len]; append the remainder
      for (size_t i = run_len + 1; i < n; ++i) rebuilt.push_back(loop[i]);
    }
    loop = std::move(rebuilt);
    remove_backtracks(loop);
  }
  return fill;
}

std::vector<HoroVertex> sigma_path(const HoroballGraph& h, HoroVertex x, HoroVertex y,
                                   long L2) {
  if (x.base == y.base) return horoball_geodesic(h, x, y);
  long d = h.base_dist[x.base][y.base];
  int N = ceil_log2(d);
  int R = std::max(N, std::max(x.depth, y.depth));
  if (R == L2) R = int(L2 + 1);
  std::vector<HoroVertex> path;
  for (int k = x.depth; k <= R; ++k) path.push_back({x.base, k});
  for (int k = R; k >= y.depth; --k) path.push_back({y.base, k});
  return path;
}

std::string serialize_filling(const HoroFilling& fill) {
  std::ostringstream os;
  for (size_t i = 0; i < fill.cells.size(); ++i) {
    const auto& c = fill.cells[i];
    os << "cell " << i << ' '
       << (c.kind == CellKind::HorizontalTriangle ? "triangle"
           : c.kind == CellKind::VerticalSquare   ? "square"
                                                  : "pentagon");
    for (const auto& v : c.boundary) os << " (" << v.base << ',' << v.depth << ")";
    os << "\n";
  }
  return os.str();
}

std::string serialize_horoball(const HoroballGraph& h) {
  std::ostringstream os;
  os << "base-vertices " << h.base.n << "\n";
  for (const auto& e : h.base.edges) os << "base-edge " << e[0] << ' ' << e[1] << "\n";
  os << "explicit-depth " << h.explicit_depth << "\n";
  for (size_t e = 0; e < h.g.edges.size(); ++e) {
    HoroVertex a = h.vertex_at(h.g.edges[e][0]);
    HoroVertex b = h.vertex_at(h.g.edges[e][1]);
    const char* kind = h.edge_kind[e] == HoroEdgeKind::Vertical ? "vertical"
                       : h.edge_kind[e] == HoroEdgeKind::Horizontal0
                           ? "horizontal depth-0"
                           : "horizontal";
    os << "(" << a.base << ',' << a.depth << ") (" << b.base << ',' << b.depth
       << ") depth-" << std::max(a.depth, b.depth) << ' ' << kind << "\n";
  }
  return os.str();
}

}  // namespace relhyp
