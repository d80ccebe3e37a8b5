#include "relhyp/chain.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "relhyp/errors.hpp"

namespace relhyp {

void SparseChain::add(int cell, const Rational& c) {
  if (c == 0) return;
  auto it = coeffs.find(cell);
  if (it == coeffs.end()) {
    coeffs.emplace(cell, c);
  } else {
    it->second += c;
    if (it->second == 0) coeffs.erase(it);
  }
}

Rational SparseChain::coeff(int cell) const {
  auto it = coeffs.find(cell);
  return it == coeffs.end() ? Rational(0) : it->second;
}

Rational SparseChain::norm1() const {
  Rational s(0);
  for (const auto& [cell, c] : coeffs) s += abs(c);
  return s;
}

SparseChain& SparseChain::operator+=(const SparseChain& o) {
  for (const auto& [cell, c] : o.coeffs) add(cell, c);
  return *this;
}

SparseChain& SparseChain::operator-=(const SparseChain& o) {
  for (const auto& [cell, c] : o.coeffs) add(cell, -c);
  return *this;
}

SparseChain& SparseChain::operator*=(const Rational& s) {
  if (s == 0) {
    coeffs.clear();
    return *this;
  }
  for (auto& [cell, c] : coeffs) c *= s;
  return *this;
}

SparseChain SparseChain::operator+(const SparseChain& o) const {
  SparseChain out = *this;
  out += o;
  return out;
}

SparseChain SparseChain::operator-(const SparseChain& o) const {
  SparseChain out = *this;
  out -= o;
  return out;
}

SparseChain SparseChain::operator-() const {
  SparseChain out = *this;
  for (auto& [cell, c] : out.coeffs) c = -c;
  return out;
}

SparseChain boundary(const Graph& g, const SparseChain& c) {
  if (c.dim == 0) return SparseChain(0);  // augmented to zero
  if (c.dim != 1) throw error("graph boundary applies to 0- and 1-chains");
  SparseChain out(0);
  for (const auto& [e, coeff] : c.coeffs) {
    out.add(g.edges[e][1], coeff);
    out.add(g.edges[e][0], -coeff);
  }
  return out;
}

SparseChain boundary(const TwoComplex& cx, const SparseChain& c) {
  if (c.dim != 2) throw error("two-complex boundary applies to 2-chains");
  SparseChain out(1);
  for (const auto& [cell, coeff] : c.coeffs) {
    for (auto [e, sign] : cx.cell_edges[cell]) out.add(e, coeff * sign);
  }
  return out;
}

std::string serialize_chain(const SparseChain& c) {
  std::ostringstream os;
  for (const auto& [cell, coeff] : c.coeffs)
    os << cell << ' ' << coeff.get_num().get_str() << '/'
       << coeff.get_den().get_str() << "\n";
  return os.str();
}

SparseChain path_chain(const Graph& g, const std::vector<int>& path) {
  SparseChain out(1);
  for (size_t i = 0; i + 1 < path.size(); ++i) {
    int e = g.edge_between(path[i], path[i + 1]);
    if (e < 0) throw error("path_chain: consecutive vertices not adjacent");
    out.add(e, g.edges[e][0] == path[i] ? 1 : -1);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Flow decomposition into simple T-paths (and cycles through the walk).

namespace {

struct Residual {
  const Graph& g;
  std::map<int, Rational> flow;  // edge -> signed coefficient, nonzero

  // positive-direction neighbors of u: (v, edge, available)
  struct Out {
    int v, e;
    Rational avail;
  };

  std::vector<Out> outs(int u) const {
    std::vector<Out> res;
    for (auto [v, e] : g.adj[u]) {
      auto it = flow.find(e);
      if (it == flow.end()) continue;
      bool forward = g.edges[e][0] == u;
      if (forward && it->second > 0) res.push_back({v, e, it->second});
      if (!forward && it->second < 0) res.push_back({v, e, -it->second});
    }
    std::sort(res.begin(), res.end(), [](const Out& a, const Out& b) { return a.v < b.v; });
    return res;
  }

  void reduce(int u, int e, const Rational& a) {
    bool forward = g.edges[e][0] == u;
    auto it = flow.find(e);
    it->second += forward ? -a : a;
    if (it->second == 0) flow.erase(it);
  }
};

}  // namespace

std::vector<PathTerm> decompose_chain(const Graph& g, const SparseChain& f,
                                      const std::vector<int>& T) {
  if (f.dim != 1) throw error("decompose_chain applies to 1-chains");
  std::set<int> tset(T.begin(), T.end());

  SparseChain bd = boundary(g, f);
  for (const auto& [v, c] : bd.coeffs)
    if (!tset.count(v))
      throw boundary_not_in_t("boundary vertex " + std::to_string(v) + " not in T");
  if (tset.empty() && !f.zero())
    throw circulation_outside_t("nonzero circulation with empty T");

  Residual res{g, f.coeffs};
  std::map<int, Rational> excess;  // bd: >0 sink, <0 source
  for (const auto& [v, c] : bd.coeffs) excess[v] = c;

  std::vector<PathTerm> terms;

  auto emit = [&](const Rational& a, std::vector<int> verts) {
    for (size_t i = 0; i + 1 < verts.size(); ++i) {
      int e = g.edge_between(verts[i], verts[i + 1]);
      res.reduce(verts[i], e, a);
    }
    terms.push_back(PathTerm{a, std::move(verts)});
  };

  auto walk_from = [&](int start, bool to_sink) {
    std::vector<int> walk{start};
    std::map<int, int> pos{{start, 0}};
    while (true) {
      int u = walk.back();
      if (to_sink && u != start) {
        auto it = excess.find(u);
        if (it != excess.end() && it->second > 0) return walk;  // reached a sink
      }
      auto outs = res.outs(u);
      if (outs.empty()) {
        if (to_sink) throw error("flow conservation violated during decomposition");
        return walk;  // cycle walk exhausted (cannot happen before revisit)
      }
      const auto& step = outs.front();
      auto seen = pos.find(step.v);
      if (seen != pos.end()) {
        // extract the cycle walk[seen->second..] + step back to step.v
        std::vector<int> cyc(walk.begin() + seen->second, walk.end());
        cyc.push_back(step.v);
        Rational a = step.avail;
        for (size_t i = 0; i + 1 < cyc.size(); ++i) {
          int e = g.edge_between(cyc[i], cyc[i + 1]);
          auto it = res.flow.find(e);
          Rational avail = g.edges[e][0] == cyc[i] ? it->second : -it->second;
          a = std::min(a, avail);
        }
        emit(a, cyc);
        // loop-erase back to the revisited vertex
        while (int(walk.size()) > seen->second + 1) {
          pos.erase(walk.back());
          walk.pop_back();
        }
        continue;
      }
      pos[step.v] = int(walk.size());
      walk.push_back(step.v);
    }
  };

  // source-to-sink paths
  while (true) {
    int src = -1;
    for (const auto& [v, c] : excess)
      if (c < 0) {
        src = v;
        break;
      }
    if (src < 0) break;
    auto walk = walk_from(src, true);
    int dst = walk.back();
    Rational a = -excess[src];
    a = std::min(a, excess[dst]);
    for (size_t i = 0; i + 1 < walk.size(); ++i) {
      int e = g.edge_between(walk[i], walk[i + 1]);
      auto it = res.flow.find(e);
      Rational avail = g.edges[e][0] == walk[i] ? it->second : -it->second;
      a = std::min(a, avail);
    }
    emit(a, walk);
    excess[src] += a;
    excess[dst] -= a;
    if (excess[src] == 0) excess.erase(src);
    if (excess.count(dst) && excess[dst] == 0) excess.erase(dst);
  }

  // leftover circulation: extract simple positively-oriented cycles
  long guard = 0;
  while (!res.flow.empty()) {
    if (++guard > 1000000) throw error("cycle extraction failed to terminate");
    int start = -1;
    for (const auto& [e, c] : res.flow) {
      int u = c > 0 ? g.edges[e][0] : g.edges[e][1];
      if (start == -1 || u < start) start = u;
    }
    size_t before = res.flow.size();
    walk_from(start, false);
    if (res.flow.size() >= before)
      throw circulation_outside_t("could not decompose residual circulation");
  }

  return terms;
}

}  // namespace relhyp
