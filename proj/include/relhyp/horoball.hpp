#pragma once

#include <vector>

#include "relhyp/graph.hpp"

namespace relhyp {

// Vertex (v, k) of the combinatorial horoball over a base graph: base vertex
// v of Gamma at depth k.  Depth is not bounded by the explicit truncation;
// vertices beyond it live in the implicit tail.
struct HoroVertex {
  int base = 0;
  int depth = 0;
  bool operator==(const HoroVertex& o) const {
    return base == o.base && depth == o.depth;
  }
  bool operator!=(const HoroVertex& o) const { return !(*this == o); }
  bool operator<(const HoroVertex& o) const {
    return depth != o.depth ? depth < o.depth : base < o.base;
  }
};

enum class HoroEdgeKind { Horizontal0, Horizontal, Vertical };

// Combinatorial horoball H(Gamma), explicit up to `explicit_depth`, implicit
// below.  Horizontal edges at depth k>0 join (v,k),(w,k) iff
// 0 < d_Gamma(v,w) <= 2^k; depth-0 horizontal edges are the base edges;
// vertical edges join consecutive depths.  The metric functions model the
// infinite horoball; they agree with BFS on the truncation whenever the
// optimal descent stays within it.
struct HoroballGraph {
  Graph base;
  std::vector<std::vector<int>> base_dist;
  int explicit_depth = 0;
  Graph g;  // vertex (v,k) -> id k*base.n + v, depths 0..explicit_depth
  std::vector<HoroEdgeKind> edge_kind;

  int nb() const { return base.n; }
  int vid(HoroVertex v) const { return v.depth * base.n + v.base; }
  HoroVertex vertex_at(int id) const { return {id % base.n, id / base.n}; }
  bool in_truncation(HoroVertex v) const {
    return v.depth >= 0 && v.depth <= explicit_depth && v.base >= 0 && v.base < base.n;
  }

  // max base distance a horizontal edge at depth k can span
  long horizontal_span(int k) const;
  bool horizontal_edge_exists(int v, int w, int k) const;
  bool adjacent(HoroVertex a, HoroVertex b) const;
};

HoroballGraph build_horoball(const Graph& base, int explicit_depth);

// Exact distance in the infinite horoball, by minimizing descent depth and
// horizontal hop count over the geodesic normal form.
int horoball_distance(const HoroballGraph& h, HoroVertex a, HoroVertex b);

// Canonical geodesic: vertical from a down to the smallest optimal depth, a
// horizontal segment of <= 3 hops with least intermediate base vertices,
// vertical up to b.
std::vector<HoroVertex> horoball_geodesic(const HoroballGraph& h, HoroVertex a,
                                          HoroVertex b);

enum class CellKind { HorizontalTriangle, VerticalSquare, VerticalPentagon };

// One 2-cell of a filling, carried with the oriented boundary walk it was
// glued along (closed: boundary.front() == boundary.back()).
struct FillingCell {
  CellKind kind;
  std::vector<HoroVertex> boundary;
};

struct HoroFilling {
  std::vector<FillingCell> cells;
  long area() const { return long(cells.size()); }
};

// Fill a combinatorial loop with a disk of area <= 3*|loop|: push minimal
// depth horizontal runs down across pentagons (squares where a pentagon is
// excluded), shortcut across triangles, cap the residue.
HoroFilling horoball_fill(const HoroballGraph& h, const std::vector<HoroVertex>& loop);

// sigma(x,y): vertical segments from x and y to depth R joined by one
// horizontal edge, R = max(N, D(x), D(y)) for 2^(N-1) < d_Gamma <= 2^N,
// bumped to L2+1 when the formula lands exactly on L2.  Degenerates to the
// vertical geodesic when the base vertices agree.
std::vector<HoroVertex> sigma_path(const HoroballGraph& h, HoroVertex x, HoroVertex y,
                                   long L2);

// Serialization: "v w kind" adjacency lines with a base-graph header.
std::string serialize_horoball(const HoroballGraph& h);

// Fillings as cell-id sequences: one line per cell, kind then the boundary
// walk's (base,depth) pairs.
std::string serialize_filling(const HoroFilling& fill);

}  // namespace relhyp
