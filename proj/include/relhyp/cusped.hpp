#pragma once

#include <optional>
#include <string>
#include <vector>

#include "relhyp/graph.hpp"
#include "relhyp/horoball.hpp"
#include "relhyp/oracle.hpp"
#include "relhyp/presentation.hpp"

namespace relhyp {

enum class CuspedEdgeKind { Cayley, Horizontal, Vertical };

// One peripheral coset gP_i met by the ball, together with its induced
// subgraph (exactly the base graph of the glued horoball).
struct CosetHoroball {
  int parabolic = 0;              // 1-based parabolic id
  int transversal = 0;            // cayley vertex id of the ShortLex-least member
  std::vector<int> members;       // cayley vertex ids, increasing
  Graph subgraph;                 // vertices indexed like members
  std::vector<std::vector<int>> sub_dist;
  int horo_start = 0;             // global id of (p=0, k=1)
};

// Finite truncation of the cusped space X(G,P,S): the Cayley ball of radius R
// with a combinatorial horoball glued along every peripheral coset it meets,
// truncated at depth T.  Vertices: the Cayley ball first (ShortLex order of
// normal forms), then per coset in (parabolic, transversal) order, the depth
// levels k = 1..T each in member order.
struct CuspedBall {
  RelativePresentation rp;
  int cayley_radius = 0;
  int horo_depth = 0;
  CayleyBall ball;
  Graph g;
  std::vector<int> depth_of;
  std::vector<int> coset_of;  // -1 on the Cayley part
  std::vector<int> base_of;   // member index at depth >= 1, cayley id at depth 0
  std::vector<CosetHoroball> cosets;
  std::vector<CuspedEdgeKind> edge_kind;

  int n_cayley() const { return ball.g.n; }
  int horo_vid(int coset, int member_index, int k) const;
  int depth(int v) const { return depth_of[v]; }
  std::string vertex_label(const GroupOracle& o, int v) const;

  // vertices of the L-deep part of one coset's horoball (depth >= max(L,1))
  std::vector<int> deep_part(int coset, long L) const;

  // inner ball: vertices whose Cayley-projection distance from the center is
  // at most cayley_radius - margin and whose depth leaves `margin` headroom
  std::vector<int> inner_vertices(int margin) const;
};

CuspedBall build_cusped_ball(const GroupOracle& o, const RelativePresentation& rp,
                             int R, int T, long max_vertices = 500000);

// L-horoball id (coset index) containing v, or nullopt when D(v) < max(L,1)
// and L >= 1.  For L = 0 and a Cayley vertex, the 0-horoball of its coset for
// the lowest-numbered parabolic.
std::optional<int> l_horoball(const CuspedBall& b, int v, long L);

// left action of a group element on the ball; nullopt when the image leaves
// the truncation
std::optional<int> translate_vertex(const CuspedBall& b, const GroupOracle& o,
                                    const Word& g, int v);

// sigma path through one coset's horoball between two of its vertices
// (depths >= 0), as global vertex ids; raises truncation_unsound when the
// required depth exceeds the truncation
std::vector<int> cusped_sigma(const CuspedBall& b, int u, int v, long L2);

struct ConedOffGraph {
  Graph g;
  int n_cayley = 0;
  // cone vertex ids aligned with `cosets` of the source ball
  std::vector<int> cone_vertex;
  std::vector<std::pair<int, int>> cone_label;  // (parabolic, transversal)
};

ConedOffGraph build_coned_off(const GroupOracle& o, const RelativePresentation& rp,
                              int R, long max_vertices = 500000);

std::string serialize_cusped(const CuspedBall& b, const GroupOracle& o);

}  // namespace relhyp
