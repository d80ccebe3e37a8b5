#pragma once

#include <array>
#include <memory>

#include "relhyp/chain.hpp"
#include "relhyp/families.hpp"
#include "relhyp/mineyev.hpp"

namespace relhyp {

enum class SegmentKind { Geodesic, Sigma, IdealRay };

// Preferred path between two points: canonical geodesic pieces between the
// consecutive horoballs of the family, sigma paths through them.  For ideal
// endpoints the path begins or ends with a vertical ray truncated at the
// ball's depth.
struct PreferredPath {
  PPoint a, b;
  std::vector<int> cosets;         // family used
  std::vector<int> vertices;       // global vertex ids, in order
  std::vector<int> seg_start;      // index into vertices per segment
  std::vector<SegmentKind> seg_kind;
  long length() const { return long(vertices.size()) - 1; }
};

PreferredPath preferred_path(FamilyContext& ctx, const HoroballFamily& family);

struct QuasiReport {
  long path_length = 0;
  long endpoint_distance = 0;
  long epsilon = 0;  // 20K + 120delta + 72
  bool length_ok = true;
  int hausdorff = 0;
  long hausdorff_bound = 0;  // K + 12delta + 9
  bool hausdorff_ok = true;
};

// Corollary-level checks: |p| <= 2d + epsilon and Hausdorff(p, geodesic)
// within bound.  Finite endpoints only.
QuasiReport quasigeodesic_check(FamilyContext& ctx, const PreferredPath& p);

// ---------------------------------------------------------------------------
// Skeletons

enum class HoroballVisit { Bite, Nibble, Dip, Plunge };

struct SkeletonVertex {
  int side = -1;     // 0=ab, 1=bc, 2=ca; -1 for corners
  int corner = -1;   // 0,1,2 when a corner
  int path_pos = -1; // index into the side's vertex list (crossings)
  int image = -1;    // global vertex id (crossings); -1 for ideal corners
  int coset = -1;    // crossing's horoball
};

struct SkeletonPair {
  int u = 0, v = 0;  // indices into the circular vertex list
  bool ligament = false;
  int image_distance = 0;
};

struct Skeleton {
  std::array<PreferredPath, 3> sides;  // ab, bc, ca
  std::vector<SkeletonVertex> verts;   // circular order around the triangle
  std::vector<SkeletonPair> pairs;
  std::map<int, HoroballVisit> visits;  // coset -> class
  int ribs = 0;
  int ligaments = 0;
  int max_pair_image_distance = 0;
  int legs = 0;
  int middle_vertex_count = 0;
};

Skeleton build_skeleton(FamilyContext& ctx, const std::array<PreferredPath, 3>& sides);

// ---------------------------------------------------------------------------
// The composite bicombing q and the triangle defect c_abc

// Mineyev state over the thick part D^{-1}[0, L2 + L1 + 18*delta_m].
struct ThickRegion {
  Graph sub;
  std::vector<int> to_global_vertex;
  std::vector<int> to_global_edge;
  std::vector<int> from_global;  // -1 outside
  long delta_m = 1;
  std::unique_ptr<MineyevState> mineyev;
};

ThickRegion make_thick_region(const CuspedBall& b, const Constants& cst, long delta_m);

// q(a,b): the preferred-path chain with every thick sub-chain replaced by
// Mineyev's Q between its endpoints; returned over the full ball's edges.
SparseChain q_bicombing(FamilyContext& ctx, ThickRegion& thick, const PreferredPath& p);

// c_abc: sum of Q-triangle chains over the thick sub-pictures of the skeleton.
SparseChain c_abc(FamilyContext& ctx, ThickRegion& thick, const Skeleton& skel);

// true iff every support edge of the chain has both endpoints at depth >= L2
bool supported_deep(const CuspedBall& b, const SparseChain& chain, long L2);

// annotated edge list: boundary arcs, ligaments, and ribs with their images
std::string serialize_skeleton(const Skeleton& sk);

}  // namespace relhyp
