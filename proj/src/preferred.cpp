#include "relhyp/preferred.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "relhyp/errors.hpp"

namespace relhyp {

namespace {

// canonical geodesic from a vertex into the L1-deep part of a coset
std::vector<int> geodesic_to_deep(FamilyContext& ctx, int from, int coset) {
  const auto& row = ctx.dist_to_deep(coset);
  if (row[from] < 0) throw disconnected("horoball unreachable");
  std::vector<int> path{from};
  int u = from;
  while (row[u] != 0) {
    int best = -1;
    for (auto [v, e] : ctx.ball().g.adj[u])
      if (row[v] == row[u] - 1 && (best == -1 || v < best)) best = v;
    path.push_back(best);
    u = best;
  }
  return path;
}

// canonical geodesic realizing the distance between two deep parts
std::vector<int> geodesic_between_deep(FamilyContext& ctx, int c1, int c2) {
  const auto& row = ctx.dist_to_deep(c1);
  auto deep2 = ctx.ball().deep_part(c2, ctx.constants().L1);
  int target = -1, dist = -1;
  for (int v : deep2) {
    if (row[v] < 0) continue;
    if (target == -1 || row[v] < dist || (row[v] == dist && v < target)) {
      target = v;
      dist = row[v];
    }
  }
  if (target < 0) throw disconnected("horoballs in different components");
  std::vector<int> back{target};
  int u = target;
  while (row[u] != 0) {
    int best = -1;
    for (auto [v, e] : ctx.ball().g.adj[u])
      if (row[v] == row[u] - 1 && (best == -1 || v < best)) best = v;
    back.push_back(best);
    u = best;
  }
  std::reverse(back.begin(), back.end());
  return back;
}

}  // namespace

PreferredPath preferred_path(FamilyContext& ctx, const HoroballFamily& family) {
  const CuspedBall& b = ctx.ball();
  const Constants& cst = ctx.constants();
  PreferredPath p;
  p.a = family.a;
  p.b = family.b;
  p.cosets = family.cosets;

  auto append = [&](const std::vector<int>& seg, SegmentKind kind) {
    if (seg.empty()) return;
    if (p.vertices.empty()) {
      p.seg_start.push_back(0);
      p.seg_kind.push_back(kind);
      p.vertices = seg;
      return;
    }
    if (p.vertices.back() != seg.front())
      throw error("preferred path segments do not meet");
    if (seg.size() == 1) return;
    p.seg_start.push_back(int(p.vertices.size()) - 1);
    p.seg_kind.push_back(kind);
    p.vertices.insert(p.vertices.end(), seg.begin() + 1, seg.end());
  };

  const auto& H = family.cosets;
  if (H.empty()) {
    if (family.a.ideal() || family.b.ideal())
      throw error("an ideal endpoint's horoball must be in the family");
    append(canonical_geodesic(ctx.metric(), family.a.vertex, family.b.vertex),
           SegmentKind::Geodesic);
    return p;
  }
  size_t k = H.size();
  if (family.a.ideal() && family.a.ideal_coset != H.front())
    throw error("ideal start's horoball must come first in the family");
  if (family.b.ideal() && family.b.ideal_coset != H.back())
    throw error("ideal end's horoball must come last in the family");

  // geodesic pieces between consecutive horoballs
  std::vector<std::vector<int>> between;
  for (size_t i = 0; i + 1 < k; ++i)
    between.push_back(geodesic_between_deep(ctx, H[i], H[i + 1]));

  // entry into the first horoball
  std::vector<int> entries(k, -1), exits(k, -1);
  for (size_t i = 0; i + 1 < k; ++i) {
    exits[i] = between[i].front();
    entries[i + 1] = between[i].back();
  }
  std::vector<int> prefix, suffix;
  if (!family.a.ideal()) {
    prefix = geodesic_to_deep(ctx, family.a.vertex, H.front());
    entries[0] = prefix.back();
  }
  if (!family.b.ideal()) {
    suffix = geodesic_to_deep(ctx, family.b.vertex, H.back());
    exits[k - 1] = suffix.back();
    std::reverse(suffix.begin(), suffix.end());
  }

  // assemble; a single-vertex prefix means the start already sits in the
  // first horoball and the sigma piece opens the path
  if (!family.a.ideal() && prefix.size() >= 2) append(prefix, SegmentKind::Geodesic);
  for (size_t i = 0; i < k; ++i) {
    if (i == 0 && family.a.ideal()) {
      // vertical ray from the truncation down to the first exit
      int out = exits[0];
      int member = b.base_of[out];
      std::vector<int> ray;
      for (int d = b.horo_depth; d >= b.depth_of[out]; --d)
        ray.push_back(b.horo_vid(H[0], member, d));
      append(ray, SegmentKind::IdealRay);
    } else if (i == k - 1 && family.b.ideal()) {
      int in = entries[k - 1];
      int member = b.base_of[in];
      std::vector<int> ray;
      for (int d = b.depth_of[in]; d <= b.horo_depth; ++d)
        ray.push_back(b.horo_vid(H[k - 1], member, d));
      append(ray, SegmentKind::IdealRay);
    } else {
      int in = entries[i], out = exits[i];
      if (in != out) {
        append(cusped_sigma(b, in, out, cst.L2), SegmentKind::Sigma);
      } else if (p.vertices.empty()) {
        append({in}, SegmentKind::Sigma);
      }
    }
    if (i + 1 < k) append(between[i], SegmentKind::Geodesic);
  }
  if (!family.b.ideal() && suffix.size() >= 2) append(suffix, SegmentKind::Geodesic);
  return p;
}

QuasiReport quasigeodesic_check(FamilyContext& ctx, const PreferredPath& p) {
  if (p.a.ideal() || p.b.ideal())
    throw error("quasigeodesic_check needs finite endpoints");
  const Constants& c = ctx.constants();
  QuasiReport rep;
  rep.path_length = p.length();
  rep.endpoint_distance = ctx.metric().distance(p.a.vertex, p.b.vertex);
  rep.epsilon = 20 * c.K + 120 * c.delta + 72;
  rep.length_ok = rep.path_length <= 2 * rep.endpoint_distance + rep.epsilon;
  auto geo = canonical_geodesic(ctx.metric(), p.a.vertex, p.b.vertex);
  rep.hausdorff = hausdorff_distance(ctx.metric(), p.vertices, geo);
  rep.hausdorff_bound = c.K + 12 * c.delta + 9;
  rep.hausdorff_ok = rep.hausdorff <= rep.hausdorff_bound;
  return rep;
}

// ---------------------------------------------------------------------------
// Skeletons

Skeleton build_skeleton(FamilyContext& ctx, const std::array<PreferredPath, 3>& sides) {
  const CuspedBall& b = ctx.ball();
  long L2 = ctx.constants().L2;
  Skeleton sk;
  sk.sides = sides;

  // corners: a = sides[0].a, b = sides[1].a, c = sides[2].a; validate closure
  std::array<PPoint, 3> corners{sides[0].a, sides[1].a, sides[2].a};
  if (sides[0].b != corners[1] || sides[1].b != corners[2] || sides[2].b != corners[0])
    throw error("skeleton sides do not close a triangle");
  for (const auto& corner : corners)
    if (!corner.ideal() && b.depth_of[corner.vertex] == L2)
      throw corner_at_l2("triangle corner at depth exactly L2");

  // crossings per side, in path order
  struct Crossing {
    int side, pos, image, coset;
  };
  std::vector<std::vector<Crossing>> crossings(3);
  for (int s = 0; s < 3; ++s) {
    const auto& vs = sides[s].vertices;
    for (size_t i = 0; i < vs.size(); ++i) {
      if (b.depth_of[vs[i]] == long(L2)) {
        if (i + 1 < vs.size() && b.depth_of[vs[i + 1]] == long(L2))
          throw error("preferred path not transverse to the L2 level");
        crossings[s].push_back({s, int(i), vs[i], b.coset_of[vs[i]]});
      }
    }
  }

  // circular vertex list: corner0, side0 crossings, corner1, side1, corner2, side2
  auto corner_vertex = [&](int j) {
    SkeletonVertex v;
    v.corner = j;
    v.image = corners[j].ideal() ? -1 : corners[j].vertex;
    if (!corners[j].ideal() && b.depth_of[v.image] >= 1) v.coset = b.coset_of[v.image];
    if (corners[j].ideal()) v.coset = corners[j].ideal_coset;
    return v;
  };
  std::vector<std::vector<int>> cross_index(3);
  for (int j = 0; j < 3; ++j) {
    sk.verts.push_back(corner_vertex(j));
    for (const auto& cr : crossings[j]) {
      SkeletonVertex v;
      v.side = cr.side;
      v.path_pos = cr.pos;
      v.image = cr.image;
      v.coset = cr.coset;
      cross_index[j].push_back(int(sk.verts.size()));
      sk.verts.push_back(v);
    }
  }

  // which cosets are visited, which corners sit inside them
  std::set<int> cosets_hit;
  for (int s = 0; s < 3; ++s)
    for (const auto& cr : crossings[s]) cosets_hit.insert(cr.coset);
  auto corner_inside = [&](int j, int coset) {
    if (corners[j].ideal()) return corners[j].ideal_coset == coset;
    int v = corners[j].vertex;
    return b.depth_of[v] > L2 && b.coset_of[v] == coset;
  };

  auto pair_up = [&](int iu, int iv) {
    SkeletonPair pr;
    pr.u = iu;
    pr.v = iv;
    int im_u = sk.verts[iu].image, im_v = sk.verts[iv].image;
    pr.ligament = im_u == im_v;
    pr.image_distance = pr.ligament ? 0 : ctx.metric().distance(im_u, im_v);
    sk.max_pair_image_distance = std::max(sk.max_pair_image_distance, pr.image_distance);
    if (pr.ligament)
      ++sk.ligaments;
    else
      ++sk.ribs;
    sk.pairs.push_back(pr);
  };

  for (int coset : cosets_hit) {
    std::array<std::vector<int>, 3> per_side;  // skeleton indices, path order
    for (int s = 0; s < 3; ++s)
      for (size_t i = 0; i < crossings[s].size(); ++i)
        if (crossings[s][i].coset == coset) per_side[s].push_back(cross_index[s][i]);
    int sides_touched = 0;
    for (int s = 0; s < 3; ++s) sides_touched += per_side[s].empty() ? 0 : 1;
    std::vector<int> inside;
    for (int j = 0; j < 3; ++j)
      if (corner_inside(j, coset)) inside.push_back(j);
    if (inside.size() > 1) throw error("two corners inside one L2-horoball");

    std::set<int> used;
    // corner rule: at corner j, incoming side (j+2)%3 pairs its last crossing
    // with the first crossing of outgoing side j
    for (int j = 0; j < 3; ++j) {
      int inc = (j + 2) % 3, out = j;
      if (per_side[inc].empty() || per_side[out].empty()) continue;
      bool corner_in = !inside.empty() && inside[0] == j;
      // for a corner inside the horoball or for multi-side visits, pair at
      // this corner only when the visit actually wraps it
      if (!corner_in && sides_touched < 2) continue;
      if (!corner_in && sides_touched == 2) {
        // dip: the two sides share exactly one corner; pair there
        if (per_side[inc].empty() || per_side[out].empty()) continue;
      }
      int u = per_side[inc].back();
      int v = per_side[out].front();
      if (used.count(u) || used.count(v)) continue;
      pair_up(u, v);
      used.insert(u);
      used.insert(v);
    }
    // leftovers: nibble pair or the outer pair of a dip
    std::vector<int> rest;
    for (int s = 0; s < 3; ++s)
      for (int idx : per_side[s])
        if (!used.count(idx)) rest.push_back(idx);
    if (rest.size() == 2) {
      pair_up(rest[0], rest[1]);
    } else if (!rest.empty()) {
      throw error("unsupported L2-horoball visit pattern (repeated penetration)");
    }

    if (!inside.empty())
      sk.visits[coset] = HoroballVisit::Bite;
    else if (sides_touched == 1)
      sk.visits[coset] = HoroballVisit::Nibble;
    else if (sides_touched == 2)
      sk.visits[coset] = HoroballVisit::Dip;
    else
      sk.visits[coset] = HoroballVisit::Plunge;
  }

  // legs: per corner, the furthest ligament joining its two sides with equal
  // images bounds a leg collapsed by the triangle map
  std::vector<char> in_leg(sk.verts.size(), 0);
  for (int j = 0; j < 3; ++j) {
    int inc = (j + 2) % 3, out = j;
    int best_pair = -1, best_pos = -1;
    for (size_t pi = 0; pi < sk.pairs.size(); ++pi) {
      const auto& pr = sk.pairs[pi];
      if (!pr.ligament) continue;
      const auto& vu = sk.verts[pr.u];
      const auto& vv = sk.verts[pr.v];
      int pos_out = -1;
      if (vu.side == out && vv.side == inc) pos_out = vu.path_pos;
      if (vv.side == out && vu.side == inc) pos_out = vv.path_pos;
      if (pos_out >= 0 && pos_out > best_pos) {
        best_pos = pos_out;
        best_pair = int(pi);
      }
    }
    if (best_pair < 0) continue;
    ++sk.legs;
    const auto& pr = sk.pairs[best_pair];
    int out_pos = sk.verts[pr.u].side == out ? sk.verts[pr.u].path_pos
                                             : sk.verts[pr.v].path_pos;
    int inc_pos = sk.verts[pr.u].side == inc ? sk.verts[pr.u].path_pos
                                             : sk.verts[pr.v].path_pos;
    for (size_t i = 0; i < sk.verts.size(); ++i) {
      const auto& v = sk.verts[i];
      if (v.corner == j) in_leg[i] = 1;
      if (v.side == out && v.path_pos < out_pos) in_leg[i] = 1;
      if (v.side == inc && v.path_pos > inc_pos) in_leg[i] = 1;
    }
  }
  sk.middle_vertex_count = 0;
  for (size_t i = 0; i < sk.verts.size(); ++i)
    if (!in_leg[i]) ++sk.middle_vertex_count;
  return sk;
}

// ---------------------------------------------------------------------------
// Thick region, q, c_abc

ThickRegion make_thick_region(const CuspedBall& b, const Constants& cst, long delta_m) {
  ThickRegion t;
  t.delta_m = delta_m;
  long cap = cst.L2 + cst.L1 + 18 * delta_m;
  t.from_global.assign(b.g.n, -1);
  for (int v = 0; v < b.g.n; ++v) {
    if (b.depth_of[v] <= cap) {
      t.from_global[v] = t.sub.add_vertex();
      t.to_global_vertex.push_back(v);
    }
  }
  for (size_t e = 0; e < b.g.edges.size(); ++e) {
    int u = t.from_global[b.g.edges[e][0]];
    int v = t.from_global[b.g.edges[e][1]];
    if (u >= 0 && v >= 0) {
      t.sub.add_edge(u, v);
      t.to_global_edge.push_back(int(e));
    }
  }
  t.mineyev = std::make_unique<MineyevState>(t.sub, delta_m);
  return t;
}

namespace {

SparseChain map_to_global(const ThickRegion& t, const SparseChain& sub_chain) {
  SparseChain out(1);
  for (const auto& [e, c] : sub_chain.coeffs) out.add(t.to_global_edge[e], c);
  return out;
}

SparseChain q_between(ThickRegion& t, int gu, int gv) {
  int su = t.from_global[gu], sv = t.from_global[gv];
  if (su < 0 || sv < 0)
    throw error("thick bicombing endpoint outside the thick region");
  return map_to_global(t, t.mineyev->q(su, sv));
}

}  // namespace

SparseChain q_bicombing(FamilyContext& ctx, ThickRegion& thick, const PreferredPath& p) {
  const CuspedBall& b = ctx.ball();
  long L2 = ctx.constants().L2;
  std::vector<int> markers{0};
  for (size_t i = 1; i + 1 < p.vertices.size(); ++i)
    if (b.depth_of[p.vertices[i]] == L2) markers.push_back(int(i));
  markers.push_back(int(p.vertices.size()) - 1);

  SparseChain out(1);
  for (size_t mi = 0; mi + 1 < markers.size(); ++mi) {
    int i = markers[mi], j = markers[mi + 1];
    if (i == j) continue;
    bool thin = true;
    for (int k = i; k <= j; ++k)
      if (b.depth_of[p.vertices[k]] < L2) thin = false;
    if (thin) {
      std::vector<int> seg(p.vertices.begin() + i, p.vertices.begin() + j + 1);
      out += path_chain(b.g, seg);
    } else {
      out += q_between(thick, p.vertices[i], p.vertices[j]);
    }
  }
  return out;
}

SparseChain c_abc(FamilyContext& ctx, ThickRegion& thick, const Skeleton& skel) {
  const CuspedBall& b = ctx.ball();
  long L2 = ctx.constants().L2;
  size_t m = skel.verts.size();

  // arc between circular node i and i+1: the image subpath along a side, or
  // the corner junction (length-0)
  auto arc_thin = [&](size_t i) {
    size_t j = (i + 1) % m;
    const auto& u = skel.verts[i];
    const auto& v = skel.verts[j];
    // locate the side and positions this arc spans
    int side, from, to;
    if (u.corner >= 0) {
      side = u.corner;  // outgoing side of corner j is side j
      from = 0;
      to = v.corner >= 0 ? int(skel.sides[side].vertices.size()) - 1 : v.path_pos;
    } else {
      side = u.side;
      from = u.path_pos;
      to = v.corner >= 0 ? int(skel.sides[side].vertices.size()) - 1 : v.path_pos;
    }
    for (int k = from; k <= to; ++k)
      if (b.depth_of[skel.sides[side].vertices[k]] < L2) return false;
    return true;
  };

  // split the circle along the pair chords into regions
  struct Entry {
    int node;
    bool chord_next;  // arc to the next entry is a chord
    size_t arc_index; // original circular arc when not a chord
  };
  std::vector<std::vector<Entry>> regions;
  std::vector<Entry> whole;
  for (size_t i = 0; i < m; ++i) whole.push_back({int(i), false, i});
  regions.push_back(whole);
  for (const auto& pr : skel.pairs) {
    for (size_t ri = 0; ri < regions.size(); ++ri) {
      auto& reg = regions[ri];
      int pu = -1, pv = -1;
      for (size_t i = 0; i < reg.size(); ++i) {
        if (reg[i].node == pr.u) pu = int(i);
        if (reg[i].node == pr.v) pv = int(i);
      }
      if (pu < 0 || pv < 0) continue;
      if (pu > pv) std::swap(pu, pv);
      std::vector<Entry> r1, r2;
      for (int i = pu; i <= pv; ++i) r1.push_back(reg[i]);
      r1.back().chord_next = true;
      for (int i = pv; i < int(reg.size()); ++i) r2.push_back(reg[i]);
      for (int i = 0; i <= pu; ++i) r2.push_back(reg[i]);
      r2.back().chord_next = true;
      regions[ri] = r1;
      regions.push_back(r2);
      break;
    }
  }

  SparseChain out(1);
  for (const auto& reg : regions) {
    bool thick_region = false;
    for (const auto& en : reg) {
      // the last entry's arc closes back to the first; chords are never thick
      if (!en.chord_next) {
        if (!arc_thin(en.arc_index)) thick_region = true;
      }
    }
    if (!thick_region) continue;
    for (size_t i = 0; i < reg.size(); ++i) {
      size_t j = (i + 1) % reg.size();
      int iu = reg[i].node, iv = reg[j].node;
      int gu = skel.verts[iu].image, gv = skel.verts[iv].image;
      if (gu < 0 || gv < 0)
        throw error("ideal corner inside a thick sub-picture");
      if (gu == gv) continue;
      out += q_between(thick, gu, gv);
    }
  }
  return out;
}

bool supported_deep(const CuspedBall& b, const SparseChain& chain, long L2) {
  for (const auto& [e, c] : chain.coeffs) {
    if (b.depth_of[b.g.edges[e][0]] < L2) return false;
    if (b.depth_of[b.g.edges[e][1]] < L2) return false;
  }
  return true;
}

std::string serialize_skeleton(const Skeleton& sk) {
  std::ostringstream os;
  auto describe = [&](int idx) {
    const auto& v = sk.verts[idx];
    std::ostringstream s;
    if (v.corner >= 0)
      s << "corner" << v.corner;
    else
      s << "side" << v.side << ":" << v.path_pos;
    s << "->" << v.image;
    return s.str();
  };
  for (size_t i = 0; i < sk.verts.size(); ++i) {
    size_t j = (i + 1) % sk.verts.size();
    os << "boundary " << describe(int(i)) << ' ' << describe(int(j)) << "\n";
  }
  for (const auto& pr : sk.pairs) {
    os << (pr.ligament ? "ligament " : "rib ") << describe(pr.u) << ' '
       << describe(pr.v);
    if (!pr.ligament)
      os << " image-edge " << sk.verts[pr.u].image << '-' << sk.verts[pr.v].image;
    os << "\n";
  }
  os << "legs " << sk.legs << " middle-vertices " << sk.middle_vertex_count << "\n";
  return os.str();
}

}  // namespace relhyp
