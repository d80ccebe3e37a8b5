#include "relhyp/families.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "relhyp/errors.hpp"

namespace relhyp {

FamilyContext::FamilyContext(const CuspedBall& b, const Constants& cst)
    : b_(&b), cst_(cst), m_(b.g) {}

const std::vector<int>& FamilyContext::dist_to_deep(int coset) {
  auto it = deep_rows_.find(coset);
  if (it == deep_rows_.end()) {
    auto deep = b_->deep_part(coset, cst_.L1);
    if (deep.empty())
      throw truncation_unsound("L1 exceeds the horoball truncation depth");
    it = deep_rows_.emplace(coset, bfs_distances_multi(b_->g, deep)).first;
  }
  return it->second;
}

int FamilyContext::proxy(int coset, int towards) const {
  auto deep = b_->deep_part(coset, cst_.L1);
  if (deep.empty()) throw truncation_unsound("L1 exceeds the horoball truncation depth");
  int best = -1, bestd = -1;
  const auto& row = m_.row(towards);
  for (int v : deep) {
    if (row[v] < 0) continue;
    if (best == -1 || row[v] < bestd || (row[v] == bestd && v < best)) {
      best = v;
      bestd = row[v];
    }
  }
  if (best < 0) throw disconnected("ideal endpoint's horoball unreachable");
  return best;
}

int FamilyContext::resolve(PPoint p, PPoint other) const {
  if (!p.ideal()) return p.vertex;
  int towards;
  if (!other.ideal()) {
    towards = other.vertex;
  } else {
    // двух ideal endpoints: aim at the other coset's least deep vertex
    auto deep = b_->deep_part(other.ideal_coset, cst_.L1);
    if (deep.empty()) throw truncation_unsound("L1 exceeds the truncation depth");
    towards = *std::min_element(deep.begin(), deep.end());
  }
  return proxy(p.ideal_coset, towards);
}

long FamilyContext::projection_key(int from_vertex, int coset) {
  return dist_to_deep(coset)[from_vertex];
}

namespace {

void sort_family(FamilyContext& ctx, int from_vertex, std::vector<int>& cosets) {
  std::sort(cosets.begin(), cosets.end(), [&](int c1, int c2) {
    long k1 = ctx.projection_key(from_vertex, c1);
    long k2 = ctx.projection_key(from_vertex, c2);
    if (k1 != k2) return k1 < k2;
    return c1 < c2;
  });
}

}  // namespace

HoroballFamily family_C0(FamilyContext& ctx, PPoint a, PPoint x) {
  if (a == x) throw error("family endpoints must differ");
  const CuspedBall& b = ctx.ball();
  long L1 = ctx.constants().L1;
  int va = ctx.resolve(a, x);
  int vx = ctx.resolve(x, a);
  HoroballFamily fam;
  fam.a = a;
  fam.b = x;
  fam.provenance = FamilyProvenance::C0;
  if (va == vx) {
    // both endpoints resolved into the same spot (deep representatives of the
    // same horoball); the family is that horoball alone
    std::set<int> forced;
    if (a.ideal()) forced.insert(a.ideal_coset);
    if (x.ideal()) forced.insert(x.ideal_coset);
    fam.cosets.assign(forced.begin(), forced.end());
    return fam;
  }
  const auto& da = ctx.metric().row(va);
  const auto& dx = ctx.metric().row(vx);
  int d = ctx.metric().distance(va, vx);
  std::set<int> hit;
  for (int v = 0; v < b.g.n; ++v) {
    if (b.depth_of[v] < L1) continue;
    if (da[v] >= 0 && da[v] + dx[v] == d) hit.insert(b.coset_of[v]);
  }
  if (a.ideal()) hit.insert(a.ideal_coset);
  if (x.ideal()) hit.insert(x.ideal_coset);
  fam.cosets.assign(hit.begin(), hit.end());
  sort_family(ctx, va, fam.cosets);
  return fam;
}

HoroballFamily family_CK(FamilyContext& ctx, PPoint a, PPoint x) {
  if (a == x) throw error("family endpoints must differ");
  const CuspedBall& b = ctx.ball();
  long L1 = ctx.constants().L1;
  long K = ctx.constants().K;
  if (L1 > b.horo_depth) {
    // the truncation holds no L1-horoballs at all
    HoroballFamily fam;
    fam.a = a;
    fam.b = x;
    fam.provenance = FamilyProvenance::CK;
    return fam;
  }
  int va = ctx.resolve(a, x);
  int vx = ctx.resolve(x, a);
  HoroballFamily fam;
  fam.a = a;
  fam.b = x;
  fam.provenance = FamilyProvenance::CK;
  if (va == vx) {
    std::set<int> forced;
    if (a.ideal()) forced.insert(a.ideal_coset);
    if (x.ideal()) forced.insert(x.ideal_coset);
    fam.cosets.assign(forced.begin(), forced.end());
    return fam;
  }
  int d = ctx.metric().distance(va, vx);
  std::set<int> hit;
  for (size_t ci = 0; ci < b.cosets.size(); ++ci) {
    const auto& row = ctx.dist_to_deep(int(ci));
    if (row[va] > d + K + 1 && row[vx] > d + K + 1) continue;  // cannot matter
    std::vector<char> allowed(b.g.n, 0);
    for (int v = 0; v < b.g.n; ++v) allowed[v] = row[v] > K;
    bool meets_every;
    if (!allowed[va] || !allowed[vx]) {
      meets_every = true;  // an endpoint already sits in the K-neighborhood
    } else {
      auto avoid = bfs_distances_restricted(b.g, va, allowed);
      meets_every = avoid[vx] < 0 || avoid[vx] > d;
    }
    if (meets_every) hit.insert(int(ci));
  }
  if (a.ideal()) hit.insert(a.ideal_coset);
  if (x.ideal()) hit.insert(x.ideal_coset);
  fam.cosets.assign(hit.begin(), hit.end());
  sort_family(ctx, va, fam.cosets);
  return fam;
}

// ---------------------------------------------------------------------------
// Closure

namespace {

using FamilyMap = std::map<std::pair<PPoint, PPoint>, HoroballFamily>;

std::vector<int> positions_of(const std::vector<int>& fam, int coset) {
  std::vector<int> out;
  for (size_t i = 0; i < fam.size(); ++i)
    if (fam[i] == coset) out.push_back(int(i));
  return out;
}

bool insert_sorted(FamilyContext& ctx, HoroballFamily& fam, int from_vertex,
                   const std::vector<int>& add) {
  bool changed = false;
  for (int c : add) {
    if (std::find(fam.cosets.begin(), fam.cosets.end(), c) == fam.cosets.end()) {
      fam.cosets.push_back(c);
      changed = true;
    }
  }
  if (changed) sort_family(ctx, from_vertex, fam.cosets);
  return changed;
}

}  // namespace

ClosureResult family_closure(
    FamilyContext& ctx, const std::vector<std::pair<PPoint, PPoint>>& witness,
    int max_iterations,
    const std::map<std::pair<PPoint, PPoint>, std::vector<int>>* seed) {
  ClosureResult res;
  std::vector<std::pair<PPoint, PPoint>> pairs;
  for (const auto& [a, b] : witness) {
    pairs.push_back({a, b});
    pairs.push_back({b, a});
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  for (const auto& [a, b] : pairs) {
    if (seed != nullptr) {
      auto it = seed->find({a, b});
      if (it == seed->end()) throw error("closure seed misses a witness orientation");
      HoroballFamily fam;
      fam.a = a;
      fam.b = b;
      fam.cosets = it->second;
      res.families[{a, b}] = fam;
    } else {
      res.families[{a, b}] = family_C0(ctx, a, b);
    }
  }
  for (auto& [key, fam] : res.families) fam.provenance = FamilyProvenance::Closure;

  for (int iter = 1; iter <= max_iterations; ++iter) {
    bool changed = false;
    FamilyMap next = res.families;
    for (auto& [key, fam] : next) {
      const auto& [a, b] = key;
      int va = ctx.resolve(a, b);
      const auto& dab = res.families.at(key).cosets;
      // M: interior intervals of other pairs sharing two horoballs
      for (const auto& [okey, ofam] : res.families) {
        if (okey == key) continue;
        const auto& dcd = ofam.cosets;
        std::vector<int> shared;
        for (int c : dab)
          if (std::find(dcd.begin(), dcd.end(), c) != dcd.end()) shared.push_back(c);
        if (shared.size() >= 2) {
          for (size_t i = 0; i < shared.size(); ++i)
            for (size_t j = i + 1; j < shared.size(); ++j) {
              auto pa = positions_of(dcd, shared[i]);
              auto pb = positions_of(dcd, shared[j]);
              int lo = std::min(pa[0], pb[0]), hi = std::max(pa[0], pb[0]);
              std::vector<int> slice(dcd.begin() + lo, dcd.begin() + hi + 1);
              changed |= insert_sorted(ctx, fam, va, slice);
            }
        }
        // L: shared first endpoint
        if (okey.first == a) {
          for (int c : dab) {
            auto pos = positions_of(dcd, c);
            if (pos.empty()) continue;
            std::vector<int> prefix(dcd.begin(), dcd.begin() + pos[0] + 1);
            changed |= insert_sorted(ctx, fam, va, prefix);
          }
        }
        // R: shared second endpoint
        if (okey.second == b) {
          for (int c : dab) {
            auto pos = positions_of(dcd, c);
            if (pos.empty()) continue;
            std::vector<int> suffix(dcd.begin() + pos[0], dcd.end());
            changed |= insert_sorted(ctx, fam, va, suffix);
          }
        }
      }
    }
    // reversal consistency: merge both orientations
    for (auto& [key, fam] : next) {
      auto rkey = std::make_pair(key.second, key.first);
      auto& rfam = next.at(rkey);
      int va = ctx.resolve(key.first, key.second);
      changed |= insert_sorted(ctx, fam, va, rfam.cosets);
    }
    res.iterations = iter;
    if (!changed) {
      res.fixpoint = true;
      res.families = std::move(next);
      break;
    }
    res.families = std::move(next);
  }
  return res;
}

// ---------------------------------------------------------------------------
// Axioms

AxiomReport check_axioms(FamilyContext& ctx, const ClosureResult& closure,
                         const GroupOracle* oracle,
                         const std::vector<Word>& translations) {
  AxiomReport rep;
  auto complain = [&](bool& flag, const std::string& msg) {
    flag = false;
    if (rep.counterexamples.size() < 20) rep.counterexamples.push_back(msg);
  };
  auto describe = [&](PPoint p) {
    std::ostringstream os;
    if (p.ideal())
      os << "e_" << p.ideal_coset;
    else
      os << "v" << p.vertex;
    return os.str();
  };

  for (const auto& [key, fam] : closure.families) {
    const auto& [a, b] = key;
    ++rep.checks;
    // A1: C0 subset, order respected
    auto c0 = family_C0(ctx, a, b);
    size_t at = 0;
    bool ordered_subset = true;
    for (int c : c0.cosets) {
      while (at < fam.cosets.size() && fam.cosets[at] != c) ++at;
      if (at == fam.cosets.size()) {
        ordered_subset = false;
        break;
      }
    }
    if (!ordered_subset)
      complain(rep.a1, "A1 fails for (" + describe(a) + "," + describe(b) + ")");
    // A2: contained in C^K
    auto ck = family_CK(ctx, a, b);
    for (int c : fam.cosets) {
      if (std::find(ck.cosets.begin(), ck.cosets.end(), c) == ck.cosets.end()) {
        complain(rep.a2, "A2 fails for (" + describe(a) + "," + describe(b) +
                             ") horoball " + std::to_string(c));
        break;
      }
    }
    // A3: reversal
    auto rit = closure.families.find({b, a});
    if (rit != closure.families.end()) {
      auto rev = rit->second.cosets;
      std::reverse(rev.begin(), rev.end());
      if (rev != fam.cosets)
        complain(rep.a3, "A3 fails for (" + describe(a) + "," + describe(b) + ")");
    }
  }

  // A4: equivariance under the sampled translations
  if (oracle != nullptr) {
    const CuspedBall& b = ctx.ball();
    auto translate_point = [&](const Word& g, PPoint p) -> std::optional<PPoint> {
      if (!p.ideal()) {
        auto v = translate_vertex(b, *oracle, g, p.vertex);
        if (!v) return std::nullopt;
        return PPoint::at(*v);
      }
      // translate the coset through its transversal member
      const auto& c = b.cosets[p.ideal_coset];
      auto w = translate_vertex(b, *oracle, g, c.members[0]);
      if (!w) return std::nullopt;
      for (size_t ci = 0; ci < b.cosets.size(); ++ci) {
        if (b.cosets[ci].parabolic != c.parabolic) continue;
        const auto& m = b.cosets[ci].members;
        if (std::binary_search(m.begin(), m.end(), *w)) return PPoint::ideal(int(ci));
      }
      return std::nullopt;
    };
    auto translate_coset = [&](const Word& g, int coset) -> std::optional<int> {
      const auto& c = b.cosets[coset];
      auto w = translate_vertex(b, *oracle, g, c.members[0]);
      if (!w) return std::nullopt;
      for (size_t ci = 0; ci < b.cosets.size(); ++ci) {
        if (b.cosets[ci].parabolic != c.parabolic) continue;
        const auto& m = b.cosets[ci].members;
        if (std::binary_search(m.begin(), m.end(), *w)) return int(ci);
      }
      return std::nullopt;
    };
    for (const Word& g : translations) {
      for (const auto& [key, fam] : closure.families) {
        auto ga = translate_point(g, key.first);
        auto gb = translate_point(g, key.second);
        if (!ga || !gb) continue;
        auto it = closure.families.find({*ga, *gb});
        if (it == closure.families.end()) continue;
        std::vector<int> image;
        bool total = true;
        for (int c : fam.cosets) {
          auto gc = translate_coset(g, c);
          if (!gc) {
            total = false;
            break;
          }
          image.push_back(*gc);
        }
        if (!total) continue;
        ++rep.checks;
        if (image != it->second.cosets)
          complain(rep.a4, "A4 fails for (" + describe(key.first) + "," +
                               describe(key.second) + ") under a translation");
      }
    }
  }

  // A5/A6/A7 over witness pairs
  for (const auto& [k1, f1] : closure.families) {
    for (const auto& [k2, f2] : closure.families) {
      if (k1 == k2) continue;
      // A5: common interior intervals agree
      std::vector<int> shared;
      for (int c : f1.cosets)
        if (std::find(f2.cosets.begin(), f2.cosets.end(), c) != f2.cosets.end())
          shared.push_back(c);
      if (shared.size() >= 2) {
        for (size_t i = 0; i < shared.size(); ++i)
          for (size_t j = i + 1; j < shared.size(); ++j) {
            auto slice_of = [&](const std::vector<int>& fam) {
              auto p1 = positions_of(fam, shared[i])[0];
              auto p2 = positions_of(fam, shared[j])[0];
              int lo = std::min(p1, p2), hi = std::max(p1, p2);
              std::vector<int> s(fam.begin() + lo, fam.begin() + hi + 1);
              std::sort(s.begin(), s.end());
              return s;
            };
            ++rep.checks;
            if (slice_of(f1.cosets) != slice_of(f2.cosets))
              complain(rep.a5, "A5 fails between (" + describe(k1.first) + "," +
                                   describe(k1.second) + ") and (" +
                                   describe(k2.first) + "," + describe(k2.second) +
                                   ")");
          }
      }
      // A6: shared first endpoint, prefixes agree as ordered lists
      if (k1.first == k2.first) {
        for (int c : shared) {
          auto p1 = positions_of(f1.cosets, c)[0];
          auto p2 = positions_of(f2.cosets, c)[0];
          std::vector<int> pre1(f1.cosets.begin(), f1.cosets.begin() + p1 + 1);
          std::vector<int> pre2(f2.cosets.begin(), f2.cosets.begin() + p2 + 1);
          ++rep.checks;
          if (pre1 != pre2)
            complain(rep.a6, "A6 fails at (" + describe(k1.first) + ") horoball " +
                                 std::to_string(c));
        }
      }
      // A7: shared second endpoint, suffixes agree
      if (k1.second == k2.second) {
        for (int c : shared) {
          auto p1 = positions_of(f1.cosets, c)[0];
          auto p2 = positions_of(f2.cosets, c)[0];
          std::vector<int> suf1(f1.cosets.begin() + p1, f1.cosets.end());
          std::vector<int> suf2(f2.cosets.begin() + p2, f2.cosets.end());
          ++rep.checks;
          if (suf1 != suf2)
            complain(rep.a7, "A7 fails at (" + describe(k1.second) + ") horoball " +
                                 std::to_string(c));
        }
      }
    }
  }
  return rep;
}

}  // namespace relhyp
