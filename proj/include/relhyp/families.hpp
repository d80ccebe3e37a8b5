#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "relhyp/cusped.hpp"
#include "relhyp/metric.hpp"

namespace relhyp {

// A point of the cusped ball or an ideal horoball point e_P (sentinel by
// coset index).
struct PPoint {
  int vertex = -1;
  int ideal_coset = -1;

  static PPoint at(int v) { return PPoint{v, -1}; }
  static PPoint ideal(int coset) { return PPoint{-1, coset}; }
  bool ideal() const { return ideal_coset >= 0; }
  bool operator==(const PPoint& o) const {
    return vertex == o.vertex && ideal_coset == o.ideal_coset;
  }
  bool operator!=(const PPoint& o) const { return !(*this == o); }
  bool operator<(const PPoint& o) const {
    if (ideal_coset != o.ideal_coset) return ideal_coset < o.ideal_coset;
    return vertex < o.vertex;
  }
};

enum class FamilyProvenance { C0, CK, Closure };

// Ordered list of L1-horoballs (coset indices) between two points, ordered by
// projection along geodesics from the first endpoint.
struct HoroballFamily {
  PPoint a, b;
  std::vector<int> cosets;
  FamilyProvenance provenance = FamilyProvenance::C0;
};

// Shared workspace over one cusped ball and one constants regime: caches the
// metric and the multi-source BFS rows from each horoball's L1-deep part.
class FamilyContext {
 public:
  FamilyContext(const CuspedBall& b, const Constants& cst);

  const CuspedBall& ball() const { return *b_; }
  const Constants& constants() const { return cst_; }
  MetricCache& metric() { return m_; }

  // distances to the L1-deep part of a coset's horoball
  const std::vector<int>& dist_to_deep(int coset);

  // representative vertex used to compute families for an ideal endpoint:
  // the deep vertex of the coset closest to `towards` (least id on ties)
  int proxy(int coset, int towards) const;
  int resolve(PPoint p, PPoint other) const;

  long projection_key(int from_vertex, int coset);

 private:
  const CuspedBall* b_;
  Constants cst_;
  MetricCache m_;
  std::map<int, std::vector<int>> deep_rows_;
};

HoroballFamily family_C0(FamilyContext& ctx, PPoint a, PPoint x);
HoroballFamily family_CK(FamilyContext& ctx, PPoint a, PPoint x);

struct ClosureResult {
  std::map<std::pair<PPoint, PPoint>, HoroballFamily> families;
  int iterations = 0;
  bool fixpoint = false;
};

// Iterates the repair step D^{i+1} = D^i u M^i u L^i u R^i with the unions
// restricted to the witness pairs; families for both orientations of every
// witness pair are maintained, reversal-consistent.  The iteration starts
// from the witness pairs' C0 families unless a seed map is supplied (the seed
// must cover both orientations of every witness pair).
ClosureResult family_closure(
    FamilyContext& ctx, const std::vector<std::pair<PPoint, PPoint>>& witness,
    int max_iterations = 10,
    const std::map<std::pair<PPoint, PPoint>, std::vector<int>>* seed = nullptr);

struct AxiomReport {
  bool a1 = true, a2 = true, a3 = true, a4 = true, a5 = true, a6 = true, a7 = true;
  long checks = 0;
  std::vector<std::string> counterexamples;
  bool all() const { return a1 && a2 && a3 && a4 && a5 && a6 && a7; }
};

// Verifies (A1)-(A7) on the closure output.  Equivariance (A4) is checked on
// the sampled translations whose images stay inside the witness set; pass an
// oracle and translation words to enable it.
AxiomReport check_axioms(FamilyContext& ctx, const ClosureResult& closure,
                         const GroupOracle* oracle = nullptr,
                         const std::vector<Word>& translations = {});

}  // namespace relhyp
