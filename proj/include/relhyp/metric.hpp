#pragma once

#include <cstdint>
#include <vector>

#include "relhyp/graph.hpp"
#include "relhyp/rational.hpp"

namespace relhyp {

// Scale constants derived from a hyperbolicity constant delta.  The default
// ratios are K = 10*delta, L1 = 100*K, L2 = 3*L1; explicit overrides are
// allowed and flagged, and reports must record which regime produced them.
struct Constants {
  long delta = 1;
  long K = 10;
  long L1 = 1000;
  long L2 = 3000;
  bool overridden = false;

  static Constants standard_ratio(long delta) {
    Constants c;
    c.delta = delta;
    c.K = 10 * delta;
    c.L1 = 100 * c.K;
    c.L2 = 3 * c.L1;
    c.overridden = false;
    return c;
  }
  static Constants explicit_constants(long delta, long K, long L1, long L2) {
    Constants c;
    c.delta = delta;
    c.K = K;
    c.L1 = L1;
    c.L2 = L2;
    c.overridden = true;
    return c;
  }
};

// Lazy per-source BFS cache over a fixed graph.
class MetricCache {
 public:
  explicit MetricCache(const Graph& g) : g_(&g), rows_(g.n), have_(g.n, 0) {}

  const Graph& graph() const { return *g_; }
  const std::vector<int>& row(int src) const;
  int distance(int a, int b) const;  // throws disconnected when unreachable

 private:
  const Graph* g_;
  mutable std::vector<std::vector<int>> rows_;
  mutable std::vector<char> have_;
};

int bfs_distance(const MetricCache& m, int a, int b);

// ShortLex-least geodesic under the graph's vertex order, canonicalized so
// that canonical_geodesic(b,a) is the exact reversal.  Returned as the vertex
// sequence from a to b ({a} when a == b).
std::vector<int> canonical_geodesic(const MetricCache& m, int a, int b);

// (x,y)_z = (d(x,z)+d(y,z)-d(x,y))/2, exact.
Rational gromov_product(const MetricCache& m, int x, int y, int z);

struct SamplingBudget {
  int exhaustive_threshold = 150;
  long samples = 10000;
  uint64_t seed = 1;
};

struct DeltaReport {
  long value = 0;          // numerator when half-integers arise (fourpoint)
  long value_den = 1;      // 1 or 2
  long triangles = 0;      // triples/quadruples examined
  bool exhaustive = false;
};

// Thin-triangle constant over triangles with corners in `inner`: the maximum
// diameter of a comparison-tripod fiber, where fibers at integer parameters
// range over all geodesic realizations of the sides.  Exhaustive below the
// budget threshold, deterministic sampling above it.
DeltaReport delta_thin(const MetricCache& m, const std::vector<int>& inner,
                       const SamplingBudget& budget);

// Four-point condition estimator: max over quadruples of half the defect
// between the two largest of the three pairings.
DeltaReport delta_fourpoint(const MetricCache& m, const std::vector<int>& inner,
                            const SamplingBudget& budget);

// Slim-triangle constant over canonical-geodesic triangles: the thin and slim
// constants are recorded separately rather than folded into one inflated
// delta.
DeltaReport delta_slim(const MetricCache& m, const std::vector<int>& inner,
                       const SamplingBudget& budget);

int hausdorff_distance(const MetricCache& m, const std::vector<int>& path1,
                       const std::vector<int>& path2);

// Vertices lying on some geodesic from x to y at parameter t.
std::vector<int> geodesic_slice(const MetricCache& m, int x, int y, int t);

}  // namespace relhyp
