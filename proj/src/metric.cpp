#include "relhyp/metric.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <random>

#include "relhyp/errors.hpp"

namespace relhyp {

const std::vector<int>& MetricCache::row(int src) const {
  if (!have_[src]) {
    rows_[src] = bfs_distances(*g_, src);
    have_[src] = 1;
  }
  return rows_[src];
}

int MetricCache::distance(int a, int b) const {
  int d = row(a)[b];
  if (d < 0) throw disconnected("vertices in different components");
  return d;
}

int bfs_distance(const MetricCache& m, int a, int b) { return m.distance(a, b); }

std::vector<int> canonical_geodesic(const MetricCache& m, int a, int b) {
  if (a == b) return {a};
  if (a > b) {
    auto p = canonical_geodesic(m, b, a);
    std::reverse(p.begin(), p.end());
    return p;
  }
  const auto& db = m.row(b);
  if (db[a] < 0) throw disconnected("vertices in different components");
  std::vector<int> path{a};
  int u = a;
  while (u != b) {
    int best = -1;
    for (auto [v, e] : m.graph().adj[u]) {
      if (db[v] == db[u] - 1 && (best == -1 || v < best)) best = v;
    }
    path.push_back(best);
    u = best;
  }
  return path;
}

Rational gromov_product(const MetricCache& m, int x, int y, int z) {
  long num = long(m.distance(x, z)) + m.distance(y, z) - m.distance(x, y);
  return rational(num, 2);
}

std::vector<int> geodesic_slice(const MetricCache& m, int x, int y, int t) {
  std::vector<int> out;
  const auto& dx = m.row(x);
  const auto& dy = m.row(y);
  int d = m.distance(x, y);
  for (int v = 0; v < m.graph().n; ++v)
    if (dx[v] == t && dy[v] == d - t) out.push_back(v);
  return out;
}

namespace {

// On-geodesic vertices of the pair (a,b), bucketed by the parameter measured
// from min(a,b).  Memoized across the triangle sweep: sides repeat heavily.
struct SliceTable {
  const MetricCache& m;
  std::map<std::pair<int, int>, std::vector<std::vector<int>>> memo;

  explicit SliceTable(const MetricCache& mc) : m(mc) {}

  const std::vector<std::vector<int>>& buckets(int a, int b) {
    auto key = std::minmax(a, b);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    const auto& da = m.row(key.first);
    const auto& db = m.row(key.second);
    int d = m.distance(key.first, key.second);
    std::vector<std::vector<int>> bk(d + 1);
    for (int v = 0; v < m.graph().n; ++v)
      if (da[v] >= 0 && da[v] + db[v] == d) bk[da[v]].push_back(v);
    return memo.emplace(key, std::move(bk)).first->second;
  }

  // slice of side (x,y) at parameter t from x
  const std::vector<int>& slice(int x, int y, int t, int dxy) {
    const auto& bk = buckets(x, y);
    return x <= y ? bk[t] : bk[dxy - t];
  }
};

// Max fiber diameter for the leg at corner x of triangle (x,y,z): vertices on
// sides xy and xz mapping to the same tripod point, over all geodesic
// realizations of the sides.
long leg_max(const MetricCache& m, SliceTable& st, int x, int y, int z) {
  int dxy = m.distance(x, y);
  int dxz = m.distance(x, z);
  int dyz = m.distance(y, z);
  int tmax = (dxy + dxz - dyz) / 2;  // floor of the Gromov product (y,z)_x
  long best = 0;
  for (int t = 1; t <= tmax; ++t) {
    const auto& s1 = st.slice(x, y, t, dxy);
    const auto& s2 = st.slice(x, z, t, dxz);
    for (size_t i = 0; i < s1.size(); ++i) {
      const auto& row = m.row(s1[i]);
      for (int v : s2) best = std::max(best, long(row[v]));
      for (size_t j = i + 1; j < s1.size(); ++j)
        best = std::max(best, long(row[s1[j]]));
    }
    for (size_t i = 0; i < s2.size(); ++i) {
      const auto& row = m.row(s2[i]);
      for (size_t j = i + 1; j < s2.size(); ++j)
        best = std::max(best, long(row[s2[j]]));
    }
  }
  return best;
}

long triangle_thin(const MetricCache& m, SliceTable& st, int x, int y, int z) {
  long a = leg_max(m, st, x, y, z);
  long b = leg_max(m, st, y, x, z);
  long c = leg_max(m, st, z, x, y);
  return std::max({a, b, c});
}

}  // namespace

DeltaReport delta_thin(const MetricCache& m, const std::vector<int>& inner,
                       const SamplingBudget& budget) {
  DeltaReport rep;
  size_t k = inner.size();
  if (k < 3) return rep;
  SliceTable st(m);
  if (int(k) <= budget.exhaustive_threshold) {
    rep.exhaustive = true;
    for (size_t i = 0; i < k; ++i)
      for (size_t j = i + 1; j < k; ++j)
        for (size_t l = j + 1; l < k; ++l) {
          rep.value =
              std::max(rep.value, triangle_thin(m, st, inner[i], inner[j], inner[l]));
          ++rep.triangles;
        }
    return rep;
  }
  std::mt19937_64 rng(budget.seed);
  std::uniform_int_distribution<size_t> pick(0, k - 1);
  for (long s = 0; s < budget.samples; ++s) {
    size_t i = pick(rng), j = pick(rng), l = pick(rng);
    if (i == j || j == l || i == l) continue;
    rep.value = std::max(rep.value, triangle_thin(m, st, inner[i], inner[j], inner[l]));
    ++rep.triangles;
  }
  return rep;
}

DeltaReport delta_fourpoint(const MetricCache& m, const std::vector<int>& inner,
                            const SamplingBudget& budget) {
  DeltaReport rep;
  rep.value_den = 2;
  size_t k = inner.size();
  if (k < 4) return rep;
  auto defect = [&](int w, int x, int y, int z) {
    long s1 = long(m.distance(w, x)) + m.distance(y, z);
    long s2 = long(m.distance(w, y)) + m.distance(x, z);
    long s3 = long(m.distance(w, z)) + m.distance(x, y);
    long top = std::max({s1, s2, s3});
    long mid = s1 + s2 + s3 - top - std::min({s1, s2, s3});
    return top - mid;  // twice the four-point delta
  };
  if (int(k) <= budget.exhaustive_threshold) {
    rep.exhaustive = true;
    for (size_t a = 0; a < k; ++a)
      for (size_t b = a + 1; b < k; ++b)
        for (size_t c = b + 1; c < k; ++c)
          for (size_t d = c + 1; d < k; ++d) {
            rep.value = std::max(rep.value, defect(inner[a], inner[b], inner[c], inner[d]));
            ++rep.triangles;
          }
    return rep;
  }
  std::mt19937_64 rng(budget.seed);
  std::uniform_int_distribution<size_t> pick(0, k - 1);
  for (long s = 0; s < budget.samples; ++s) {
    size_t a = pick(rng), b = pick(rng), c = pick(rng), d = pick(rng);
    if (a == b || a == c || a == d || b == c || b == d || c == d) continue;
    rep.value = std::max(rep.value, defect(inner[a], inner[b], inner[c], inner[d]));
    ++rep.triangles;
  }
  return rep;
}

namespace {

long triangle_slim(const MetricCache& m, int x, int y, int z) {
  std::array<std::vector<int>, 3> sides{canonical_geodesic(m, x, y),
                                        canonical_geodesic(m, y, z),
                                        canonical_geodesic(m, z, x)};
  long worst = 0;
  for (int s = 0; s < 3; ++s) {
    const auto& a = sides[s];
    const auto& b = sides[(s + 1) % 3];
    const auto& c = sides[(s + 2) % 3];
    for (int u : a) {
      long best = -1;
      const auto& row = m.row(u);
      for (int w : b)
        if (best < 0 || row[w] < best) best = row[w];
      for (int w : c)
        if (best < 0 || row[w] < best) best = row[w];
      worst = std::max(worst, best);
    }
  }
  return worst;
}

}  // namespace

DeltaReport delta_slim(const MetricCache& m, const std::vector<int>& inner,
                       const SamplingBudget& budget) {
  DeltaReport rep;
  size_t k = inner.size();
  if (k < 3) return rep;
  if (int(k) <= budget.exhaustive_threshold) {
    rep.exhaustive = true;
    for (size_t i = 0; i < k; ++i)
      for (size_t j = i + 1; j < k; ++j)
        for (size_t l = j + 1; l < k; ++l) {
          rep.value = std::max(rep.value, triangle_slim(m, inner[i], inner[j], inner[l]));
          ++rep.triangles;
        }
    return rep;
  }
  std::mt19937_64 rng(budget.seed);
  std::uniform_int_distribution<size_t> pick(0, k - 1);
  for (long s = 0; s < budget.samples; ++s) {
    size_t i = pick(rng), j = pick(rng), l = pick(rng);
    if (i == j || j == l || i == l) continue;
    rep.value = std::max(rep.value, triangle_slim(m, inner[i], inner[j], inner[l]));
    ++rep.triangles;
  }
  return rep;
}

int hausdorff_distance(const MetricCache& m, const std::vector<int>& path1,
                       const std::vector<int>& path2) {
  if (path1.empty() || path2.empty())
    throw error("hausdorff_distance needs nonempty paths");
  int best = 0;
  for (int u : path1) {
    int near = -1;
    const auto& du = m.row(u);
    for (int v : path2) {
      if (du[v] >= 0 && (near == -1 || du[v] < near)) near = du[v];
    }
    if (near < 0) throw disconnected("paths in different components");
    best = std::max(best, near);
  }
  for (int v : path2) {
    int near = -1;
    const auto& dv = m.row(v);
    for (int u : path1) {
      if (dv[u] >= 0 && (near == -1 || dv[u] < near)) near = dv[u];
    }
    best = std::max(best, near);
  }
  return best;
}

}  // namespace relhyp
