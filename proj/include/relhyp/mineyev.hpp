#pragma once

#include <map>

#include "relhyp/chain.hpp"
#include "relhyp/graph.hpp"
#include "relhyp/metric.hpp"

namespace relhyp {

// Mineyev's homological bicombing on a finite graph, built over the canonical
// geodesic bicombing.  The recursion parameter delta is decoupled from any
// measured hyperbolicity constant of the ambient space and must be >= 1.
// Memo tables are pure functions of (graph, delta); queries fill them.
class MineyevState {
 public:
  MineyevState(const Graph& g, long delta);

  const Graph& graph() const { return *g_; }
  const MetricCache& metric() const { return m_; }
  long delta() const { return delta_; }

  // gamma(a,b)(r) for the largest multiple r of 10*delta strictly below
  // d(a,b); pr_a(a) = a.
  int pr(int a, int b);

  // Fl(a,b) = S(a, d(a,b)) cap B(b, delta)
  std::vector<int> flower(int a, int b);

  // convex-combination 0-chain f(a,b)
  const SparseChain& f(int a, int b);

  // star of a 0-chain: uniform average over B(., 7*delta), extended linearly
  SparseChain star(const SparseChain& c);
  SparseChain star_vertex(int v);

  SparseChain fbar(int a, int b);  // star(f(a,b))

  // geodesic-induced chain P, linear in both slots
  SparseChain p_chain(int a, int b);

  const SparseChain& q_prime(int a, int b);

  // antisymmetric bicombing: Q(a,b) = (Q'(a,b) - Q'(b,a)) / 2
  SparseChain q(int a, int b);

  // |Q(a,b) + Q(b,c) + Q(c,a)|_1, exact
  Rational triangle_area(int a, int b, int c);

 private:
  const Graph* g_;
  MetricCache m_;
  long delta_;
  std::map<std::pair<int, int>, SparseChain> f_memo_;
  std::map<std::pair<int, int>, SparseChain> qp_memo_;
  std::map<int, SparseChain> star_memo_;
  std::map<std::pair<int, int>, SparseChain> p_memo_;
};

}  // namespace relhyp
