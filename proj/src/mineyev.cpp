#include "relhyp/mineyev.hpp"

#include <algorithm>

#include "relhyp/errors.hpp"

namespace relhyp {

MineyevState::MineyevState(const Graph& g, long delta)
    : g_(&g), m_(g), delta_(delta) {
  if (delta < 1) throw error("mineyev delta must be a positive integer");
}

int MineyevState::pr(int a, int b) {
  if (a == b) return a;
  long d = m_.distance(a, b);
  long step = 10 * delta_;
  long r = ((d - 1) / step) * step;  // largest multiple strictly below d
  auto geo = canonical_geodesic(m_, a, b);
  return geo[size_t(r)];
}

std::vector<int> MineyevState::flower(int a, int b) {
  std::vector<int> out;
  long d = m_.distance(a, b);
  const auto& da = m_.row(a);
  const auto& db = m_.row(b);
  for (int v = 0; v < g_->n; ++v)
    if (da[v] == d && db[v] >= 0 && db[v] <= delta_) out.push_back(v);
  return out;
}

const SparseChain& MineyevState::f(int a, int b) {
  auto key = std::make_pair(a, b);
  auto it = f_memo_.find(key);
  if (it != f_memo_.end()) return it->second;

  long d = a == b ? 0 : m_.distance(a, b);
  long step = 10 * delta_;
  SparseChain out(0);
  if (d <= step) {
    out.add(b, 1);
  } else if (d % step != 0) {
    out = f(a, pr(a, b));
  } else {
    auto fl = flower(a, b);
    Rational w(1, long(fl.size()));
    for (int x : fl) {
      SparseChain part = f(a, pr(a, x));
      part *= w;
      out += part;
    }
  }
  return f_memo_.emplace(key, std::move(out)).first->second;
}

SparseChain MineyevState::star_vertex(int v) {
  auto it = star_memo_.find(v);
  if (it == star_memo_.end()) {
    SparseChain s(0);
    const auto& dv = m_.row(v);
    std::vector<int> ball;
    for (int u = 0; u < g_->n; ++u)
      if (dv[u] >= 0 && dv[u] <= 7 * delta_) ball.push_back(u);
    Rational w(1, long(ball.size()));
    for (int u : ball) s.add(u, w);
    it = star_memo_.emplace(v, std::move(s)).first;
  }
  return it->second;
}

SparseChain MineyevState::star(const SparseChain& c) {
  SparseChain out(0);
  for (const auto& [v, coeff] : c.coeffs) {
    SparseChain part = star_vertex(v);
    part *= coeff;
    out += part;
  }
  return out;
}

SparseChain MineyevState::fbar(int a, int b) { return star(f(a, b)); }

SparseChain MineyevState::p_chain(int a, int b) {
  if (a == b) return SparseChain(1);
  auto key = std::make_pair(a, b);
  auto it = p_memo_.find(key);
  if (it == p_memo_.end()) {
    auto geo = canonical_geodesic(m_, a, b);
    it = p_memo_.emplace(key, path_chain(*g_, geo)).first;
  }
  return it->second;
}

const SparseChain& MineyevState::q_prime(int a, int b) {
  auto key = std::make_pair(a, b);
  auto it = qp_memo_.find(key);
  if (it != qp_memo_.end()) return it->second;

  long d = a == b ? 0 : m_.distance(a, b);
  SparseChain out(1);
  if (d <= 10 * delta_) {
    out = p_chain(a, b);
  } else {
    SparseChain back = fbar(b, a);
    for (const auto& [x, coeff] : back.coeffs) {
      if (m_.distance(a, x) >= d)
        throw error("mineyev recursion is not decreasing; graph too far from hyperbolic");
      SparseChain part = q_prime(a, x);
      part *= coeff;
      out += part;
      SparseChain leg = p_chain(x, b);
      leg *= coeff;
      out += leg;
    }
  }
  return qp_memo_.emplace(key, std::move(out)).first->second;
}

SparseChain MineyevState::q(int a, int b) {
  if (a == b) return SparseChain(1);
  SparseChain out = q_prime(a, b);
  out -= q_prime(b, a);
  out *= Rational(1, 2);
  return out;
}

Rational MineyevState::triangle_area(int a, int b, int c) {
  SparseChain s = q(a, b);
  s += q(b, c);
  s += q(c, a);
  return s.norm1();
}

}  // namespace relhyp
