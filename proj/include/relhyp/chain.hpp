#pragma once

#include <map>
#include <vector>

#include "relhyp/graph.hpp"
#include "relhyp/rational.hpp"

namespace relhyp {

// Finitely supported cellular chain with exact rational coefficients.  Cells
// are vertex ids (dim 0), edge ids (dim 1), or caller-defined 2-cell ids
// (dim 2).  For 1-chains the coefficient refers to the edge's stored
// orientation (tail -> head); traversing an edge backwards contributes -1.
struct SparseChain {
  int dim = 1;
  std::map<int, Rational> coeffs;

  explicit SparseChain(int d = 1) : dim(d) {}

  void add(int cell, const Rational& c);
  Rational coeff(int cell) const;
  Rational norm1() const;
  bool zero() const { return coeffs.empty(); }
  size_t support_size() const { return coeffs.size(); }

  SparseChain& operator+=(const SparseChain& o);
  SparseChain& operator-=(const SparseChain& o);
  SparseChain& operator*=(const Rational& s);
  SparseChain operator+(const SparseChain& o) const;
  SparseChain operator-(const SparseChain& o) const;
  SparseChain operator-() const;
};

// 2-cells attached to a graph, each given by its boundary as (edge, sign)
// pairs; sign +1 means the cell's boundary walk traverses the edge in its
// stored orientation.
struct TwoComplex {
  const Graph* g = nullptr;
  std::vector<std::vector<std::pair<int, int>>> cell_edges;
};

// Cellular boundary; dim 0 chains map to the zero chain.
SparseChain boundary(const Graph& g, const SparseChain& c);
SparseChain boundary(const TwoComplex& cx, const SparseChain& c);

// 1-chain of a vertex path (consecutive vertices adjacent).
SparseChain path_chain(const Graph& g, const std::vector<int>& path);

struct PathTerm {
  Rational coeff;             // > 0
  std::vector<int> vertices;  // simple path, or simple cycle (first == last)
};

// Coherent decomposition f = sum alpha_i p_i with |f|_1 = sum alpha_i |p_i|_1
// into simple directed paths with endpoints in supp(boundary f) (subset of T
// required) and, when circulation is present alongside a nonempty T, simple
// positively-oriented cycles.  An empty-T circulation is rejected.
std::vector<PathTerm> decompose_chain(const Graph& g, const SparseChain& f,
                                      const std::vector<int>& T);

// one "cell-id numerator/denominator" line per support cell
std::string serialize_chain(const SparseChain& c);

}  // namespace relhyp
