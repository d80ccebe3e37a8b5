#pragma once

#include <memory>
#include <vector>

#include "relhyp/graph.hpp"
#include "relhyp/presentation.hpp"
#include "relhyp/rewrite.hpp"

namespace relhyp {

enum class OracleBacking { FreeGroup, FreeProductOfParabolics, Rewriting };

// Normal forms for the group of a relative presentation.  The backing is
// chosen by structure: no relators and no parabolics gives free reduction; no
// relators with parabolics partitioning part of the generating set gives
// exact free-product normal forms (alternating syllables, each syllable in
// its factor's normal form); otherwise Knuth-Bendix.
class GroupOracle {
 public:
  static GroupOracle make(const RelativePresentation& rp, int max_rules = 5000,
                          int max_length = 64);

  OracleBacking backing() const { return backing_; }
  bool complete() const;
  const RelativePresentation& presentation() const { return rp_; }
  const RewriteSystem* rewrite_system() const {
    return rs_ ? rs_.get() : nullptr;
  }

  // Canonical (ShortLex-geodesic) representative; normal_form of the identity
  // is the empty word.  Throws incomplete_oracle when the backing cannot
  // certify.
  Word normal_form(const Word& w) const;
  bool is_identity(const Word& w) const { return normal_form(w).empty(); }
  bool equal(const Word& a, const Word& b) const;

 private:
  RelativePresentation rp_;
  OracleBacking backing_ = OracleBacking::FreeGroup;
  std::shared_ptr<RewriteSystem> rs_;
  // free-product data: factor index per generator (0 = free rank-1 factor of
  // its own), set up in make()
  std::vector<int> factor_of_gen_;

  Word free_product_normal_form(const Word& w) const;
};

// Ball of the Cayley graph about the identity.  Vertices are indexed in
// ShortLex order of their normal forms, vertex 0 is the identity; edges are
// labeled by the positive generator index.
struct CayleyBall {
  Graph g;
  std::vector<Word> labels;        // vertex -> normal form
  std::vector<int> edge_label;     // edge -> generator (1-based)
  std::vector<int> sphere_start;   // sphere_start[r] = first vertex at distance r
  int radius = 0;
  bool saturated = false;          // no new vertices at the last radius

  int vertex_of(const Word& nf) const;  // -1 if absent
};

CayleyBall cayley_ball(const GroupOracle& o, int radius, long max_vertices = 500000);

}  // namespace relhyp
