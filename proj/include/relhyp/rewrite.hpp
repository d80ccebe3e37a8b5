#pragma once

#include <vector>

#include "relhyp/presentation.hpp"
#include "relhyp/word.hpp"

namespace relhyp {

// One rewrite rule lhs -> rhs with lhs > rhs in ShortLex.  Words here are
// strings over the group alphabet (letters and their inverses); they need not
// be freely reduced.
struct Rule {
  Word lhs, rhs;
};

// A string rewriting system under the fixed ShortLex order.  When status is
// Complete the system is locally confluent (all critical pairs resolve), so
// reduce() computes canonical normal forms.  A BoundedIncomplete system still
// reduces, but cannot certify equality.
class RewriteSystem {
 public:
  enum class Status { Complete, BoundedIncomplete };

  RewriteSystem() = default;
  RewriteSystem(int n_generators, std::vector<Rule> rules, Status status);

  Status status() const { return status_; }
  bool complete() const { return status_ == Status::Complete; }
  int n_generators() const { return n_generators_; }
  const std::vector<Rule>& rules() const { return rules_; }

  // Exhaustive rewriting with the current rules; canonical iff complete().
  Word reduce(const Word& w) const;

  // Canonical representative; throws incomplete_oracle unless complete().
  Word normal_form(const Word& w) const;

 private:
  void index_rules();

  int n_generators_ = 0;
  std::vector<Rule> rules_;
  Status status_ = Status::BoundedIncomplete;
  std::vector<std::vector<int>> by_last_;  // letter_rank -> rule ids
};

// Knuth-Bendix completion of the relative presentation's full relator set
// (declared relators plus the implied parabolic relators) together with the
// free-reduction rules.  Runs until no unresolved critical pairs remain or a
// bound is hit; never raises on failure, the status records it.
RewriteSystem knuth_bendix(const RelativePresentation& rp, int max_rules = 5000,
                           int max_length = 64);

// Check local confluence of the final rule set by recomputing all critical
// pairs from scratch.  Exposed so tests can certify a system independently of
// the completion loop's own bookkeeping.
bool critical_pairs_resolve(const RewriteSystem& rs);

}  // namespace relhyp
