#include "relhyp/rewrite.hpp"

#include <algorithm>
#include <deque>
#include <queue>

#include "relhyp/errors.hpp"

namespace relhyp {

RewriteSystem::RewriteSystem(int n_generators, std::vector<Rule> rules, Status status)
    : n_generators_(n_generators), rules_(std::move(rules)), status_(status) {
  index_rules();
}

void RewriteSystem::index_rules() {
  by_last_.assign(2 * n_generators_, {});
  for (size_t i = 0; i < rules_.size(); ++i) {
    const Word& l = rules_[i].lhs;
    by_last_[letter_rank(l.letters.back())].push_back(int(i));
  }
}

Word RewriteSystem::reduce(const Word& w) const {
  // stack-based rewriting: push letters, look for a rule lhs as a suffix of
  // the stack, splice in rhs through the pending input
  std::vector<Letter> out;
  std::deque<Letter> input(w.letters.begin(), w.letters.end());
  out.reserve(w.size());
  while (!input.empty()) {
    out.push_back(input.front());
    input.pop_front();
    bool changed = true;
    while (changed && !out.empty()) {
      changed = false;
      for (int ri : by_last_[letter_rank(out.back())]) {
        const Rule& r = rules_[ri];
        size_t n = r.lhs.size();
        if (out.size() < n) continue;
        if (!std::equal(r.lhs.letters.begin(), r.lhs.letters.end(),
                        out.end() - n))
          continue;
        out.resize(out.size() - n);
        for (auto it = r.rhs.letters.rbegin(); it != r.rhs.letters.rend(); ++it)
          input.push_front(*it);
        changed = false;
        if (!input.empty()) {
          out.push_back(input.front());
          input.pop_front();
          changed = true;
        }
        break;
      }
    }
  }
  return Word{std::move(out)};
}

Word RewriteSystem::normal_form(const Word& w) const {
  if (!complete())
    throw incomplete_oracle("rewriting system is not confluent; cannot certify normal forms");
  return reduce(w);
}

// ---------------------------------------------------------------------------
// Completion

namespace {

struct Kb {
  int n = 0;
  int max_rules, max_length;
  std::vector<Rule> rules;
  std::vector<bool> active;
  std::vector<std::vector<int>> by_last;
  bool overflowed = false;

  struct Eq {
    Word a, b;
    size_t weight() const { return a.size() + b.size(); }
  };
  struct EqCmp {
    bool operator()(const Eq& x, const Eq& y) const { return x.weight() > y.weight(); }
  };
  std::priority_queue<Eq, std::vector<Eq>, EqCmp> queue;

  Word reduce(Word w) const {
    std::vector<Letter> out;
    std::deque<Letter> input(w.letters.begin(), w.letters.end());
    out.reserve(w.size());
    while (!input.empty()) {
      out.push_back(input.front());
      input.pop_front();
      bool changed = true;
      while (changed && !out.empty()) {
        changed = false;
        for (int ri : by_last[letter_rank(out.back())]) {
          if (!active[ri]) continue;
          const Rule& r = rules[ri];
          size_t len = r.lhs.size();
          if (out.size() < len) continue;
          if (!std::equal(r.lhs.letters.begin(), r.lhs.letters.end(), out.end() - len))
            continue;
          out.resize(out.size() - len);
          for (auto it = r.rhs.letters.rbegin(); it != r.rhs.letters.rend(); ++it)
            input.push_front(*it);
          if (!input.empty()) {
            out.push_back(input.front());
            input.pop_front();
            changed = true;
          }
          break;
        }
      }
    }
    return Word{std::move(out)};
  }

  void push_eq(Word a, Word b) { queue.push(Eq{std::move(a), std::move(b)}); }

  void overlaps(int i, int j) {
    const Word& l1 = rules[i].lhs;
    const Word& l2 = rules[j].lhs;
    // suffix of l1 equals prefix of l2, overlap length k
    size_t kmax = std::min(l1.size(), l2.size());
    for (size_t k = 1; k <= kmax; ++k) {
      if (!std::equal(l2.letters.begin(), l2.letters.begin() + k, l1.letters.end() - k))
        continue;
      // overlapped word: l1 . l2[k:]
      Word left = rules[i].rhs;  // r1 . l2[k:]
      left.letters.insert(left.letters.end(), l2.letters.begin() + k, l2.letters.end());
      Word right;  // l1[:-k] . r2
      right.letters.insert(right.letters.end(), l1.letters.begin(), l1.letters.end() - k);
      right.letters.insert(right.letters.end(), rules[j].rhs.letters.begin(),
                           rules[j].rhs.letters.end());
      push_eq(std::move(left), std::move(right));
    }
    // l2 contained inside l1
    if (l2.size() < l1.size()) {
      for (size_t pos = 0; pos + l2.size() <= l1.size(); ++pos) {
        if (!std::equal(l2.letters.begin(), l2.letters.end(), l1.letters.begin() + pos))
          continue;
        Word right;
        right.letters.insert(right.letters.end(), l1.letters.begin(),
                             l1.letters.begin() + pos);
        right.letters.insert(right.letters.end(), rules[j].rhs.letters.begin(),
                             rules[j].rhs.letters.end());
        right.letters.insert(right.letters.end(), l1.letters.begin() + pos + l2.size(),
                             l1.letters.end());
        push_eq(rules[i].rhs, std::move(right));
      }
    }
  }

  void add_rule(Word lhs, Word rhs) {
    rules.push_back(Rule{std::move(lhs), std::move(rhs)});
    active.push_back(true);
    int id = int(rules.size()) - 1;
    if (by_last.empty()) by_last.assign(2 * size_t(n), {});
    by_last[letter_rank(rules[id].lhs.letters.back())].push_back(id);
    // interreduce: retire rules whose lhs the new rule touches
    for (int i = 0; i < id; ++i) {
      if (!active[i]) continue;
      const Word& nl = rules[id].lhs;
      bool hits = false;
      if (nl.size() <= rules[i].lhs.size()) {
        for (size_t pos = 0; pos + nl.size() <= rules[i].lhs.size(); ++pos)
          if (std::equal(nl.letters.begin(), nl.letters.end(),
                         rules[i].lhs.letters.begin() + pos)) {
            hits = true;
            break;
          }
      }
      if (hits) {
        active[i] = false;
        push_eq(rules[i].lhs, rules[i].rhs);
      } else {
        rules[i].rhs = reduce(rules[i].rhs);
      }
    }
    for (int i = 0; i <= id; ++i) {
      if (!active[i]) continue;
      overlaps(i, id);
      if (i != id) overlaps(id, i);
    }
  }

  bool process(Eq eq) {
    Word a = reduce(std::move(eq.a));
    Word b = reduce(std::move(eq.b));
    if (a == b) return true;
    if (shortlex_less(a, b)) std::swap(a, b);
    if (int(a.size()) > max_length) {
      overflowed = true;
      return false;
    }
    add_rule(std::move(a), std::move(b));
    return true;
  }

  std::vector<Rule> active_rules() const {
    std::vector<Rule> out;
    for (size_t i = 0; i < rules.size(); ++i)
      if (active[i]) out.push_back(rules[i]);
    return out;
  }
};

}  // namespace

RewriteSystem knuth_bendix(const RelativePresentation& rp, int max_rules,
                           int max_length) {
  Kb kb;
  kb.n = int(rp.generators.size());
  kb.max_rules = max_rules;
  kb.max_length = max_length;

  for (int g = 1; g <= kb.n; ++g) {
    kb.add_rule(Word({Letter(g), Letter(-g)}), Word{});
    kb.add_rule(Word({Letter(-g), Letter(g)}), Word{});
  }
  auto feed = [&](const Word& r) { kb.push_eq(free_reduce(r), Word{}); };
  for (const auto& r : rp.relators) feed(r);
  for (const auto& r : rp.parabolic_relators()) feed(r);

  long processed = 0;
  const long max_processed = 500000;
  bool bounded = false;
  while (!kb.queue.empty()) {
    if (int(kb.rules.size()) > max_rules || ++processed > max_processed) {
      bounded = true;
      break;
    }
    Kb::Eq eq = kb.queue.top();
    kb.queue.pop();
    kb.process(std::move(eq));
  }

  auto status = (!bounded && !kb.overflowed) ? RewriteSystem::Status::Complete
                                             : RewriteSystem::Status::BoundedIncomplete;
  return RewriteSystem(kb.n, kb.active_rules(), status);
}

bool critical_pairs_resolve(const RewriteSystem& rs) {
  const auto& rules = rs.rules();
  for (size_t i = 0; i < rules.size(); ++i) {
    for (size_t j = 0; j < rules.size(); ++j) {
      const Word& l1 = rules[i].lhs;
      const Word& l2 = rules[j].lhs;
      size_t kmax = std::min(l1.size(), l2.size());
      for (size_t k = 1; k <= kmax; ++k) {
        if (!std::equal(l2.letters.begin(), l2.letters.begin() + k, l1.letters.end() - k))
          continue;
        Word left = rules[i].rhs;
        left.letters.insert(left.letters.end(), l2.letters.begin() + k, l2.letters.end());
        Word right;
        right.letters.insert(right.letters.end(), l1.letters.begin(), l1.letters.end() - k);
        right.letters.insert(right.letters.end(), rules[j].rhs.letters.begin(),
                             rules[j].rhs.letters.end());
        if (rs.reduce(left) != rs.reduce(right)) return false;
      }
      if (l2.size() < l1.size()) {
        for (size_t pos = 0; pos + l2.size() <= l1.size(); ++pos) {
          if (!std::equal(l2.letters.begin(), l2.letters.end(), l1.letters.begin() + pos))
            continue;
          Word right;
          right.letters.insert(right.letters.end(), l1.letters.begin(),
                               l1.letters.begin() + pos);
          right.letters.insert(right.letters.end(), rules[j].rhs.letters.begin(),
                               rules[j].rhs.letters.end());
          right.letters.insert(right.letters.end(), l1.letters.begin() + pos + l2.size(),
                               l1.letters.end());
          if (rs.reduce(rules[i].rhs) != rs.reduce(right)) return false;
        }
      }
    }
  }
  return true;
}

}  // namespace relhyp
