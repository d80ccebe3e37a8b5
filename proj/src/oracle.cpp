#include "relhyp/oracle.hpp"

#include <algorithm>
#include <map>

#include "relhyp/errors.hpp"

namespace relhyp {

namespace {

// Canonical (ShortLex-least geodesic) word for an element of one free factor.
Word abelian_canonical(const std::vector<int>& gens, const std::vector<long>& exps) {
  Word out;
  for (size_t i = 0; i < gens.size(); ++i) {
    Word p = Word::power(gens[i], int(exps[i]));
    out.letters.insert(out.letters.end(), p.letters.begin(), p.letters.end());
  }
  return out;
}

Word cyclic_canonical(int gen, long m, long e) {
  e %= m;
  if (e < 0) e += m;
  if (e == 0) return Word{};
  if (2 * e <= m) return Word::power(gen, int(e));
  return Word::power(gen, -int(m - e));
}

}  // namespace

GroupOracle GroupOracle::make(const RelativePresentation& rp, int max_rules,
                              int max_length) {
  GroupOracle o;
  o.rp_ = rp;
  rp.validate();
  if (rp.relators.empty()) {
    bool any_parabolic = !rp.parabolics.empty();
    if (!any_parabolic) {
      o.backing_ = OracleBacking::FreeGroup;
      return o;
    }
    o.backing_ = OracleBacking::FreeProductOfParabolics;
    o.factor_of_gen_.assign(rp.generators.size() + 1, 0);
    for (const auto& p : rp.parabolics)
      for (int g : p.generators) o.factor_of_gen_[g] = p.id;
    // leftover generators act as free rank-1 factors; give them distinct
    // negative factor ids
    int next = -1;
    for (size_t g = 1; g <= rp.generators.size(); ++g)
      if (o.factor_of_gen_[g] == 0) o.factor_of_gen_[g] = next--;
    return o;
  }
  o.backing_ = OracleBacking::Rewriting;
  o.rs_ = std::make_shared<RewriteSystem>(knuth_bendix(rp, max_rules, max_length));
  return o;
}

bool GroupOracle::complete() const {
  return backing_ != OracleBacking::Rewriting || rs_->complete();
}

Word GroupOracle::free_product_normal_form(const Word& w) const {
  // stack of syllables (factor id, canonical word)
  std::vector<std::pair<int, Word>> stack;
  auto canonical = [&](int factor, const Word& raw) -> Word {
    if (factor < 0) return free_reduce(raw);  // free rank-1 factor
    const ParabolicSpec& p = rp_.parabolics[factor - 1];
    switch (p.kind) {
      case ParabolicKind::FreeGroup:
        return free_reduce(raw);
      case ParabolicKind::FiniteCyclic: {
        long e = 0;
        for (Letter l : raw.letters) e += l > 0 ? 1 : -1;
        return cyclic_canonical(p.generators[0], p.rank_or_order, e);
      }
      case ParabolicKind::FreeAbelian: {
        std::vector<long> exps(p.generators.size(), 0);
        for (Letter l : raw.letters) {
          for (size_t i = 0; i < p.generators.size(); ++i)
            if (p.generators[i] == std::abs(l)) exps[i] += l > 0 ? 1 : -1;
        }
        return abelian_canonical(p.generators, exps);
      }
    }
    return raw;
  };
  for (Letter l : w.letters) {
    int f = factor_of_gen_[std::abs(l)];
    if (!stack.empty() && stack.back().first == f) {
      stack.back().second.letters.push_back(l);
      stack.back().second = canonical(f, stack.back().second);
    } else {
      stack.push_back({f, Word({l})});
      stack.back().second = canonical(f, stack.back().second);
    }
    while (!stack.empty() && stack.back().second.empty()) stack.pop_back();
    // merge the two top syllables when they share a factor
    while (stack.size() >= 2 &&
           stack[stack.size() - 1].first == stack[stack.size() - 2].first) {
      auto top = stack.back();
      stack.pop_back();
      stack.back().second = canonical(
          stack.back().first, Word{[&] {
            std::vector<Letter> ls = stack.back().second.letters;
            ls.insert(ls.end(), top.second.letters.begin(), top.second.letters.end());
            return ls;
          }()});
      while (!stack.empty() && stack.back().second.empty()) stack.pop_back();
    }
  }
  Word out;
  for (const auto& [f, wd] : stack)
    out.letters.insert(out.letters.end(), wd.letters.begin(), wd.letters.end());
  return out;
}

Word GroupOracle::normal_form(const Word& w) const {
  switch (backing_) {
    case OracleBacking::FreeGroup:
      return free_reduce(w);
    case OracleBacking::FreeProductOfParabolics:
      return free_product_normal_form(w);
    case OracleBacking::Rewriting:
      return rs_->normal_form(w);
  }
  return w;
}

bool GroupOracle::equal(const Word& a, const Word& b) const {
  return normal_form(a) == normal_form(b);
}

int CayleyBall::vertex_of(const Word& nf) const {
  auto it = std::lower_bound(labels.begin(), labels.end(), nf, shortlex_less);
  if (it == labels.end() || !(*it == nf)) return -1;
  return int(it - labels.begin());
}

CayleyBall cayley_ball(const GroupOracle& o, int radius, long max_vertices) {
  if (!o.complete())
    throw incomplete_oracle("cannot build a Cayley ball over an uncertified oracle");
  CayleyBall ball;
  ball.radius = radius;
  int ngen = int(o.presentation().generators.size());

  std::map<std::vector<Letter>, int> seen;
  std::vector<Word> level{Word{}};
  ball.labels.push_back(Word{});
  seen[{}] = 0;
  ball.sphere_start.push_back(0);

  for (int r = 1; r <= radius; ++r) {
    ball.sphere_start.push_back(int(ball.labels.size()));
    std::vector<Word> next;
    std::map<std::vector<Letter>, char> found;
    for (const auto& w : level) {
      for (int gidx = 1; gidx <= ngen; ++gidx) {
        for (Letter l : {Letter(gidx), Letter(-gidx)}) {
          Word cand = w;
          cand.letters.push_back(l);
          Word nf = o.normal_form(cand);
          if (int(nf.size()) != r) continue;  // lands in a lower sphere
          found.emplace(nf.letters, 1);
        }
      }
    }
    std::vector<Word> fresh;
    for (auto& [ls, _] : found) fresh.push_back(Word{ls});
    std::sort(fresh.begin(), fresh.end(), shortlex_less);
    for (auto& nf : fresh) {
      if (long(ball.labels.size()) >= max_vertices)
        throw resource_limit("cayley ball exceeded the vertex cap");
      seen[nf.letters] = int(ball.labels.size());
      ball.labels.push_back(nf);
      next.push_back(nf);
    }
    if (next.empty()) {
      ball.saturated = true;
      ball.sphere_start.resize(r + 1);
      ball.sphere_start.back() = int(ball.labels.size());
      break;
    }
    level = std::move(next);
  }
  ball.sphere_start.push_back(int(ball.labels.size()));

  ball.g.add_vertices(int(ball.labels.size()));
  for (int v = 0; v < ball.g.n; ++v) {
    for (int gidx = 1; gidx <= ngen; ++gidx) {
      Word cand = ball.labels[v];
      cand.letters.push_back(Letter(gidx));
      Word nf = o.normal_form(cand);
      auto it = seen.find(nf.letters);
      if (it == seen.end()) continue;
      int u = it->second;
      if (u == v) continue;  // generator trivial in the group; simple graph model
      if (ball.g.edge_between(v, u) >= 0) continue;
      int e = ball.g.add_edge(v, u);
      (void)e;
      ball.edge_label.push_back(gidx);
    }
  }
  return ball;
}

}  // namespace relhyp
