#include "relhyp/presentation.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "relhyp/errors.hpp"
#include "relhyp/rewrite.hpp"

namespace relhyp {

bool ParabolicSpec::contains_generator(int g) const {
  return std::find(generators.begin(), generators.end(), g) != generators.end();
}

int RelativePresentation::generator_index(const std::string& gname) const {
  for (size_t i = 0; i < generators.size(); ++i)
    if (generators[i] == gname) return int(i) + 1;
  return 0;
}

int RelativePresentation::parabolic_of_generator(int g) const {
  for (const auto& p : parabolics)
    if (p.contains_generator(g)) return p.id;
  return 0;
}

void RelativePresentation::validate() const {
  std::set<std::string> names(generators.begin(), generators.end());
  if (names.size() != generators.size())
    throw parse_error("duplicate generator names");
  std::set<int> used;
  for (size_t i = 0; i < parabolics.size(); ++i) {
    const auto& p = parabolics[i];
    if (p.id != int(i) + 1) throw parse_error("parabolic ids must be 1..n in order");
    int want = p.kind == ParabolicKind::FiniteCyclic ? 1 : p.rank_or_order;
    if (int(p.generators.size()) != want)
      throw parse_error("parabolic " + std::to_string(p.id) +
                        ": generator count does not match its type");
    for (int g : p.generators) {
      if (g < 1 || g > int(generators.size()))
        throw parse_error("parabolic generator index out of range");
      if (!used.insert(g).second)
        throw parse_error("parabolic generator sets must be disjoint");
    }
  }
  for (const auto& r : relators)
    for (Letter l : r.letters)
      if (l == 0 || std::abs(l) > int(generators.size()))
        throw parse_error("relator letter out of range");
}

std::vector<Word> RelativePresentation::parabolic_relators() const {
  std::vector<Word> out;
  for (const auto& p : parabolics) {
    if (p.kind == ParabolicKind::FreeAbelian) {
      for (size_t i = 0; i < p.generators.size(); ++i)
        for (size_t j = i + 1; j < p.generators.size(); ++j) {
          Letter a = p.generators[i], b = p.generators[j];
          out.push_back(Word({a, b, -a, -b}));
        }
    } else if (p.kind == ParabolicKind::FiniteCyclic) {
      out.push_back(Word::power(p.generators[0], p.rank_or_order));
    }
  }
  return out;
}

std::string RelativePresentation::word_to_string(const Word& w) const {
  if (w.empty()) return "1";
  std::ostringstream os;
  size_t i = 0;
  bool first = true;
  while (i < w.size()) {
    size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    int run = int(j - i);
    int exp = w[i] > 0 ? run : -run;
    if (!first) os << ' ';
    os << generators[std::abs(w[i]) - 1];
    if (exp != 1) os << '^' << exp;
    first = false;
    i = j;
  }
  return os.str();
}

Word RelativePresentation::parse_word(const std::string& text) const {
  Word out;
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) {
    if (tok == "1") continue;
    std::string name = tok;
    int exp = 1;
    auto caret = tok.find('^');
    if (caret != std::string::npos) {
      name = tok.substr(0, caret);
      std::string e = tok.substr(caret + 1);
      if (!e.empty() && e.front() == '{' && e.back() == '}')
        e = e.substr(1, e.size() - 2);
      try {
        exp = std::stoi(e);
      } catch (...) {
        throw parse_error("bad exponent in word token '" + tok + "'");
      }
    }
    int g = generator_index(name);
    if (g == 0) throw parse_error("unknown generator '" + name + "'");
    Word p = Word::power(g, exp);
    out.letters.insert(out.letters.end(), p.letters.begin(), p.letters.end());
  }
  return out;
}

RelativePresentation parse_presentation(std::istream& in) {
  RelativePresentation rp;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream is(line);
    std::string key;
    if (!(is >> key)) continue;
    if (key == "group") {
      is >> rp.name;
    } else if (key == "generators") {
      std::string g;
      while (is >> g) rp.generators.push_back(g);
    } else if (key == "parabolic") {
      ParabolicSpec p;
      std::string kw, type;
      is >> p.id >> kw >> type;
      if (kw != "type") throw parse_error("expected 'type' in parabolic line");
      if (type == "Z") {
        p.kind = ParabolicKind::FreeAbelian;
        p.rank_or_order = 1;
      } else if (type.rfind("Z^", 0) == 0) {
        p.kind = ParabolicKind::FreeAbelian;
        p.rank_or_order = std::stoi(type.substr(2));
      } else if (type.rfind("Z/", 0) == 0) {
        p.kind = ParabolicKind::FiniteCyclic;
        p.rank_or_order = std::stoi(type.substr(2));
      } else if (type.rfind("F_", 0) == 0) {
        p.kind = ParabolicKind::FreeGroup;
        p.rank_or_order = std::stoi(type.substr(2));
      } else {
        throw parse_error("unknown parabolic type '" + type + "'");
      }
      is >> kw;
      if (kw != "generators") throw parse_error("expected 'generators' in parabolic line");
      std::string g;
      while (is >> g) {
        int idx = rp.generator_index(g);
        if (idx == 0) throw parse_error("unknown parabolic generator '" + g + "'");
        p.generators.push_back(idx);
      }
      rp.parabolics.push_back(p);
    } else if (key == "relator") {
      std::string rest;
      std::getline(is, rest);
      rp.relators.push_back(rp.parse_word(rest));
    } else {
      throw parse_error("unknown declaration '" + key + "'");
    }
  }
  rp.validate();
  return rp;
}

RelativePresentation parse_presentation_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open presentation file " + path);
  return parse_presentation(in);
}

std::string print_presentation(const RelativePresentation& rp) {
  std::ostringstream os;
  os << "group " << (rp.name.empty() ? std::string("G") : rp.name) << "\n";
  os << "generators";
  for (const auto& g : rp.generators) os << ' ' << g;
  os << "\n";
  for (const auto& p : rp.parabolics) {
    os << "parabolic " << p.id << " type ";
    switch (p.kind) {
      case ParabolicKind::FreeAbelian:
        if (p.rank_or_order == 1)
          os << "Z";
        else
          os << "Z^" << p.rank_or_order;
        break;
      case ParabolicKind::FiniteCyclic:
        os << "Z/" << p.rank_or_order;
        break;
      case ParabolicKind::FreeGroup:
        os << "F_" << p.rank_or_order;
        break;
    }
    os << " generators";
    for (int g : p.generators) os << ' ' << rp.generators[g - 1];
    os << "\n";
  }
  for (const auto& r : rp.relators) os << "relator " << rp.word_to_string(r) << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Integer lattice helpers (row echelon over Z, first nonzero entry of each row
// is a positive pivot, rows sorted by pivot column).

namespace {

using Row = std::vector<long>;

std::vector<Row> row_echelon(std::vector<Row> rows) {
  if (rows.empty()) return rows;
  size_t cols = rows[0].size();
  std::vector<Row> done;
  size_t col = 0;
  while (col < cols && !rows.empty()) {
    // gcd all rows with nonzero entry in `col` into one
    std::vector<Row> with, without;
    for (auto& r : rows) (r[col] != 0 ? with : without).push_back(r);
    if (with.empty()) {
      ++col;
      continue;
    }
    while (with.size() > 1) {
      std::sort(with.begin(), with.end(), [&](const Row& a, const Row& b) {
        return std::abs(a[col]) < std::abs(b[col]);
      });
      for (size_t i = 1; i < with.size(); ++i) {
        long q = with[i][col] / with[0][col];
        for (size_t j = 0; j < cols; ++j) with[i][j] -= q * with[0][j];
      }
      std::vector<Row> keep{with[0]};
      for (size_t i = 1; i < with.size(); ++i)
        if (std::any_of(with[i].begin(), with[i].end(), [](long x) { return x != 0; }))
          (with[i][col] != 0 ? keep : without).push_back(with[i]);
      with = keep;
    }
    Row pivot = with[0];
    if (pivot[col] < 0)
      for (auto& x : pivot) x = -x;
    done.push_back(pivot);
    rows = without;
    ++col;
  }
  return done;
}

bool lattice_member(const std::vector<Row>& echelon, Row v) {
  for (const auto& r : echelon) {
    size_t pc = 0;
    while (pc < r.size() && r[pc] == 0) ++pc;
    if (pc == r.size()) continue;
    if (v[pc] % r[pc] != 0) return false;
    long q = v[pc] / r[pc];
    for (size_t j = 0; j < v.size(); ++j) v[j] -= q * r[j];
  }
  return std::all_of(v.begin(), v.end(), [](long x) { return x == 0; });
}

// Enumerate v in Z^r with |v|_1 <= bound, v != 0, track min |v|_1 of members.
void enumerate_l1_ball(size_t coord, long budget, Row& v,
                       const std::function<void(const Row&)>& visit) {
  if (coord == v.size()) {
    visit(v);
    return;
  }
  for (long x = -budget; x <= budget; ++x) {
    v[coord] = x;
    enumerate_l1_ball(coord + 1, budget - std::abs(x), v, visit);
  }
  v[coord] = 0;
}

long cyclic_exponent_sum(const Word& w, int gen, long order) {
  long e = 0;
  for (Letter l : w.letters) {
    if (std::abs(l) != gen) throw parse_error("kernel word uses a foreign generator");
    e += l > 0 ? 1 : -1;
  }
  e %= order;
  if (e < 0) e += order;
  return e;
}

}  // namespace

std::optional<long> slope_length(const ParabolicSpec& p, const FillingKernel& k,
                                 long search_bound) {
  if (k.parabolic_id != p.id) throw error("filling kernel attached to wrong parabolic");
  if (search_bound <= 0) throw error("search bound must be positive");
  if (k.trivial()) return std::nullopt;

  if (p.kind == ParabolicKind::FreeAbelian) {
    size_t r = p.generators.size();
    std::vector<Row> rows;
    for (const auto& row : k.lattice) {
      if (row.size() != r) throw error("lattice row has wrong dimension");
      rows.push_back(row);
    }
    auto ech = row_echelon(rows);
    if (ech.empty()) return std::nullopt;  // all rows were zero
    long best = -1;
    Row v(r, 0);
    enumerate_l1_ball(0, search_bound, v, [&](const Row& cand) {
      if (std::all_of(cand.begin(), cand.end(), [](long x) { return x == 0; })) return;
      long n1 = 0;
      for (long x : cand) n1 += std::abs(x);
      if (best >= 0 && n1 >= best) return;
      if (lattice_member(ech, cand)) best = n1;
    });
    if (best < 0)
      throw search_bound_exceeded("no kernel element with |.|_1 <= " +
                                  std::to_string(search_bound));
    return best;
  }

  if (p.kind == ParabolicKind::FiniteCyclic) {
    long m = p.rank_or_order;
    long g = m;
    for (const auto& w : k.words)
      g = std::gcd(g, cyclic_exponent_sum(w, p.generators[0], m));
    if (g == m || g == 0) return std::nullopt;  // kernel trivial in Z/m
    long best = m;
    for (long e = g; e < m; e += g) best = std::min(best, std::min(e, m - e));
    return best;
  }

  // FreeGroup: decide by the word problem of P/K (Knuth-Bendix on the
  // parabolic quotient), enumerating short words of P.
  if (p.generators.size() == 1) {
    // rank-1 free group is Z
    long g = 0;
    for (const auto& w : k.words) {
      long e = 0;
      for (Letter l : w.letters) {
        if (std::abs(l) != p.generators[0])
          throw parse_error("kernel word uses a foreign generator");
        e += l > 0 ? 1 : -1;
      }
      g = std::gcd(g, e);
    }
    if (g == 0) return std::nullopt;
    return g;
  }

  RelativePresentation sub;
  sub.name = "parabolic_quotient";
  std::vector<int> back(p.generators.size());
  for (size_t i = 0; i < p.generators.size(); ++i) {
    sub.generators.push_back("g" + std::to_string(i));
    back[i] = p.generators[i];
  }
  auto relabel = [&](const Word& w) {
    Word out;
    for (Letter l : w.letters) {
      int local = 0;
      for (size_t i = 0; i < back.size(); ++i)
        if (back[i] == std::abs(l)) local = int(i) + 1;
      if (local == 0) throw parse_error("kernel word uses a foreign generator");
      out.letters.push_back(l > 0 ? local : -local);
    }
    return out;
  };
  bool any_nontrivial = false;
  for (const auto& w : k.words) {
    Word rw = free_reduce(relabel(w));
    if (!rw.empty()) any_nontrivial = true;
    sub.relators.push_back(rw);
  }
  if (!any_nontrivial) return std::nullopt;
  RewriteSystem rs = knuth_bendix(sub, 5000, 64);
  if (!rs.complete())
    throw search_bound_exceeded("parabolic quotient word problem not certified");
  // breadth-first over freely reduced words of P, shortest first
  std::vector<Word> frontier{Word{}};
  for (long len = 1; len <= search_bound; ++len) {
    std::vector<Word> next;
    for (const auto& w : frontier) {
      for (size_t i = 0; i < sub.generators.size(); ++i) {
        for (Letter l : {Letter(i + 1), Letter(-(int(i) + 1))}) {
          if (!w.empty() && w.letters.back() == -l) continue;
          Word cand = w;
          cand.letters.push_back(l);
          if (rs.normal_form(cand).empty()) return len;
          next.push_back(cand);
        }
      }
    }
    frontier = std::move(next);
  }
  throw search_bound_exceeded("no kernel element of length <= " +
                              std::to_string(search_bound));
}

bool kernel_contains(const ParabolicSpec& p, const FillingKernel& k,
                     const std::vector<long>& exponents) {
  if (k.trivial())
    return std::all_of(exponents.begin(), exponents.end(),
                       [](long e) { return e == 0; });
  if (p.kind == ParabolicKind::FreeAbelian) {
    std::vector<Row> rows;
    for (const auto& row : k.lattice) rows.push_back(row);
    for (const auto& w : k.words) {
      Row row(p.generators.size(), 0);
      for (Letter l : w.letters)
        for (size_t i = 0; i < p.generators.size(); ++i)
          if (p.generators[i] == std::abs(l)) row[i] += l > 0 ? 1 : -1;
      rows.push_back(row);
    }
    return lattice_member(row_echelon(rows), exponents);
  }
  if (exponents.size() != 1) throw error("cyclic kernel takes one exponent");
  long g;
  if (p.kind == ParabolicKind::FiniteCyclic) {
    long m = p.rank_or_order;
    g = m;
    for (const auto& w : k.words)
      g = std::gcd(g, cyclic_exponent_sum(w, p.generators[0], m));
    long e = exponents[0] % m;
    if (e < 0) e += m;
    return e % g == 0;
  }
  // rank-1 free group
  g = 0;
  for (const auto& w : k.words) {
    long e = 0;
    for (Letter l : w.letters) e += l > 0 ? 1 : -1;
    g = std::gcd(g, e);
  }
  for (const auto& row : k.lattice)
    if (!row.empty()) g = std::gcd(g, row[0]);
  if (g == 0) return exponents[0] == 0;
  return exponents[0] % g == 0;
}

RelativePresentation quotient_presentation(const RelativePresentation& rp,
                                           const std::vector<FillingKernel>& kernels) {
  if (kernels.size() != rp.parabolics.size())
    throw error("need exactly one kernel per parabolic");
  RelativePresentation out;
  out.name = rp.name.empty() ? "quotient" : rp.name + "_quotient";
  out.generators = rp.generators;
  out.relators = rp.relators;

  auto add_power_relator = [&](int gen, long e) {
    if (e != 0) out.relators.push_back(Word::power(gen, int(e)));
  };

  int next_id = 1;
  for (size_t pi = 0; pi < rp.parabolics.size(); ++pi) {
    const auto& p = rp.parabolics[pi];
    const auto& k = kernels[pi];
    if (k.parabolic_id != p.id) throw error("kernel list out of order");

    if (k.trivial()) {
      ParabolicSpec q = p;
      q.id = next_id++;
      out.parabolics.push_back(q);
      continue;
    }

    if (p.kind == ParabolicKind::FreeAbelian) {
      size_t r = p.generators.size();
      std::vector<Row> rows;
      for (const auto& row : k.lattice) rows.push_back(row);
      for (const auto& w : k.words) {
        // exponent vector of an abelianized kernel word
        Row row(r, 0);
        for (Letter l : w.letters) {
          size_t j = r;
          for (size_t i = 0; i < r; ++i)
            if (p.generators[i] == std::abs(l)) j = i;
          if (j == r) throw parse_error("kernel word uses a foreign generator");
          row[j] += l > 0 ? 1 : -1;
        }
        rows.push_back(row);
      }
      auto ech = row_echelon(rows);
      // need one pivot per row, in distinct columns, with no off-pivot entries
      std::vector<long> diag(r, 0);
      for (const auto& row : ech) {
        int nz = -1;
        for (size_t j = 0; j < r; ++j) {
          if (row[j] != 0) {
            if (nz >= 0)
              throw unsupported_quotient(
                  "kernel lattice is not diagonal in the parabolic's basis");
            nz = int(j);
          }
        }
        if (nz >= 0) diag[nz] = row[nz];
      }
      // keep the commuting relators of the original Z^r
      if (r >= 2) {
        for (size_t i = 0; i < r; ++i)
          for (size_t j = i + 1; j < r; ++j)
            out.relators.push_back(
                Word({Letter(p.generators[i]), Letter(p.generators[j]),
                      Letter(-p.generators[i]), Letter(-p.generators[j])}));
      }
      std::vector<int> free_gens;
      for (size_t j = 0; j < r; ++j) {
        if (diag[j] == 0) {
          free_gens.push_back(p.generators[j]);
        } else {
          add_power_relator(p.generators[j], diag[j]);
          if (diag[j] >= 1) {
            ParabolicSpec q;
            q.id = next_id++;
            q.kind = ParabolicKind::FiniteCyclic;
            q.rank_or_order = int(diag[j]);
            q.generators = {p.generators[j]};
            out.parabolics.push_back(q);
          }
        }
      }
      if (!free_gens.empty()) {
        ParabolicSpec q;
        q.id = next_id++;
        q.kind = ParabolicKind::FreeAbelian;
        q.rank_or_order = int(free_gens.size());
        q.generators = free_gens;
        out.parabolics.push_back(q);
      }
      continue;
    }

    if (p.kind == ParabolicKind::FiniteCyclic) {
      long m = p.rank_or_order;
      long g = m;
      for (const auto& w : k.words)
        g = std::gcd(g, cyclic_exponent_sum(w, p.generators[0], m));
      ParabolicSpec q;
      q.id = next_id++;
      q.kind = ParabolicKind::FiniteCyclic;
      q.rank_or_order = int(g == 0 ? m : g);
      q.generators = p.generators;
      out.parabolics.push_back(q);
      add_power_relator(p.generators[0], q.rank_or_order);
      continue;
    }

    // FreeGroup
    if (p.generators.size() == 1) {
      long g = 0;
      for (const auto& w : k.words) {
        long e = 0;
        for (Letter l : w.letters) e += l > 0 ? 1 : -1;
        g = std::gcd(g, e);
      }
      if (g == 0) {
        ParabolicSpec q = p;
        q.id = next_id++;
        out.parabolics.push_back(q);
      } else {
        ParabolicSpec q;
        q.id = next_id++;
        q.kind = ParabolicKind::FiniteCyclic;
        q.rank_or_order = int(g);
        q.generators = p.generators;
        out.parabolics.push_back(q);
        add_power_relator(p.generators[0], g);
      }
      continue;
    }
    throw unsupported_quotient(
        "quotient of a higher-rank free parabolic is not a supported kind");
  }
  out.validate();
  return out;
}

}  // namespace relhyp
