#include "relhyp/dehn.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include "relhyp/errors.hpp"
#include "relhyp/horoball.hpp"

namespace relhyp {

std::optional<long> FillingSpec::min_slope() const {
  std::optional<long> best;
  for (const auto& s : slope_lengths) {
    if (!s.has_value()) continue;  // infinite slope never binds
    if (!best || *s < *best) best = s;
  }
  return best;
}

bool FillingSpec::threshold_met() const {
  auto s = min_slope();
  if (!s) return true;  // all kernels trivial
  if (threshold_exponent >= 62) return false;
  return *s > threshold_coeff * (1L << threshold_exponent);
}

FillingSpec fill(const RelativePresentation& rp, std::vector<FillingKernel> kernels,
                 const Constants& cst, long slope_search_bound) {
  FillingSpec fs;
  fs.base = rp;
  fs.kernels = std::move(kernels);
  fs.quotient = quotient_presentation(rp, fs.kernels);
  for (size_t i = 0; i < rp.parabolics.size(); ++i)
    fs.slope_lengths.push_back(
        slope_length(rp.parabolics[i], fs.kernels[i], slope_search_bound));
  fs.threshold_coeff = 12;
  fs.threshold_exponent = cst.L2;
  return fs;
}

FillingManifest parse_filling_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open manifest " + path);
  FillingManifest mf;
  std::string line;
  std::vector<std::pair<int, std::string>> kernel_lines;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream is(line);
    std::string key;
    if (!(is >> key)) continue;
    if (key == "presentation") {
      is >> mf.presentation_path;
    } else if (key == "fill") {
      int id;
      is >> id;
      std::string rest;
      std::getline(is, rest);
      kernel_lines.push_back({id, rest});
    } else {
      throw parse_error("unknown manifest line '" + key + "'");
    }
  }
  if (mf.presentation_path.empty())
    throw parse_error("manifest needs a presentation line");
  // resolve relative to the manifest's directory
  auto slash = path.find_last_of('/');
  std::string dir = slash == std::string::npos ? "" : path.substr(0, slash + 1);
  std::ifstream ptry(mf.presentation_path);
  mf.presentation = ptry ? parse_presentation_file(mf.presentation_path)
                         : parse_presentation_file(dir + mf.presentation_path);

  mf.kernels.resize(mf.presentation.parabolics.size());
  for (size_t i = 0; i < mf.kernels.size(); ++i) mf.kernels[i].parabolic_id = int(i) + 1;
  for (auto& [id, rest] : kernel_lines) {
    if (id < 1 || id > int(mf.kernels.size()))
      throw parse_error("manifest fills unknown parabolic " + std::to_string(id));
    std::istringstream is(rest);
    std::string kind;
    is >> kind;
    if (kind == "word") {
      std::string w;
      std::getline(is, w);
      mf.kernels[id - 1].words.push_back(mf.presentation.parse_word(w));
    } else if (kind == "lattice") {
      std::vector<std::vector<long>> rows(1);
      std::string tok;
      while (is >> tok) {
        if (tok == ";")
          rows.emplace_back();
        else
          rows.back().push_back(std::stol(tok));
      }
      if (rows.back().empty()) rows.pop_back();
      auto& lat = mf.kernels[id - 1].lattice;
      lat.insert(lat.end(), rows.begin(), rows.end());
    } else {
      throw parse_error("manifest kernel line wants 'word' or 'lattice'");
    }
  }
  return mf;
}

SurgeredSpace build_surgered(const FillingSpec& fs, int R, int T, long max_vertices,
                             int max_rules, int max_length) {
  GroupOracle oracle = GroupOracle::make(fs.quotient, max_rules, max_length);
  if (!oracle.complete())
    throw incomplete_oracle("quotient word problem not certified; surgered space unavailable");
  CuspedBall z = build_cusped_ball(oracle, fs.quotient, R, T, max_vertices);
  return SurgeredSpace{fs, std::move(oracle), std::move(z)};
}

namespace {

// nontrivial elements of P/K as exponent data, shortest-first, one word each
std::vector<Word> quotient_parabolic_elements(const ParabolicSpec& p,
                                              const FillingKernel& k, long bound) {
  std::vector<Word> out;
  if (p.kind == ParabolicKind::FreeAbelian) {
    size_t r = p.generators.size();
    std::vector<long> e(r, 0);
    std::function<void(size_t, long)> rec = [&](size_t i, long budget) {
      if (i == r) {
        bool zero = std::all_of(e.begin(), e.end(), [](long x) { return x == 0; });
        if (zero) return;
        if (kernel_contains(p, k, e)) return;
        Word w;
        for (size_t j = 0; j < r; ++j) {
          Word pw = Word::power(p.generators[j], int(e[j]));
          w.letters.insert(w.letters.end(), pw.letters.begin(), pw.letters.end());
        }
        out.push_back(w);
        return;
      }
      for (long x = -budget; x <= budget; ++x) {
        e[i] = x;
        rec(i + 1, budget - std::abs(x));
      }
      e[i] = 0;
    };
    rec(0, bound);
    return out;
  }
  long modulus = p.kind == ParabolicKind::FiniteCyclic ? p.rank_or_order : 0;
  if (modulus > 0) {
    for (long e = 1; e < modulus; ++e) {
      long len = std::min(e, modulus - e);
      if (len > bound) continue;
      if (kernel_contains(p, k, {e})) continue;
      out.push_back(Word::power(p.generators[0], int(e <= modulus - e ? e : e - modulus)));
    }
    return out;
  }
  // free kinds: rank-1 supported, higher-rank nontrivial kernels were already
  // rejected by quotient_presentation
  for (long e = -bound; e <= bound; ++e) {
    if (e == 0) continue;
    if (kernel_contains(p, k, {e})) continue;
    out.push_back(Word::power(p.generators[0], int(e)));
  }
  return out;
}

}  // namespace

InjectivityReport injectivity_check(const FillingSpec& fs, const GroupOracle& quotient,
                                    long bound) {
  if (!quotient.complete()) throw incomplete_oracle("quotient oracle incomplete");
  InjectivityReport rep;
  rep.threshold_met = fs.threshold_met();
  std::vector<std::vector<Word>> samples;
  for (size_t i = 0; i < fs.base.parabolics.size(); ++i) {
    auto elems =
        quotient_parabolic_elements(fs.base.parabolics[i], fs.kernels[i], bound);
    for (const auto& w : elems) {
      ++rep.elements_checked;
      if (quotient.is_identity(w)) {
        rep.injective = false;
        if (rep.violations.size() < 10)
          rep.violations.push_back("parabolic " + std::to_string(i + 1) +
                                   " element dies: " + fs.base.word_to_string(w));
      }
    }
    samples.push_back(std::move(elems));
  }
  for (size_t i = 0; i < samples.size(); ++i)
    for (size_t j = i + 1; j < samples.size(); ++j)
      for (const auto& u : samples[i])
        for (const auto& v : samples[j]) {
          ++rep.pairs_checked;
          if (quotient.equal(u, v)) {
            rep.intersections_trivial = false;
            if (rep.violations.size() < 10)
              rep.violations.push_back(
                  "images intersect: " + fs.base.word_to_string(u) + " = " +
                  fs.base.word_to_string(v) + " in the quotient");
          }
        }
  return rep;
}

SurvivalReport survival_check(const FillingSpec& fs, const GroupOracle& base_oracle,
                              const GroupOracle& quotient, const std::vector<Word>& F) {
  if (!quotient.complete()) throw incomplete_oracle("quotient oracle incomplete");
  SurvivalReport rep;
  for (size_t i = 0; i < F.size(); ++i)
    for (size_t j = i + 1; j < F.size(); ++j) {
      if (base_oracle.equal(F[i], F[j])) continue;  // same element of G
      ++rep.pairs;
      if (quotient.equal(F[i], F[j])) {
        rep.injective_on_f = false;
        rep.identifications.push_back(
            {fs.base.word_to_string(base_oracle.normal_form(F[i])),
             fs.base.word_to_string(base_oracle.normal_form(F[j]))});
      }
    }
  return rep;
}

RelativePresentation triangle_base_presentation() {
  std::istringstream in(
      "group F2rel3\n"
      "generators x y z\n"
      "parabolic 1 type Z generators x\n"
      "parabolic 2 type Z generators y\n"
      "parabolic 3 type Z generators z\n"
      "relator x y z^-1\n");
  return parse_presentation(in);
}

TriangleReport triangle_experiment(int p, int q, int r, int radius, long max_vertices,
                                   long delta_samples, uint64_t seed) {
  TriangleReport rep;
  rep.p = p;
  rep.q = q;
  rep.r = r;
  // 1/p + 1/q + 1/r < 1 as exact arithmetic
  rep.euler_negative = q * r * 1L + p * r + p * q < 1L * p * q * r;

  auto rp = triangle_base_presentation();
  std::vector<FillingKernel> ks(3);
  for (int i = 0; i < 3; ++i) ks[i].parabolic_id = i + 1;
  ks[0].lattice = {{p}};
  ks[1].lattice = {{q}};
  ks[2].lattice = {{r}};
  FillingSpec fs = fill(rp, std::move(ks), Constants::standard_ratio(1));

  GroupOracle oracle = GroupOracle::make(fs.quotient);
  if (!oracle.complete()) {
    rep.undecided = true;
    rep.note = "knuth-bendix did not certify the quotient";
    return rep;
  }
  CayleyBall ball;
  try {
    ball = cayley_ball(oracle, radius, max_vertices);
  } catch (const resource_limit&) {
    rep.undecided = true;
    rep.note = "ball exceeded the vertex cap";
    return rep;
  }
  for (size_t rr = 1; rr < ball.sphere_start.size(); ++rr)
    rep.ball_sizes.push_back(ball.sphere_start[rr]);
  rep.finite_evidence = ball.saturated;
  if (ball.saturated) {
    rep.order = ball.g.n;
  } else {
    bool strict = true;
    for (size_t i = 1; i + 1 < ball.sphere_start.size(); ++i)
      if (ball.sphere_start[i] >= ball.sphere_start[i + 1]) strict = false;
    rep.infinite_evidence = strict;
    // thin-triangle estimate on an inner region of a moderate sub-ball
    int drad = std::min(radius, 6);
    CayleyBall small = drad == radius ? std::move(ball) : cayley_ball(oracle, drad);
    MetricCache m(small.g);
    std::vector<int> inner;
    for (int v = 0; v < small.g.n; ++v)
      if (int(small.labels[v].size()) <= drad / 2) inner.push_back(v);
    auto dr = delta_thin(m, inner, SamplingBudget{60, delta_samples, seed});
    rep.delta_value = dr.value;
    rep.delta_samples = dr.triangles;
  }
  return rep;
}

QuotientDeltaReport quotient_delta(const SurgeredSpace& s, int inner_margin,
                                   const SamplingBudget& budget, long fill_loops) {
  QuotientDeltaReport rep;
  rep.threshold_met = s.spec.threshold_met();
  MetricCache m(s.z.g);
  auto inner = s.z.inner_vertices(inner_margin);
  auto dr = delta_thin(m, inner, budget);
  rep.delta_value = dr.value;
  rep.triangles = dr.triangles;
  rep.exhaustive = dr.exhaustive;

  // constructive isoperimetry evidence inside the glued horoballs
  std::mt19937_64 rng(budget.seed);
  for (long t = 0; t < fill_loops && !s.z.cosets.empty(); ++t) {
    std::uniform_int_distribution<size_t> pick_coset(0, s.z.cosets.size() - 1);
    const auto& c = s.z.cosets[pick_coset(rng)];
    if (c.members.size() < 2) continue;
    HoroballGraph h = build_horoball(c.subgraph, s.z.horo_depth);
    MetricCache hm(h.g);
    std::uniform_int_distribution<int> pick(0, h.g.n - 1);
    int start = pick(rng);
    std::vector<int> walk{start};
    for (int i = 0; i < 10; ++i) {
      const auto& nb = h.g.adj[walk.back()];
      std::uniform_int_distribution<size_t> step(0, nb.size() - 1);
      walk.push_back(nb[step(rng)].first);
    }
    auto back = canonical_geodesic(hm, walk.back(), start);
    walk.insert(walk.end(), back.begin() + 1, back.end());
    std::vector<HoroVertex> loop;
    for (int v : walk) loop.push_back(h.vertex_at(v));
    auto fl = horoball_fill(h, loop);
    long len = long(loop.size()) - 1;
    ++rep.fill_loops;
    rep.max_fill_length = std::max(rep.max_fill_length, len);
    rep.max_fill_area = std::max(rep.max_fill_area, fl.area());
    if (fl.area() > 3 * len) rep.fill_ratio_ok = false;
  }
  return rep;
}

}  // namespace relhyp
