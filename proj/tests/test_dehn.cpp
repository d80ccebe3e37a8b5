#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <sstream>

#include "relhyp/dehn.hpp"
#include "relhyp/errors.hpp"
#include "relhyp/horoball.hpp"

using namespace relhyp;

namespace {

std::vector<FillingKernel> triangle_kernels(int p, int q, int r) {
  std::vector<FillingKernel> ks(3);
  for (int i = 0; i < 3; ++i) ks[i].parabolic_id = i + 1;
  if (p > 0) ks[0].lattice = {{p}};
  if (q > 0) ks[1].lattice = {{q}};
  if (r > 0) ks[2].lattice = {{r}};
  return ks;
}

}  // namespace

TEST_CASE("fill: slope lengths and the threshold record") {
  auto rp = triangle_base_presentation();
  auto fs = fill(rp, triangle_kernels(7, 7, 7), Constants::explicit_constants(1, 10, 100, 300));
  REQUIRE(fs.slope_lengths.size() == 3);
  for (const auto& s : fs.slope_lengths) {
    REQUIRE(s.has_value());
    CHECK(*s == 7);
  }
  CHECK(fs.threshold_coeff == 12);
  CHECK(fs.threshold_exponent == 300);
  CHECK(!fs.threshold_met());
  CHECK(fs.min_slope().value() == 7);
}

TEST_CASE("fill: trivial kernels give infinite slopes and the base quotient") {
  auto rp = triangle_base_presentation();
  auto fs = fill(rp, triangle_kernels(0, 0, 0), Constants::standard_ratio(1));
  for (const auto& s : fs.slope_lengths) CHECK(!s.has_value());
  CHECK(fs.threshold_met());  // vacuously, nothing to fill
  CHECK(fs.quotient.relators == rp.relators);
}

TEST_CASE("triangle family: spherical fillings saturate at the right orders") {
  struct Row {
    int p, q, r;
    long order;
  };
  for (Row row : {Row{2, 3, 5, 60}, Row{2, 3, 4, 24}, Row{2, 3, 3, 12},
                  Row{2, 2, 3, 6}, Row{2, 2, 5, 10}, Row{2, 2, 10, 20}}) {
    auto rep = triangle_experiment(row.p, row.q, row.r, 14);
    CHECK(!rep.euler_negative);
    CHECK(rep.finite_evidence);
    CHECK(rep.order == row.order);
  }
}

TEST_CASE("triangle family: hyperbolic fillings keep growing") {
  for (auto [p, q, r] : {std::array<int, 3>{2, 3, 7}, {3, 3, 4}, {4, 4, 4}}) {
    auto rep = triangle_experiment(p, q, r, 10);
    CHECK(rep.euler_negative);
    CHECK(!rep.finite_evidence);
    CHECK(rep.infinite_evidence);
    CHECK(rep.delta_value >= 0);  // finite measured thin constant
    // spheres strictly increase
    for (size_t i = 0; i + 1 < rep.ball_sizes.size(); ++i)
      CHECK(rep.ball_sizes[i] < rep.ball_sizes[i + 1]);
  }
}

TEST_CASE("injectivity: slopes (8,8,8) embed the parabolic quotients") {
  auto rp = triangle_base_presentation();
  auto fs = fill(rp, triangle_kernels(8, 8, 8), Constants::explicit_constants(1, 10, 100, 300));
  auto oracle = GroupOracle::make(fs.quotient);
  REQUIRE(oracle.complete());
  auto rep = injectivity_check(fs, oracle, 7);
  CHECK(rep.injective);
  CHECK(rep.intersections_trivial);
  CHECK(!rep.threshold_met);  // desk slopes sit far below 12 * 2^L2
  CHECK(rep.elements_checked > 0);
  CHECK(rep.pairs_checked > 0);
}

TEST_CASE("injectivity: a deliberately short filling is accidental but injective") {
  auto rp = triangle_base_presentation();
  auto fs = fill(rp, triangle_kernels(2, 2, 2), Constants::explicit_constants(1, 10, 100, 300));
  auto oracle = GroupOracle::make(fs.quotient);
  REQUIRE(oracle.complete());
  auto rep = injectivity_check(fs, oracle, 1);
  CHECK(rep.injective);  // Z/2 x Z/2 quotient keeps the generators apart
  CHECK(!rep.threshold_met);
}

TEST_CASE("survival: a radius-2 ball of the base survives the (8,8,8) filling") {
  auto rp = triangle_base_presentation();
  auto fs = fill(rp, triangle_kernels(8, 8, 8), Constants::explicit_constants(1, 10, 100, 300));
  auto base_oracle = GroupOracle::make(rp);
  auto quotient = GroupOracle::make(fs.quotient);
  auto ball = cayley_ball(base_oracle, 2);
  auto rep = survival_check(fs, base_oracle, quotient, ball.labels);
  CHECK(rep.injective_on_f);
  CHECK(rep.pairs > 0);
}

TEST_CASE("survival: kernel elements are identified and reported as such") {
  auto rp = triangle_base_presentation();
  auto fs = fill(rp, triangle_kernels(8, 8, 8), Constants::explicit_constants(1, 10, 100, 300));
  auto base_oracle = GroupOracle::make(rp);
  auto quotient = GroupOracle::make(fs.quotient);
  std::vector<Word> F{rp.parse_word("x"), rp.parse_word("x^9")};
  auto rep = survival_check(fs, base_oracle, quotient, F);
  CHECK(!rep.injective_on_f);
  REQUIRE(rep.identifications.size() == 1);
}

TEST_CASE("surgered space: all-trivial filling reproduces the base cusped ball") {
  auto rp = triangle_base_presentation();
  auto fs = fill(rp, triangle_kernels(0, 0, 0), Constants::standard_ratio(1));
  auto s = build_surgered(fs, 3, 2);
  auto base_oracle = GroupOracle::make(rp);
  auto base = build_cusped_ball(base_oracle, rp, 3, 2);
  CHECK(s.z.g.n == base.g.n);
  CHECK(s.z.g.edges == base.g.edges);
  CHECK(s.z.depth_of == base.depth_of);
}

TEST_CASE("surgered space: Z/5 parabolic grows a horoball over a 5-cycle") {
  std::istringstream in(
      "group ZrelZ\n"
      "generators x t\n"
      "parabolic 1 type Z generators x\n");
  auto rp = parse_presentation(in);
  std::vector<FillingKernel> ks(1);
  ks[0].parabolic_id = 1;
  ks[0].lattice = {{5}};
  auto fs = fill(rp, ks, Constants::explicit_constants(1, 10, 2, 6));
  auto s = build_surgered(fs, 3, 3);
  // the quotient parabolic is Z/5: its identity coset subgraph is a 5-cycle
  bool found = false;
  for (const auto& c : s.z.cosets) {
    if (c.members.size() == 5) {
      found = true;
      for (size_t i = 0; i < 5; ++i) {
        int deg = c.subgraph.degree(int(i));
        CHECK(deg == 2);
      }
    }
  }
  CHECK(found);
}

TEST_CASE("shell isomorphism: glued horoballs match build_horoball exactly") {
  auto rp = triangle_base_presentation();
  auto fs = fill(rp, triangle_kernels(4, 4, 4), Constants::explicit_constants(1, 10, 2, 6));
  auto s = build_surgered(fs, 3, 4);
  for (size_t ci = 0; ci < s.z.cosets.size(); ++ci) {
    const auto& c = s.z.cosets[ci];
    auto h = build_horoball(c.subgraph, s.z.horo_depth);
    std::set<std::pair<int, int>> expect, got;
    for (size_t e = 0; e < h.g.edges.size(); ++e) {
      HoroVertex u = h.vertex_at(h.g.edges[e][0]);
      HoroVertex v = h.vertex_at(h.g.edges[e][1]);
      int gu = s.z.horo_vid(int(ci), u.base, u.depth);
      int gv = s.z.horo_vid(int(ci), v.base, v.depth);
      expect.insert({std::min(gu, gv), std::max(gu, gv)});
    }
    for (size_t e = 0; e < s.z.g.edges.size(); ++e) {
      int u = s.z.g.edges[e][0], v = s.z.g.edges[e][1];
      auto inside = [&](int x) {
        if (s.z.depth_of[x] >= 1) return s.z.coset_of[x] == int(ci);
        return std::binary_search(c.members.begin(), c.members.end(), x);
      };
      bool both = inside(u) && inside(v);
      if (both && s.z.depth_of[u] == 0 && s.z.depth_of[v] == 0) {
        int label = s.z.ball.edge_label[e];
        if (!fs.quotient.parabolics[c.parabolic - 1].contains_generator(label))
          both = false;
      }
      if (both) got.insert({std::min(u, v), std::max(u, v)});
    }
    CHECK(expect == got);
  }
  // the identity's coset of each parabolic lies fully inside the ball: a
  // 4-cycle, so no boundary edge is a loop (coset graphs away from the
  // truncation boundary can be shorter segments)
  int full = 0;
  for (const auto& c : s.z.cosets)
    if (c.transversal == 0 && c.members.size() == 4) ++full;
  CHECK(full == 3);
}

TEST_CASE("quotient delta: evidence report on the (4,4,4) surgered space") {
  auto rp = triangle_base_presentation();
  auto fs = fill(rp, triangle_kernels(4, 4, 4), Constants::explicit_constants(1, 10, 2, 6));
  auto s = build_surgered(fs, 3, 3);
  auto rep = quotient_delta(s, 1, SamplingBudget{60, 400, 3}, 25);
  CHECK(rep.delta_value >= 0);
  CHECK(rep.fill_loops > 0);
  CHECK(rep.fill_ratio_ok);
  CHECK(!rep.threshold_met);
}

TEST_CASE("incomplete quotients surface as undecided, not wrong") {
  // a presentation whose completion is hopeless at tiny bounds
  std::istringstream in(
      "group Tough\n"
      "generators x y\n"
      "parabolic 1 type Z generators x\n"
      "relator x y x y^-1 x^-1 y^-1 x^-1 y\n");
  auto rp = parse_presentation(in);
  std::vector<FillingKernel> ks(1);
  ks[0].parabolic_id = 1;
  ks[0].lattice = {{3}};
  auto fs = fill(rp, ks, Constants::standard_ratio(1));
  GroupOracle oracle = GroupOracle::make(fs.quotient, 5, 6);
  if (!oracle.complete()) {
    CHECK_THROWS_AS(build_surgered(fs, 2, 1, 100000, 5, 6), incomplete_oracle);
  }
}

TEST_CASE("quotient delta of the trivial filling matches the base cusped ball") {
  auto rp = triangle_base_presentation();
  auto fs = fill(rp, triangle_kernels(0, 0, 0), Constants::standard_ratio(1));
  auto s = build_surgered(fs, 3, 3);
  auto o = GroupOracle::make(rp);
  auto base = build_cusped_ball(o, rp, 3, 3);
  SamplingBudget budget{60, 500, 9};
  auto quotient_rep = quotient_delta(s, 1, budget, 0);
  MetricCache m(base.g);
  auto inner = base.inner_vertices(1);
  auto base_rep = delta_thin(m, inner, budget);
  CHECK(quotient_rep.delta_value == base_rep.value);
}
