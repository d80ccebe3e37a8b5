#pragma once

#include <optional>
#include <string>
#include <vector>

#include "relhyp/cusped.hpp"
#include "relhyp/metric.hpp"
#include "relhyp/oracle.hpp"
#include "relhyp/presentation.hpp"

namespace relhyp {

// A Dehn filling: base presentation, one kernel per parabolic, the quotient
// presentation, computed slope lengths, and the threshold bookkeeping.  The
// theoretical threshold 12 * 2^(3000 delta) is recorded as coefficient and
// exponent; experiments run far below it and the reports say so.
struct FillingSpec {
  RelativePresentation base;
  std::vector<FillingKernel> kernels;
  RelativePresentation quotient;
  std::vector<std::optional<long>> slope_lengths;  // nullopt = infinity
  long threshold_coeff = 12;
  long threshold_exponent = 0;  // L2 of the active regime

  std::optional<long> min_slope() const;
  bool threshold_met() const;
};

FillingSpec fill(const RelativePresentation& rp, std::vector<FillingKernel> kernels,
                 const Constants& cst, long slope_search_bound = 64);

// Experiment manifest: a presentation line plus one kernel line per filled
// parabolic, either "fill <id> word <w>" or "fill <id> lattice r11 r12 ; ...".
// Unmentioned parabolics get the trivial kernel.
struct FillingManifest {
  std::string presentation_path;
  RelativePresentation presentation;
  std::vector<FillingKernel> kernels;
};

FillingManifest parse_filling_manifest(const std::string& path);

// The surgered space Z: the cusped ball of the quotient presentation (the
// desk-scale realization of Y/K with fresh horoballs glued on).
struct SurgeredSpace {
  FillingSpec spec;
  GroupOracle oracle;
  CuspedBall z;
};

SurgeredSpace build_surgered(const FillingSpec& fs, int R, int T,
                             long max_vertices = 500000, int max_rules = 5000,
                             int max_length = 64);

struct InjectivityReport {
  bool injective = true;
  bool intersections_trivial = true;
  bool threshold_met = false;
  long elements_checked = 0;
  long pairs_checked = 0;
  std::vector<std::string> violations;
};

// Enumerates nontrivial elements of each P_i/K_i up to word length `bound`
// and checks their quotient normal forms are nontrivial, plus pairwise
// triviality of parabolic-image intersections on the same samples.
InjectivityReport injectivity_check(const FillingSpec& fs, const GroupOracle& quotient,
                                    long bound);

struct SurvivalReport {
  bool injective_on_f = true;
  long pairs = 0;
  // identified pairs (as base normal forms); every one is a kernel relation
  std::vector<std::pair<std::string, std::string>> identifications;
};

SurvivalReport survival_check(const FillingSpec& fs, const GroupOracle& base_oracle,
                              const GroupOracle& quotient, const std::vector<Word>& F);

struct TriangleReport {
  int p = 0, q = 0, r = 0;
  bool euler_negative = false;  // 1/p + 1/q + 1/r < 1
  bool finite_evidence = false;
  bool infinite_evidence = false;
  long order = 0;  // group order when saturated
  std::vector<long> ball_sizes;
  long delta_value = -1;  // thin-constant estimate on the ball (when infinite)
  long delta_samples = 0;
  bool undecided = false;
  std::string note;
};

// Fills F(x,y) rel <x>,<y>,<xy> with x^p, y^q, (xy)^r, realized through the
// compatible generating set {x, y, z | x y z^-1}.
TriangleReport triangle_experiment(int p, int q, int r, int radius,
                                   long max_vertices = 500000,
                                   long delta_samples = 2000, uint64_t seed = 1);

RelativePresentation triangle_base_presentation();

struct QuotientDeltaReport {
  long delta_value = -1;
  long triangles = 0;
  bool exhaustive = false;
  long fill_loops = 0;
  long max_fill_area = 0;
  long max_fill_length = 0;
  bool fill_ratio_ok = true;  // area <= 3 * length on every sampled loop
  bool threshold_met = false;
};

// Hyperbolicity evidence for the surgered space: thin-triangle estimate on
// the inner ball plus constructive horoball fillings as isoperimetry
// evidence.
QuotientDeltaReport quotient_delta(const SurgeredSpace& s, int inner_margin,
                                   const SamplingBudget& budget, long fill_loops = 50);

}  // namespace relhyp
