#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "relhyp/word.hpp"

namespace relhyp {

enum class ParabolicKind { FreeAbelian, FiniteCyclic, FreeGroup };

// A peripheral subgroup specification.  The generator set is a subset of the
// global generators, given by 1-based indices; the subgroup is generated by
// exactly those generators (compatible generating set).
struct ParabolicSpec {
  int id = 0;  // 1..n
  ParabolicKind kind = ParabolicKind::FreeAbelian;
  int rank_or_order = 1;        // rank for FreeAbelian/FreeGroup, order for FiniteCyclic
  std::vector<int> generators;  // global generator indices

  bool contains_generator(int g) const;
};

struct RelativePresentation {
  std::string name;
  std::vector<std::string> generators;  // 1-based naming: generators[i-1]
  std::vector<ParabolicSpec> parabolics;
  std::vector<Word> relators;

  int generator_index(const std::string& name) const;  // 0 if unknown
  // The parabolic a generator belongs to, or 0.
  int parabolic_of_generator(int g) const;
  void validate() const;  // throws parse_error on a malformed presentation

  // Implied relators of the parabolic specs themselves (commutators for
  // FreeAbelian ranks >= 2, power relators for FiniteCyclic).  These are
  // needed when feeding the presentation to a rewriting engine.
  std::vector<Word> parabolic_relators() const;

  std::string word_to_string(const Word& w) const;
  Word parse_word(const std::string& text) const;
};

// One filling kernel K_i <| P_i.  For FreeAbelian parabolics the kernel is the
// sublattice spanned by the rows of `lattice` (coordinates in the parabolic's
// generator order); for the other kinds it is the normal closure of `words`
// (words over the parabolic's generators, as global letters).
struct FillingKernel {
  int parabolic_id = 0;
  std::vector<std::vector<long>> lattice;
  std::vector<Word> words;

  bool trivial() const { return lattice.empty() && words.empty(); }
};

RelativePresentation parse_presentation(std::istream& in);
RelativePresentation parse_presentation_file(const std::string& path);
std::string print_presentation(const RelativePresentation& rp);

// Length of the shortest nontrivial element of the kernel in the word metric
// of the parabolic, or nullopt for the trivial kernel (infinity).  Raises
// search_bound_exceeded when the bounded search cannot certify the value.
std::optional<long> slope_length(const ParabolicSpec& p, const FillingKernel& k,
                                 long search_bound);

// Does the exponent vector (FreeAbelian) or exponent (cyclic kinds) lie in
// the kernel?  Supports the same kernel shapes as quotient_presentation.
bool kernel_contains(const ParabolicSpec& p, const FillingKernel& k,
                     const std::vector<long>& exponents);

// Presentation of G/K: same generators, relators extended by kernel words,
// parabolic specs replaced by quotient specs.
RelativePresentation quotient_presentation(const RelativePresentation& rp,
                                           const std::vector<FillingKernel>& kernels);

}  // namespace relhyp
