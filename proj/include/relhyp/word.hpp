#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace relhyp {

// A word in a free group on numbered generators.  Letter +i stands for
// generator i (1-based), letter -i for its inverse.  The empty word is the
// identity.
using Letter = int32_t;

struct Word {
  std::vector<Letter> letters;

  Word() = default;
  explicit Word(std::vector<Letter> ls) : letters(std::move(ls)) {}

  bool empty() const { return letters.empty(); }
  size_t size() const { return letters.size(); }
  Letter operator[](size_t i) const { return letters[i]; }

  bool operator==(const Word& o) const { return letters == o.letters; }
  bool operator!=(const Word& o) const { return letters != o.letters; }

  Word inverse() const;
  Word operator*(const Word& o) const;  // concatenation, not reduced

  static Word power(Letter gen, int exponent);
};

// Unique freely reduced representative; idempotent.
Word free_reduce(const Word& w);

bool is_freely_reduced(const Word& w);

// Letter order used throughout: g1 < g1^-1 < g2 < g2^-1 < ...
int letter_rank(Letter l);

// ShortLex comparison under letter_rank: length first, then lexicographic.
bool shortlex_less(const Word& a, const Word& b);

}  // namespace relhyp
