#include "relhyp/word.hpp"

#include <cstdlib>

namespace relhyp {

Word Word::inverse() const {
  Word out;
  out.letters.reserve(letters.size());
  for (auto it = letters.rbegin(); it != letters.rend(); ++it)
    out.letters.push_back(-*it);
  return out;
}

Word Word::operator*(const Word& o) const {
  Word out;
  out.letters.reserve(letters.size() + o.letters.size());
  out.letters.insert(out.letters.end(), letters.begin(), letters.end());
  out.letters.insert(out.letters.end(), o.letters.begin(), o.letters.end());
  return out;
}

Word Word::power(Letter gen, int exponent) {
  Word out;
  Letter l = exponent >= 0 ? gen : -gen;
  int n = std::abs(exponent);
  out.letters.assign(n, l);
  return out;
}

Word free_reduce(const Word& w) {
  Word out;
  out.letters.reserve(w.letters.size());
  for (Letter l : w.letters) {
    if (!out.letters.empty() && out.letters.back() == -l)
      out.letters.pop_back();
    else
      out.letters.push_back(l);
  }
  return out;
}

bool is_freely_reduced(const Word& w) {
  for (size_t i = 0; i + 1 < w.letters.size(); ++i)
    if (w.letters[i] == -w.letters[i + 1]) return false;
  return true;
}

int letter_rank(Letter l) {
  int g = std::abs(l);
  return 2 * (g - 1) + (l < 0 ? 1 : 0);
}

bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (size_t i = 0; i < a.size(); ++i) {
    int ra = letter_rank(a[i]), rb = letter_rank(b[i]);
    if (ra != rb) return ra < rb;
  }
  return false;
}

}  // namespace relhyp
