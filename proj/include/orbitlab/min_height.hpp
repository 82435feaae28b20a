#pragma once

#include <optional>

#include "orbitlab/enumerate.hpp"
#include "orbitlab/orbit.hpp"

namespace orbitlab {

struct MinHeightResult {
  HeightInterval value;
  ProjPoint witness;
  /// Every point with H <= search_bound was examined.
  long search_bound = 0;
  std::size_t examined = 0;
  std::size_t preperiodic = 0;
  std::size_t inconclusive = 0;
};

namespace detail {
/// Strict order on canonical-height enclosures: exact values compare
/// exactly when equal, otherwise by midpoint.
inline int compare_heights(const HeightInterval& a, const HeightInterval& b) {
  if (a.exact && b.exact && *a.exact == *b.exact) return 0;
  const Real ma = a.midpoint(), mb = b.midpoint();
  if (ma < mb) return -1;
  if (mb < ma) return 1;
  return 0;
}
}  // namespace detail

/// hhat_min over the box H(P) <= T: the smallest canonical height among
/// points not classified Preperiodic, with the lex-least minimizer. The
/// result says nothing about points outside the box.
inline MinHeightResult hhat_min(const MorphismPN& f, long T, const ComparisonConstants& constants,
                                const HeightBudget& hb = {Rat(1, 1000000000), 256, false},
                                const OrbitBudget& ob = {}) {
  if (f.degree() < 2) throw PreconditionViolated("deg f >= 2", "minimal canonical height needs degree at least 2");
  std::optional<MinHeightResult> best;
  std::size_t examined = 0, prep = 0, inc = 0;
  for_each_point(f.N(), T, [&](const std::vector<long>& x) {
    ++examined;
    const ProjPoint P = ProjPoint::from_integers(std::vector<BigInt>(x.begin(), x.end()));
    const OrbitRecord rec = classify_preperiodic(f, P, ob, constants);
    if (rec.is_preperiodic()) {
      ++prep;
      return;
    }
    if (!rec.is_wandering()) ++inc;
    HeightInterval h = canonical_height(f, P, constants, hb);
    if (!best) {
      best = MinHeightResult{std::move(h), P};
      return;
    }
    const int c = detail::compare_heights(h, best->value);
    if (c < 0 || (c == 0 && lex_less(P, best->witness))) best = MinHeightResult{std::move(h), P};
  });
  if (!best) throw Error(ErrorKind::EmptySearch, "every point with H <= " + std::to_string(T) + " is preperiodic");
  best->search_bound = T;
  best->examined = examined;
  best->preperiodic = prep;
  best->inconclusive = inc;
  return *best;
}

}  // namespace orbitlab
