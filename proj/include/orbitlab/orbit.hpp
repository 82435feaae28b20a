#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "orbitlab/heights.hpp"

namespace orbitlab {

struct Preperiodic {
  std::size_t tail;
  std::size_t cycle;
};
struct WanderingCertified {
  /// Index n with h(f^n P) > C_low/(d-1), which forces hhat(P) > 0.
  std::size_t witness_step;
};
struct Inconclusive {
  std::size_t steps_used;
};
using OrbitClass = std::variant<Preperiodic, WanderingCertified, Inconclusive>;

inline std::string to_string(const OrbitClass& c) {
  if (const auto* p = std::get_if<Preperiodic>(&c))
    return "Preperiodic(tail " + std::to_string(p->tail) + ", cycle " + std::to_string(p->cycle) + ")";
  if (const auto* w = std::get_if<WanderingCertified>(&c))
    return "WanderingCertified(step " + std::to_string(w->witness_step) + ")";
  return "Inconclusive(" + std::to_string(std::get<Inconclusive>(c).steps_used) + " steps)";
}

/// Explored forward orbit f^0 P, f^1 P, ... and its classification. For
/// Preperiodic(t, c) the list holds exactly t + c + 1 points and
/// points[t] == points[t + c].
struct OrbitRecord {
  std::vector<ProjPoint> points;
  OrbitClass classification;

  bool is_preperiodic() const { return std::holds_alternative<Preperiodic>(classification); }
  bool is_wandering() const { return std::holds_alternative<WanderingCertified>(classification); }
};

struct OrbitBudget {
  std::size_t max_steps = 64;
  unsigned long cap_bits = 256;
};

/// classify_preperiodic. Stops at the first exact repeat (minimal tail and
/// cycle), or once h(f^n P) > C_low/(d-1) under Certified constants, or when
/// the step budget or height cap runs out (Inconclusive).
inline OrbitRecord classify_preperiodic(const MorphismPN& f, const ProjPoint& P, const OrbitBudget& budget,
                                        const ComparisonConstants& constants) {
  OrbitRecord rec;
  std::unordered_map<ProjPoint, std::size_t, ProjPointHash> index;
  const BigInt cap = height_cap_from_bits(budget.cap_bits);
  const bool can_certify = constants.certified() && f.degree() >= 2 && constants.c_low;
  std::optional<Interval> threshold;
  if (can_certify) threshold = *constants.c_low / Interval::point(BigInt(f.degree() - 1));

  ProjPoint Q = P;
  for (std::size_t n = 0;; ++n) {
    if (auto it = index.find(Q); it != index.end()) {
      rec.points.push_back(Q);
      rec.classification = Preperiodic{it->second, n - it->second};
      return rec;
    }
    index.emplace(Q, n);
    rec.points.push_back(Q);
    if (threshold && certainly_greater(weil_height(Q).log, *threshold)) {
      rec.classification = WanderingCertified{n};
      return rec;
    }
    if (n >= budget.max_steps || Q.height() > cap) {
      rec.classification = Inconclusive{n};
      return rec;
    }
    try {
      Q = evaluate(f, Q);
    } catch (const BaseLocusHit&) {
      throw BaseLocusHit(n, Q.str());
    }
  }
}

inline OrbitRecord classify_preperiodic(const MorphismPN& f, const ProjPoint& P, const OrbitBudget& budget = {}) {
  return classify_preperiodic(f, P, budget, comparison_constants(f));
}

}  // namespace orbitlab
