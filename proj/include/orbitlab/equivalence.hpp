#pragma once

#include <cmath>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <variant>
#include <vector>

#include "orbitlab/density.hpp"
#include "orbitlab/enumerate.hpp"
#include "orbitlab/orbit.hpp"

namespace orbitlab {

enum class NonEquivCertificate { HeightRatio, SupportSignature, PreperiodicCycleDisjoint };

inline const char* to_string(NonEquivCertificate c) {
  switch (c) {
    case NonEquivCertificate::HeightRatio: return "HeightRatio";
    case NonEquivCertificate::SupportSignature: return "SupportSignature";
    case NonEquivCertificate::PreperiodicCycleDisjoint: return "PreperiodicCycleDisjoint";
  }
  return "?";
}

/// f^i(P) == f^j(Q), with (i + j, i) lexicographically minimal.
struct Equivalent {
  std::size_t i, j;
};
struct NotEquivalent {
  NonEquivCertificate certificate;
};
struct InconclusiveVerdict {
  std::size_t budget_used;
};
using EquivVerdict = std::variant<Equivalent, NotEquivalent, InconclusiveVerdict>;

inline std::string to_string(const EquivVerdict& v) {
  if (const auto* e = std::get_if<Equivalent>(&v))
    return "Equivalent(" + std::to_string(e->i) + "," + std::to_string(e->j) + ")";
  if (const auto* n = std::get_if<NotEquivalent>(&v)) return std::string("NotEquivalent(") + to_string(n->certificate) + ")";
  return "Inconclusive(" + std::to_string(std::get<InconclusiveVerdict>(v).budget_used) + ")";
}

struct EquivBudget {
  /// Largest i + j searched for an orbit intersection.
  std::size_t max_sum = 64;
  unsigned long cap_bits = 256;
  Rat height_tol = Rat(1, 1000000);
};

/// Forward orbit prefix; when a cycle was closed, every index is
/// addressable through periodic extension.
class OrbitSegment {
 public:
  OrbitSegment(const MorphismPN& f, const ProjPoint& P, std::size_t max_len, unsigned long cap_bits) {
    const BigInt cap = height_cap_from_bits(cap_bits);
    std::unordered_map<ProjPoint, std::size_t, ProjPointHash> index;
    ProjPoint Q = P;
    for (std::size_t n = 0;; ++n) {
      if (auto it = index.find(Q); it != index.end()) {
        tail_ = it->second;
        cycle_ = n - it->second;
        return;
      }
      index.emplace(Q, n);
      pts_.push_back(Q);
      if (n >= max_len || Q.height() > cap) return;
      try {
        Q = evaluate(f, Q);
      } catch (const BaseLocusHit&) {
        throw BaseLocusHit(n, Q.str());
      }
    }
  }

  bool closed() const { return cycle_ > 0; }
  std::size_t tail() const { return tail_; }
  std::size_t cycle() const { return cycle_; }
  const std::vector<ProjPoint>& points() const { return pts_; }

  const ProjPoint* at(std::size_t i) const {
    if (i < pts_.size()) return &pts_[i];
    if (!closed()) return nullptr;
    return &pts_[tail_ + (i - tail_) % cycle_];
  }

 private:
  std::vector<ProjPoint> pts_;
  std::size_t tail_ = 0, cycle_ = 0;
};

namespace detail {

/// Per coordinate: zero flag and prime support. Invariant under an
/// identity-order pure power map.
inline std::vector<std::pair<bool, std::vector<BigInt>>> support_signature(const ProjPoint& P) {
  std::vector<std::pair<bool, std::vector<BigInt>>> sig;
  for (const auto& c : P.coords()) {
    std::vector<BigInt> primes;
    if (c != 0)
      for (const auto& [p, e] : factor(c)) primes.push_back(p);
    sig.emplace_back(c == 0, std::move(primes));
  }
  return sig;
}

/// Is r = d^k for some integer k?
inline bool is_integer_power(Rat r, const BigInt& d) {
  if (r <= 0) return false;
  while (r.get_den() == 1 && r.get_num() % d == 0 && r != 1) r /= Rat(d);
  while (r.get_num() == 1 && r.get_den() % d == 0) r *= Rat(d);
  return r == 1;
}

/// True when the enclosures prove hP / hQ is not an integer power of d.
inline bool ratio_excludes_powers(const HeightInterval& hP, const HeightInterval& hQ, unsigned d) {
  if (hP.exact && hQ.exact) {
    if (hP.exact->base() != hQ.exact->base()) return true;
    return !is_integer_power(hP.exact->coef() / hQ.exact->coef(), BigInt(d));
  }
  const Interval R = hP.value / hQ.value;
  const double ld = std::log(static_cast<double>(d));
  const double lo = std::log(R.lo().to_double()) / ld, hi = std::log(R.hi().to_double()) / ld;
  if (!std::isfinite(lo) || !std::isfinite(hi)) return false;
  for (long k = static_cast<long>(std::floor(lo)) - 1; k <= static_cast<long>(std::ceil(hi)) + 1; ++k) {
    const Interval dk = Interval::point(ipow(Rat(BigInt(d)), k));
    if (!(certainly_less(dk, R) || certainly_greater(dk, R))) return false;
  }
  return true;
}

inline std::optional<Equivalent> first_merge(const OrbitSegment& a, const OrbitSegment& b, std::size_t max_sum) {
  for (std::size_t s = 0; s <= max_sum; ++s)
    for (std::size_t i = 0; i <= s; ++i) {
      const ProjPoint* p = a.at(i);
      const ProjPoint* q = b.at(s - i);
      if (p && q && *p == *q) return Equivalent{i, s - i};
    }
  return std::nullopt;
}

}  // namespace detail

/// decide_grand_equiv. Order of checks: exact orbit intersection within the
/// budget; complete finite orbits; canonical-height ratio (Certified
/// constants only); prime-support signature (identity-order pure power
/// maps only). Anything else is Inconclusive.
inline EquivVerdict decide_grand_equiv(const MorphismPN& f, const ProjPoint& P, const ProjPoint& Q,
                                       const ComparisonConstants& constants, const EquivBudget& budget = {}) {
  const OrbitSegment op(f, P, budget.max_sum, budget.cap_bits);
  const OrbitSegment oq(f, Q, budget.max_sum, budget.cap_bits);
  if (auto e = detail::first_merge(op, oq, budget.max_sum)) return *e;

  if (op.closed() && oq.closed()) {
    // both orbits are finite and fully known
    const std::size_t lim = op.points().size() + oq.points().size();
    if (auto e = detail::first_merge(op, oq, lim)) return *e;
    return NotEquivalent{NonEquivCertificate::PreperiodicCycleDisjoint};
  }

  if (constants.certified() && f.degree() >= 2) {
    HeightBudget hb{budget.height_tol, budget.cap_bits, false};
    const HeightInterval hP = canonical_height(f, P, constants, hb);
    const HeightInterval hQ = canonical_height(f, Q, constants, hb);
    if ((hP.is_exact_zero() && hQ.is_certainly_positive()) || (hQ.is_exact_zero() && hP.is_certainly_positive()))
      return NotEquivalent{NonEquivCertificate::HeightRatio};
    if (hP.is_certainly_positive() && hQ.is_certainly_positive() &&
        detail::ratio_excludes_powers(hP, hQ, f.degree()))
      return NotEquivalent{NonEquivCertificate::HeightRatio};
  }

  if (f.degree() >= 2 && f.is_pure_power(false) && detail::support_signature(P) != detail::support_signature(Q))
    return NotEquivalent{NonEquivCertificate::SupportSignature};

  return InconclusiveVerdict{std::max(op.points().size(), oq.points().size())};
}

// ---------------------------------------------------------------------------
// Greedy representatives
// ---------------------------------------------------------------------------

/// f^i(reps[rep]) == f^j(point).
struct MergedPoint {
  ProjPoint point;
  std::size_t rep;
  Equivalent witness;
};

struct PairCertificate {
  std::size_t a, b;  // indices into reps, a < b
  NonEquivCertificate certificate;
};

struct RepSet {
  std::vector<ProjPoint> reps;
  long enumeration_bound = 0;
  DensityCertificate density;
  std::vector<MergedPoint> merged;
  std::vector<ProjPoint> inconclusive;
  std::vector<PairCertificate> pair_certificates;
  bool certified = false;
};

/// greedy_representatives: walks P^N(Q) up to height T in enumeration
/// order and keeps a candidate iff it is certified NotEquivalent to every
/// representative so far.
inline RepSet greedy_representatives(const MorphismPN& f, long T, unsigned D, const ComparisonConstants& constants,
                                     const EquivBudget& budget = {}) {
  if (f.degree() < 2) throw PreconditionViolated("deg f >= 2", "greedy selection needs degree at least 2");
  RepSet rs;
  rs.enumeration_bound = T;
  rs.certified = constants.certified();
  for_each_point(f.N(), T, [&](const std::vector<long>& x) {
    const ProjPoint C = ProjPoint::from_integers(std::vector<BigInt>(x.begin(), x.end()));
    std::vector<PairCertificate> certs;
    bool undecided = false;
    for (std::size_t r = 0; r < rs.reps.size(); ++r) {
      const EquivVerdict v = decide_grand_equiv(f, rs.reps[r], C, constants, budget);
      if (const auto* e = std::get_if<Equivalent>(&v)) {
        rs.merged.push_back({C, r, *e});
        return;
      }
      if (const auto* n = std::get_if<NotEquivalent>(&v)) certs.push_back({r, rs.reps.size(), n->certificate});
      else undecided = true;
    }
    if (undecided) {
      rs.inconclusive.push_back(C);
      return;
    }
    rs.reps.push_back(C);
    rs.pair_certificates.insert(rs.pair_certificates.end(), certs.begin(), certs.end());
  });
  rs.density = vanishing_forms(rs.reps, D, f.N());
  return rs;
}

}  // namespace orbitlab
