#pragma once

#include <optional>
#include <string>
#include <unordered_set>
#include <variant>
#include <vector>

#include "orbitlab/enumerate.hpp"
#include "orbitlab/heights.hpp"

namespace orbitlab {

/// #{P in P^N(Q) : H(P) <= T}.
inline BigInt count_projective_points(std::size_t N, long T) {
  if (T < 1) throw PreconditionViolated("T >= 1", std::to_string(T));
  BigInt total = 0;
  for (long H = 1; H <= T; ++H) {
    unsigned long shell = 0;
    for_each_point_in_shell_unordered(N, H, [&](const std::vector<long>&) { ++shell; });
    total += shell;
  }
  return total;
}

/// #{P : H(P) <= T, form(P) = 0}.
inline BigInt count_hypersurface_points(const HomogPoly& form, long T) {
  if (form.is_zero()) throw PreconditionViolated("form nonzero", "zero form");
  if (T < 1) throw PreconditionViolated("T >= 1", std::to_string(T));
  BigInt total = 0;
  std::vector<BigInt> buf(form.N() + 1);
  for (long H = 1; H <= T; ++H) {
    for_each_point_in_shell_unordered(form.N(), H, [&](const std::vector<long>& x) {
      for (std::size_t i = 0; i < x.size(); ++i) buf[i] = x[i];
      if (form(buf) == 0) ++total;
    });
  }
  return total;
}

struct OrbitCount {
  BigInt count = 0;
  /// 1 + log_d((log T + C_up) / hhat_lo); absent when hhat is not
  /// certified positive or log T + C_up is not positive.
  std::optional<Interval> paper_bound;
  bool certified_wandering = false;
  /// count <= bound, decided with outward rounding or, at equality, exactly.
  bool bound_holds = false;
  /// Set when the count had to stop at the step budget (non-certified
  /// constants) rather than at a proven height barrier.
  bool truncated = false;
  std::size_t steps = 0;
};

struct OrbitCountBudget {
  std::size_t max_steps = 256;
  /// Uncertified orbits stop once coordinates exceed this many bits.
  std::size_t cap_bits = 4096;
  HeightBudget height{};
};

namespace detail {

/// base^(e) <= bound for e = num * d^k (num >= 0), without forming huge powers.
inline bool power_at_most(const BigInt& base, const BigInt& e, const BigInt& bound) {
  if (base <= 1) return bound >= 1 || e == 0;
  const std::size_t bb = mpz_sizeinbase(base.get_mpz_t(), 2) - 1;
  const std::size_t lim = mpz_sizeinbase(bound.get_mpz_t(), 2);
  if (e * BigInt(static_cast<unsigned long>(bb)) > BigInt(static_cast<unsigned long>(lim))) return false;
  return ipow(base, e.get_ui()) <= bound;
}

}  // namespace detail

inline OrbitCount count_orbit(const MorphismPN& f, const ProjPoint& P, const BigInt& T, const ComparisonConstants& constants,
                              const OrbitCountBudget& budget = {}) {
  const unsigned d = f.degree();
  if (d < 2) throw PreconditionViolated("deg f >= 2", "counting needs degree at least 2");
  if (T < 1) throw PreconditionViolated("T >= 1", T.get_str());
  OrbitCount res;

  const Interval logT = Interval::log_of(T);
  const Interval c_low = constants.c_low ? *constants.c_low : constants.c_up;
  const Interval barrier_low = c_low / Interval::point(BigInt(d - 1));
  std::unordered_set<ProjPoint, ProjPointHash> seen;
  ProjPoint Q = P;
  for (std::size_t n = 0;; ++n) {
    res.steps = n;
    if (!seen.insert(Q).second) {
      // the remaining orbit repeats points already counted
      for (const auto& R : seen)
        if (R.height() <= T) throw PreconditionViolated("P wandering", "preperiodic orbit meets height <= T infinitely often");
      break;
    }
    const BigInt H = Q.height();
    if (H <= T) ++res.count;
    const Interval h = Interval::log_of(H);
    if (constants.certified() && certainly_greater(h, logT) && certainly_greater(h, barrier_low)) break;
    if (!constants.certified() && (n >= budget.max_steps || mpz_sizeinbase(H.get_mpz_t(), 2) > budget.cap_bits)) {
      res.truncated = true;
      break;
    }
    Q = iterate(f, Q, 1);
  }

  HeightInterval hh;
  try {
    hh = canonical_height(f, P, constants, budget.height);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::HeightOverflow) throw;
    HeightBudget loose = budget.height;
    loose.strict = false;
    hh = canonical_height(f, P, constants, loose);
  }
  res.certified_wandering = hh.is_certainly_positive();
  if (!res.certified_wandering) return res;

  const Interval num = logT + constants.c_up;
  if (num.certainly_positive()) {
    const Interval ratio = num / Interval(hh.lo(), hh.lo());
    res.paper_bound = Interval::point(BigInt(1)) + log(ratio) / Interval::log_of(BigInt(d));
  }
  if (res.count == 0) {
    res.bound_holds = true;
  } else if (res.paper_bound && Real::from(res.count, MPFR_RNDU) <= res.paper_bound->lo()) {
    res.bound_holds = true;
  } else if (hh.exact && !hh.exact->is_zero()) {
    // d^(count-1) * coef * log(base) <= log(T * up_factor)
    const Rat& c = hh.exact->coef();
    BigInt e = c.get_num() * ipow(BigInt(d), BigInt(res.count - 1).get_ui());
    res.bound_holds = detail::power_at_most(hh.exact->base(), e, ipow(T * constants.up_factor, c.get_den().get_ui()));
  }
  return res;
}

// ---------------------------------------------------------------------------
// Scans
// ---------------------------------------------------------------------------

struct ProjectiveScan {
  std::size_t N = 1;
};
struct OrbitScan {
  MorphismPN f;
  ProjPoint P;
  ComparisonConstants constants;
};
struct HypersurfaceScan {
  HomogPoly form;
};
using ScanKind = std::variant<ProjectiveScan, OrbitScan, HypersurfaceScan>;

struct CountReport {
  std::vector<long> T_grid;
  std::vector<BigInt> counts;
  /// Name of the normalization, e.g. "T^2" or "loglogT".
  std::string normalization;
  /// count / T^k (projective, hypersurface).
  std::vector<std::optional<Rat>> normalized;
  /// count / log log T (orbit); absent for T <= e.
  std::vector<std::optional<Interval>> normalized_real;
  /// Orbit scans only.
  std::vector<OrbitCount> orbit_details;
};

inline CountReport counting_scan(const ScanKind& kind, const std::vector<long>& T_grid) {
  for (std::size_t i = 0; i < T_grid.size(); ++i) {
    if (T_grid[i] < 1) throw PreconditionViolated("T >= 1", std::to_string(T_grid[i]));
    if (i && T_grid[i] <= T_grid[i - 1]) throw PreconditionViolated("grid increasing", "at index " + std::to_string(i));
  }
  CountReport rep;
  rep.T_grid = T_grid;
  auto rational_norm = [&](std::size_t k, auto&& counter) {
    rep.normalization = "T^" + std::to_string(k);
    for (long T : T_grid) {
      BigInt c = counter(T);
      rep.normalized.push_back(Rat(c) / Rat(ipow(BigInt(T), k)));
      rep.normalized.back()->canonicalize();
      rep.counts.push_back(std::move(c));
    }
  };
  if (const auto* p = std::get_if<ProjectiveScan>(&kind)) {
    rational_norm(p->N + 1, [&](long T) { return count_projective_points(p->N, T); });
  } else if (const auto* h = std::get_if<HypersurfaceScan>(&kind)) {
    rational_norm(h->form.N(), [&](long T) { return count_hypersurface_points(h->form, T); });
  } else {
    const auto& o = std::get<OrbitScan>(kind);
    rep.normalization = "loglogT";
    for (long T : T_grid) {
      OrbitCount oc = count_orbit(o.f, o.P, BigInt(T), o.constants);
      rep.counts.push_back(oc.count);
      const Interval lt = Interval::log_of(BigInt(T));
      if (certainly_greater(lt, Interval::point(BigInt(1)))) {
        rep.normalized_real.push_back(Interval::point(oc.count) / log(lt));
      } else {
        rep.normalized_real.push_back(std::nullopt);
      }
      rep.orbit_details.push_back(std::move(oc));
    }
  }
  return rep;
}

}  // namespace orbitlab
