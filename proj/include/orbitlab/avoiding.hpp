#pragma once

#include <string>
#include <vector>

#include "orbitlab/density.hpp"
#include "orbitlab/enumerate.hpp"
#include "orbitlab/heights.hpp"

namespace orbitlab {

/// Minimal canonical height of one grand orbit (over Q), with a label.
struct OrbitMinimum {
  HeightInterval hhat_min;
  std::string label;
};

/// Per-orbit evidence: for each chosen a, the gap of that orbit's own
/// height cover that strictly contains log(a).
struct DisjointnessCertificate {
  std::string label;
  std::vector<std::pair<BigInt, RatInterval>> gaps;
};

struct AvoidingSet {
  std::vector<BigInt> a_values;
  std::vector<ProjPoint> points;
  std::vector<DisjointnessCertificate> disjointness;
  DensityCertificate density;
  GapReport gaps;
  Rat beta;
};

struct AvoidingOptions {
  /// Only gaps at least this long (in log-height units) may host log(a).
  Rat min_gap_width = 0;
};

namespace detail {

/// Height cover of one orbit as a list of alpha ranges (empty for an
/// exactly-zero minimum, handled by the caller).
inline AlphaRange alpha_range(const HeightInterval& h) {
  return {h.lo().to_rational(), h.hi().to_rational()};
}

inline std::optional<RatInterval> gap_containing(const GapReport& rep, const Interval& x, const Rat& min_width) {
  for (const auto& g : rep.gaps) {
    if (g.length() < min_width) continue;
    if (Real::from(g.lo, MPFR_RNDU) < x.lo() && x.hi() < Real::from(g.hi, MPFR_RNDD)) return g;
  }
  return std::nullopt;
}

inline GapReport orbit_cover(const std::vector<OrbitMinimum>& minima, const Rat& beta, const Rat& d, const Rat& T) {
  std::vector<AlphaRange> ranges;
  Rat zero_cover = -1;
  for (const auto& m : minima) {
    if (m.hhat_min.is_exact_zero()) {
      zero_cover = beta;
      continue;
    }
    if (!m.hhat_min.is_certainly_positive())
      throw PreconditionViolated("orbit minimum certified positive or exactly zero", m.label + ": " + m.hhat_min.str());
    ranges.push_back(alpha_range(m.hhat_min));
  }
  GapReport rep = find_gaps_ranged(ranges, beta, d, T);
  if (zero_cover >= 0) {
    // a preperiodic grand orbit has all heights in [0, beta]
    std::vector<RatInterval> gaps;
    for (auto g : rep.gaps) {
      if (g.hi <= zero_cover) continue;
      if (g.lo <= zero_cover) {
        g.lo = zero_cover;
        g.lo_closed = false;
      }
      gaps.push_back(g);
    }
    rep.gaps = std::move(gaps);
    rep.covered.insert(rep.covered.begin(), RatInterval{0, std::min(zero_cover, T)});
    rep.largest_gap.reset();
    for (const auto& g : rep.gaps)
      if (!rep.largest_gap || g.length() > rep.largest_gap->length()) rep.largest_gap = g;
  }
  return rep;
}

}  // namespace detail

/// build_avoiding_set. Heights of points in the grand orbits lie in
/// U_n [d^n hmin - beta, d^n hmin + beta] with beta = max(C_up, C_low); the
/// `count` smallest integers a >= 2 with log(a) <= T strictly inside a gap
/// of that cover are chosen, and every [a : b_1 : ... : b_N] with
/// |b_i| <= a and gcd(a, b) = 1 (so that H = a exactly) is emitted.
inline AvoidingSet build_avoiding_set(const MorphismPN& f, const std::vector<OrbitMinimum>& minima, std::size_t count,
                                      const Rat& T, unsigned D, const ComparisonConstants& constants,
                                      const AvoidingOptions& opts = {}) {
  if (f.degree() < 2) throw PreconditionViolated("deg f >= 2", "avoiding-set construction needs degree at least 2");
  if (!constants.certified())
    throw PreconditionViolated("certified comparison constants", std::string("mode is ") + to_string(constants.mode));
  AvoidingSet out;
  out.beta = constants.c_max().hi().to_rational();
  const Rat d(f.degree());
  out.gaps = detail::orbit_cover(minima, out.beta, d, T);
  std::vector<GapReport> per_orbit;
  for (const auto& m : minima) {
    per_orbit.push_back(detail::orbit_cover({m}, out.beta, d, T));
    out.disjointness.push_back({m.label, {}});
  }

  const Real t_hi = Real::from(T, MPFR_RNDD);
  for (BigInt a = 2; out.a_values.size() < count; ++a) {
    const Interval la = Interval::log_of(a);
    if (la.hi() > t_hi) break;
    if (!detail::gap_containing(out.gaps, la, opts.min_gap_width)) continue;
    out.a_values.push_back(a);
    for (std::size_t k = 0; k < minima.size(); ++k) {
      auto g = detail::gap_containing(per_orbit[k], la, 0);
      if (!g) throw Error(ErrorKind::InsufficientGaps, "inconsistent per-orbit cover");
      out.disjointness[k].gaps.emplace_back(a, *g);
    }
  }
  if (out.a_values.size() < count)
    throw Error(ErrorKind::InsufficientGaps, "only " + std::to_string(out.a_values.size()) + " of " +
                                                 std::to_string(count) + " integers found with log(a) <= " + T.get_str());

  const std::size_t N = f.N();
  for (const auto& a : out.a_values) {
    const long A = a.get_si();
    std::vector<long> idx(N, 0);
    const long span = 2 * A + 1;
    while (true) {
      std::vector<BigInt> coords{a};
      BigInt g = a;
      for (std::size_t i = 0; i < N; ++i) {
        coords.emplace_back(detail::coordinate_at(idx[i]));
        g = gcd(g, coords.back());
      }
      if (g == 1) out.points.push_back(ProjPoint::from_integers(std::move(coords)));
      std::size_t i = N;
      bool done = true;
      while (i-- > 0) {
        if (++idx[i] < span) {
          done = false;
          break;
        }
        idx[i] = 0;
      }
      if (done) break;
    }
  }
  out.density = vanishing_forms(out.points, D, N);
  return out;
}

}  // namespace orbitlab
