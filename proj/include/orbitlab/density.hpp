#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orbitlab/core.hpp"
#include "orbitlab/matrix.hpp"
#include "orbitlab/real.hpp"

namespace orbitlab {

// ---------------------------------------------------------------------------
// Zariski density at bounded degree
// ---------------------------------------------------------------------------

/// Rank of the degree-D Veronese evaluation matrix of a point set together
/// with a basis of the degree-D forms vanishing on all of it.
struct DensityCertificate {
  unsigned D = 0;
  std::size_t n_points = 0;
  std::size_t n_monomials = 0;
  std::size_t rank = 0;
  std::vector<HomogPoly> kernel_basis;
  bool dense = false;
};

/// Degree-D monomials of the canonical lift, in descending lex order.
inline std::vector<BigInt> veronese_row(const ProjPoint& P, const std::vector<Exponents>& monos) {
  const std::size_t n = P.dimension() + 1;
  unsigned D = 0;
  for (auto e : monos.front()) D += e;
  std::vector<std::vector<BigInt>> pw(n);
  for (std::size_t i = 0; i < n; ++i) {
    pw[i].push_back(1);
    for (unsigned k = 1; k <= D; ++k) pw[i].push_back(pw[i].back() * P[i]);
  }
  std::vector<BigInt> row;
  row.reserve(monos.size());
  for (const auto& e : monos) {
    BigInt v = 1;
    for (std::size_t i = 0; i < n; ++i)
      if (e[i]) v *= pw[i][e[i]];
    row.push_back(std::move(v));
  }
  return row;
}

/// vanishing_forms: exact rank by fraction-free elimination; kernel forms
/// are primitive integer forms.
inline DensityCertificate vanishing_forms(const std::vector<ProjPoint>& points, unsigned D, std::size_t N) {
  if (D < 1) throw PreconditionViolated("D >= 1", "degree bound must be positive");
  for (const auto& P : points)
    if (P.dimension() != N) throw Error(ErrorKind::DimensionMismatch, "points must share one ambient P^N");
  const auto monos = monomials(N + 1, D);
  Matrix<BigInt> m(points.size(), monos.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    auto row = veronese_row(points[i], monos);
    for (std::size_t j = 0; j < monos.size(); ++j) m(i, j) = std::move(row[j]);
  }
  DensityCertificate cert;
  cert.D = D;
  cert.n_points = points.size();
  cert.n_monomials = monos.size();
  for (const auto& v : kernel_basis(m)) {
    std::vector<Term> terms;
    for (std::size_t j = 0; j < v.size(); ++j)
      if (v[j] != 0) terms.push_back({v[j], monos[j]});
    cert.kernel_basis.emplace_back(N, D, std::move(terms));
  }
  cert.rank = monos.size() - cert.kernel_basis.size();
  cert.dense = cert.kernel_basis.empty();
  return cert;
}

inline DensityCertificate vanishing_forms(const std::vector<ProjPoint>& points, unsigned D) {
  if (points.empty()) throw PreconditionViolated("non-empty point set", "ambient dimension unknown; pass N");
  return vanishing_forms(points, D, points.front().dimension());
}

// ---------------------------------------------------------------------------
// Interval gaps
// ---------------------------------------------------------------------------

struct RatInterval {
  Rat lo, hi;
  bool lo_closed = true, hi_closed = true;

  Rat length() const { return hi - lo; }
  bool contains(const Rat& x) const {
    return (lo_closed ? lo <= x : lo < x) && (hi_closed ? x <= hi : x < hi);
  }
  std::string str() const {
    return std::string(lo_closed ? "[" : "(") + lo.get_str() + ", " + hi.get_str() + (hi_closed ? "]" : ")");
  }
};

/// [0, T] minus the union of I_{i,n} = [alpha_i d^n - beta, alpha_i d^n + beta].
struct GapReport {
  std::vector<Rat> alphas;
  Rat beta, d, T;
  std::vector<RatInterval> covered;  // merged, clipped to [0, T]
  std::vector<RatInterval> gaps;     // complement of `covered` in [0, T]
  std::optional<RatInterval> largest_gap;
};

/// A multiplier known up to a rational range; the cover then uses
/// [lo d^n - beta, hi d^n + beta].
struct AlphaRange {
  Rat lo, hi;
};

namespace detail {
inline void check_gap_inputs(const Rat& beta, const Rat& d, const Rat& T) {
  if (T <= 0) throw PreconditionViolated("T > 0", "T = " + T.get_str());
  if (d <= 1) throw PreconditionViolated("d > 1", "d = " + d.get_str());
  if (beta < 0) throw PreconditionViolated("beta >= 0", "beta = " + beta.get_str());
}
}  // namespace detail

/// Gap computation for alpha ranges. All endpoint arithmetic is exact.
inline GapReport find_gaps_ranged(const std::vector<AlphaRange>& alphas, const Rat& beta, const Rat& d, const Rat& T) {
  detail::check_gap_inputs(beta, d, T);
  GapReport rep;
  rep.beta = beta;
  rep.d = d;
  rep.T = T;
  std::vector<RatInterval> raw;
  for (const auto& a : alphas) {
    if (a.lo <= 0 || a.hi < a.lo) throw PreconditionViolated("alpha > 0", "alpha range [" + a.lo.get_str() + ", " + a.hi.get_str() + "]");
    rep.alphas.push_back(a.lo == a.hi ? a.lo : (a.lo + a.hi) / 2);
    Rat dn = 1;
    while (a.lo * dn - beta <= T) {
      Rat lo = a.lo * dn - beta, hi = a.hi * dn + beta;
      if (hi >= 0) raw.push_back({std::max(lo, Rat(0)), std::min(hi, T)});
      dn *= d;
    }
  }
  std::sort(raw.begin(), raw.end(), [](const RatInterval& a, const RatInterval& b) { return a.lo < b.lo; });
  for (auto& iv : raw) {
    if (!rep.covered.empty() && iv.lo <= rep.covered.back().hi) {
      rep.covered.back().hi = std::max(rep.covered.back().hi, iv.hi);
    } else {
      rep.covered.push_back(iv);
    }
  }
  Rat cursor = 0;
  bool cursor_closed = true;  // whether `cursor` itself is uncovered
  for (const auto& c : rep.covered) {
    if (c.lo > cursor) rep.gaps.push_back({cursor, c.lo, cursor_closed, false});
    cursor = c.hi;
    cursor_closed = false;
  }
  if (cursor < T) rep.gaps.push_back({cursor, T, cursor_closed, true});
  for (const auto& g : rep.gaps)
    if (!rep.largest_gap || g.length() > rep.largest_gap->length()) rep.largest_gap = g;
  return rep;
}

/// find_gaps. Throws DegenerateCover when [0, T] is fully covered.
inline GapReport find_gaps(const std::vector<Rat>& alphas, const Rat& beta, const Rat& d, const Rat& T) {
  std::vector<AlphaRange> ranges;
  for (const auto& a : alphas) ranges.push_back({a, a});
  GapReport rep = find_gaps_ranged(ranges, beta, d, T);
  if (!rep.largest_gap) throw Error(ErrorKind::DegenerateCover, "[0, " + T.get_str() + "] is fully covered");
  return rep;
}

struct GapScanRow {
  Rat T;
  std::optional<Rat> largest_gap_length;  // empty: DegenerateCover
  std::optional<Interval> normalized;     // largest_gap_length * log T / T
};

/// gap_growth_scan over an increasing grid of T >= e.
inline std::vector<GapScanRow> gap_growth_scan(const std::vector<Rat>& alphas, const Rat& beta, const Rat& d,
                                               const std::vector<Rat>& grid) {
  const Interval e = Interval::e();
  std::vector<GapScanRow> rows;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i && grid[i] <= grid[i - 1]) throw PreconditionViolated("T grid increasing", "at index " + std::to_string(i));
    if (!(Real::from(grid[i], MPFR_RNDD) > e.hi()))
      throw PreconditionViolated("T >= e", "T = " + grid[i].get_str());
    GapScanRow row{grid[i], std::nullopt, std::nullopt};
    try {
      const GapReport rep = find_gaps(alphas, beta, d, grid[i]);
      row.largest_gap_length = rep.largest_gap->length();
      row.normalized = Interval::point(*row.largest_gap_length) * Interval::log_of(grid[i]) / Interval::point(grid[i]);
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::DegenerateCover) throw;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace orbitlab
