#pragma once

#include <optional>
#include <random>
#include <string>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

#include "orbitlab/core.hpp"
#include "orbitlab/real.hpp"

namespace orbitlab {

/// h(P) = log H(P) for the canonical lift of P, as an exact integer H plus
/// an outward-rounded enclosure of its logarithm.
struct LogHeight {
  BigInt H;
  Interval log;

  Real approx() const { return log.midpoint(); }
  Real radius() const {
    Real w = log.width();
    mpfr_div_2ui(w.get(), w.get(), 1, MPFR_RNDU);
    return w;
  }
};

inline LogHeight weil_height(const ProjPoint& P) {
  BigInt H = P.height();
  Interval l = Interval::log_of(H);
  return {std::move(H), std::move(l)};
}

/// The real number coef * log(base), kept symbolically. `base` is never a
/// perfect power, so two values are equal iff both fields are equal.
class ExactLog {
 public:
  ExactLog() = default;
  ExactLog(const BigInt& value, const Rat& coef) {
    if (value < 1) throw Error(ErrorKind::PreconditionViolated, "log of non-positive integer");
    auto [root, e] = perfect_power_root(value);
    base_ = root;
    coef_ = coef * Rat(BigInt(e));
    if (base_ == 1 || coef_ == 0) {
      base_ = 1;
      coef_ = 0;
    }
  }

  const BigInt& base() const { return base_; }
  const Rat& coef() const { return coef_; }
  bool is_zero() const { return base_ == 1; }

  Interval enclose() const { return coef_ * Interval::log_of(base_); }
  ExactLog scaled(const Rat& s) const { return ExactLog(base_, coef_ * s); }

  friend bool operator==(const ExactLog& a, const ExactLog& b) { return a.base_ == b.base_ && a.coef_ == b.coef_; }

  std::string str() const {
    if (is_zero()) return "0";
    return (coef_ == 1 ? std::string() : coef_.get_str() + "*") + "log(" + base_.get_str() + ")";
  }

 private:
  BigInt base_ = 1;
  Rat coef_ = 0;
};

enum class ConstantsMode { Certified, UpperOnly, Heuristic };

inline const char* to_string(ConstantsMode m) {
  switch (m) {
    case ConstantsMode::Certified: return "Certified";
    case ConstantsMode::UpperOnly: return "UpperOnly";
    case ConstantsMode::Heuristic: return "Heuristic";
  }
  return "?";
}

/// Two-sided height comparison for one map:
///   h(f(P)) <= d h(P) + C_up,   and (when present)   h(f(P)) >= d h(P) - C_low.
/// `up_factor` = exp(C_up) exactly; `low_factor` = exp(C_low) exactly when
/// C_low comes from a proof (pure power map or verified certificate).
struct ComparisonConstants {
  Interval c_up;
  BigInt up_factor = 1;
  std::optional<Interval> c_low;
  std::optional<Rat> low_factor;
  ConstantsMode mode = ConstantsMode::UpperOnly;
  Rat heuristic_margin = 0;

  bool certified() const { return mode == ConstantsMode::Certified; }
  /// Both constants are provably zero.
  bool exact_zero() const { return certified() && up_factor == 1 && low_factor && *low_factor == 1; }
  /// Enclosure of max(C_up, C_low); C_up stands in when C_low is absent.
  Interval c_max() const {
    const Interval& low = c_low ? *c_low : c_up;
    return {c_up.lo() < low.lo() ? low.lo() : c_up.lo(), c_up.hi() < low.hi() ? low.hi() : c_up.hi()};
  }
};

/// Nullstellensatz identities  R_i * x_i^M = sum_j G_ij * f_j  with integer
/// forms G_ij of degree M - d (or zero) and positive integers R_i.
struct NullstellensatzCertificate {
  unsigned M = 0;
  std::vector<std::vector<HomogPoly>> G;
  std::vector<BigInt> row_scale;
};

struct ConstantsAuto {};
struct ConstantsHeuristic {
  std::size_t samples = 10000;
  std::uint64_t seed = 1;
  Rat margin_factor = 2;
  long coord_bound = 1000;
};
using ConstantsRequest = std::variant<ConstantsAuto, ConstantsHeuristic, NullstellensatzCertificate>;

namespace detail {

inline BigInt l1_norm(const HomogPoly& p) {
  BigInt s = 0;
  for (const auto& t : p.terms()) s += abs(t.coeff);
  return s;
}

/// Verifies the identities exactly and returns exp(C_low) (at least 1).
inline Rat verify_certificate(const MorphismPN& f, const NullstellensatzCertificate& cert) {
  const std::size_t n = f.N() + 1;
  const unsigned d = f.degree();
  if (cert.M < d) throw Error(ErrorKind::CertificateInvalid, "M must be at least deg f");
  if (cert.G.size() != n || cert.row_scale.size() != n)
    throw Error(ErrorKind::CertificateInvalid, "expected " + std::to_string(n) + " rows");
  Rat worst = 0;
  BigInt L = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (cert.G[i].size() != n) throw Error(ErrorKind::CertificateInvalid, "row " + std::to_string(i) + " has wrong length");
    if (cert.row_scale[i] <= 0) throw Error(ErrorKind::CertificateInvalid, "row scale must be positive");
    HomogPoly sum = HomogPoly::zero(f.N(), cert.M);
    BigInt norm = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const HomogPoly& g = cert.G[i][j];
      if (g.N() != f.N()) throw Error(ErrorKind::CertificateInvalid, "form in wrong number of variables");
      if (g.is_zero()) continue;
      if (g.degree() != cert.M - d)
        throw Error(ErrorKind::CertificateInvalid, "G[" + std::to_string(i) + "][" + std::to_string(j) +
                                                       "] must have degree M - d");
      sum = sum + g * f.polys()[j];
      norm += l1_norm(g);
    }
    Exponents e(n, 0);
    e[i] = cert.M;
    if (!(sum == HomogPoly::monomial(f.N(), e, cert.row_scale[i])))
      throw Error(ErrorKind::CertificateInvalid, "identity for x" + std::to_string(i) + "^M fails");
    worst = std::max(worst, Rat(norm, cert.row_scale[i]));
    L = lcm(L, cert.row_scale[i]);
  }
  worst.canonicalize();
  Rat factor = worst * Rat(L);
  return factor < 1 ? Rat(1) : factor;
}

}  // namespace detail

/// comparison_constants. C_up = log(T_max * A_max) always; C_low is 0 for
/// pure power maps, derived from a verified certificate, or estimated from
/// samples (Heuristic). Without any of these the result is UpperOnly.
inline ComparisonConstants comparison_constants(const MorphismPN& f, const ConstantsRequest& request = ConstantsAuto{}) {
  ComparisonConstants c;
  std::size_t t_max = 0;
  BigInt a_max = 0;
  for (const auto& p : f.polys()) {
    t_max = std::max(t_max, p.terms().size());
    a_max = std::max(a_max, p.max_abs_coeff());
  }
  c.up_factor = BigInt(static_cast<unsigned long>(t_max)) * a_max;
  c.c_up = Interval::log_of(c.up_factor);

  if (const auto* cert = std::get_if<NullstellensatzCertificate>(&request)) {
    c.low_factor = detail::verify_certificate(f, *cert);
    c.c_low = Interval::log_of(*c.low_factor);
    c.mode = ConstantsMode::Certified;
    return c;
  }
  if (f.is_pure_power(true)) {
    c.low_factor = Rat(1);
    c.c_low = Interval::log_of(BigInt(1));
    c.mode = ConstantsMode::Certified;
    return c;
  }
  if (const auto* h = std::get_if<ConstantsHeuristic>(&request)) {
    std::mt19937_64 rng(h->seed);
    std::uniform_int_distribution<long> coord(-h->coord_bound, h->coord_bound);
    Real worst = Real::from(BigInt(0), MPFR_RNDN);
    const Rat d(f.degree());
    for (std::size_t s = 0; s < h->samples; ++s) {
      std::vector<BigInt> x(f.N() + 1);
      bool nonzero = false;
      for (auto& v : x) {
        v = coord(rng);
        nonzero = nonzero || v != 0;
      }
      if (!nonzero) continue;
      const ProjPoint P = ProjPoint::from_integers(x);
      ProjPoint Q;
      try {
        Q = evaluate(f, P);
      } catch (const BaseLocusHit&) {
        throw NotAMorphism(P, "sampled point lies in the base locus");
      }
      const Interval defect = d * weil_height(P).log - weil_height(Q).log;
      if (defect.hi() > worst) worst = defect.hi();
    }
    const Rat margin = Rat(worst.to_rational()) * h->margin_factor;
    c.heuristic_margin = h->margin_factor;
    c.c_low = Interval::point(margin);
    c.mode = ConstantsMode::Heuristic;
    return c;
  }
  c.mode = ConstantsMode::UpperOnly;
  return c;
}

enum class HeightMode { Certified, Heuristic };

inline const char* to_string(HeightMode m) { return m == HeightMode::Certified ? "Certified" : "Heuristic"; }

/// Enclosure of a canonical height. In Certified mode the true value lies
/// in [lo, hi]; `exact`, when present, is the value itself.
struct HeightInterval {
  Interval value;
  HeightMode mode = HeightMode::Heuristic;
  std::size_t iterations_used = 0;
  std::optional<ExactLog> exact;

  const Real& lo() const { return value.lo(); }
  const Real& hi() const { return value.hi(); }
  Real width() const { return value.width(); }
  Real midpoint() const { return value.midpoint(); }
  bool certified() const { return mode == HeightMode::Certified; }

  /// Provably zero (exact and zero).
  bool is_exact_zero() const { return exact && exact->is_zero(); }
  /// Provably positive.
  bool is_certainly_positive() const { return certified() && value.certainly_positive(); }

  std::string str() const {
    std::string s = value.str(12);
    if (exact) s += " = " + exact->str();
    return s + " (" + to_string(mode) + ", n=" + std::to_string(iterations_used) + ")";
  }
};

/// 2^bits; orbit exploration stops once a height exceeds it.
inline BigInt height_cap_from_bits(unsigned long bits) {
  BigInt c;
  mpz_ui_pow_ui(c.get_mpz_t(), 2, bits);
  return c;
}

struct HeightBudget {
  Rat tol = Rat(1, 1000000000);
  unsigned long cap_bits = 256;
  /// If false, a capped run returns the last interval instead of throwing
  /// HeightOverflow.
  bool strict = true;
};

/// canonical_height via h(f^n P)/d^n with the telescoping error bounds
///   -C_low/(d^n (d-1)) <= hhat(P) - h(f^n P)/d^n <= C_up/(d^n (d-1)),
/// intersected over n, until the enclosure is at most `tol` wide.
/// A revisited orbit point proves hhat(P) = 0 exactly.
inline HeightInterval canonical_height(const MorphismPN& f, const ProjPoint& P, const ComparisonConstants& constants,
                                       const HeightBudget& budget = {}) {
  const unsigned d = f.degree();
  if (d < 2) throw PreconditionViolated("deg f >= 2", "canonical height needs degree at least 2");
  const BigInt cap = height_cap_from_bits(budget.cap_bits);
  const Interval c_up = constants.c_up;
  const Interval c_low = constants.c_low ? *constants.c_low : constants.c_up;
  const Real tol = Real::from(budget.tol, MPFR_RNDD);
  const HeightMode mode = constants.certified() ? HeightMode::Certified : HeightMode::Heuristic;
  const Real zero = Real::from(BigInt(0), MPFR_RNDN);

  std::unordered_set<ProjPoint, ProjPointHash> seen;
  ProjPoint Q = P;
  BigInt dn = 1;  // d^n
  std::optional<HeightInterval> last;
  for (std::size_t n = 0;; ++n) {
    if (!seen.insert(Q).second) {
      HeightInterval z{Interval::point(BigInt(0)), HeightMode::Certified, n, ExactLog()};
      return z;
    }
    const BigInt H = Q.height();
    if (H > cap) {
      if (budget.strict || !last)
        throw Error(ErrorKind::HeightOverflow, "height of f^" + std::to_string(n) + "(P) exceeds 2^" +
                                                   std::to_string(budget.cap_bits) + " before tolerance was met");
      return *last;
    }
    const Interval scale = Interval::point(BigInt(dn * (d - 1)));
    const Interval est = Interval::log_of(H) / Interval::point(dn);
    const Interval lower = est - c_low / scale;
    const Interval upper = est + c_up / scale;
    // every step gives a valid enclosure, so keep the running intersection
    Real lo = lower.lo().sign() < 0 ? zero : lower.lo();
    Real up = upper.hi();
    if (last && last->lo() <= up && lo <= last->hi()) {
      if (last->lo() > lo) lo = last->lo();
      if (last->hi() < up) up = last->hi();
    }
    HeightInterval hi{Interval(lo, up), mode, n, std::nullopt};
    if (constants.exact_zero()) hi.exact = ExactLog(H, Rat(BigInt(1), dn));
    if (hi.width() <= tol) return hi;
    last = std::move(hi);
    Q = iterate(f, Q, 1);
    dn *= d;
  }
}

}  // namespace orbitlab
