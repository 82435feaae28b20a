#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "orbitlab/arith.hpp"
#include "orbitlab/matrix.hpp"

namespace orbitlab {

// ---------------------------------------------------------------------------
// Projective points
// ---------------------------------------------------------------------------

/// A Q-rational point of P^N stored as its canonical integer lift:
/// primitive coordinates whose first nonzero entry is positive.
class ProjPoint {
 public:
  ProjPoint() = default;

  /// Canonical representative of the point with lift `raw`.
  static ProjPoint from_integers(std::vector<BigInt> raw) {
    if (raw.size() < 2) throw Error(ErrorKind::DimensionMismatch, "a point of P^N needs N+1 >= 2 coordinates");
    BigInt g = 0;
    for (const auto& c : raw) g = gcd(g, c);
    if (g == 0) throw Error(ErrorKind::AllZero, "every coordinate is zero");
    const auto first = std::find_if(raw.begin(), raw.end(), [](const BigInt& c) { return c != 0; });
    if (*first < 0) g = -g;
    if (g != 1)
      for (auto& c : raw) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    ProjPoint p;
    p.coords_ = std::move(raw);
    return p;
  }

  static ProjPoint from_integers(std::initializer_list<long> raw) {
    std::vector<BigInt> v;
    for (long c : raw) v.emplace_back(c);
    return from_integers(std::move(v));
  }

  std::size_t dimension() const { return coords_.size() - 1; }
  const std::vector<BigInt>& coords() const { return coords_; }
  const BigInt& operator[](std::size_t i) const { return coords_[i]; }

  /// Multiplicative height max |x_i| of the canonical lift.
  BigInt height() const {
    BigInt h = 0;
    for (const auto& c : coords_)
      if (mpz_cmpabs(c.get_mpz_t(), h.get_mpz_t()) > 0) h = abs(c);
    return h;
  }

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      if (i) s += ",";
      s += coords_[i].get_str();
    }
    return s + ")";
  }

  friend bool operator==(const ProjPoint& a, const ProjPoint& b) { return a.coords_ == b.coords_; }
  friend bool operator!=(const ProjPoint& a, const ProjPoint& b) { return !(a == b); }

 private:
  std::vector<BigInt> coords_;
};

/// normalize_point: canonical point for a nonzero rational lift.
inline ProjPoint normalize_point(std::span<const Rat> raw) {
  BigInt den = 1;
  for (const auto& x : raw) den = lcm(den, x.get_den());
  std::vector<BigInt> ints;
  ints.reserve(raw.size());
  for (const auto& x : raw) ints.push_back(x.get_num() * (den / x.get_den()));
  return ProjPoint::from_integers(std::move(ints));
}

/// Coordinate order used for every deterministic tie-break: coordinates are
/// compared by absolute value, and a positive entry precedes its negative,
/// so 0 < 1 < -1 < 2 < -2 < ...
inline int compare_coordinate(const BigInt& a, const BigInt& b) {
  const int c = mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t());
  if (c != 0) return c;
  return (a < 0) - (b < 0);
}

inline bool lex_less(const ProjPoint& a, const ProjPoint& b) {
  const auto n = std::min(a.coords().size(), b.coords().size());
  for (std::size_t i = 0; i < n; ++i) {
    const int c = compare_coordinate(a[i], b[i]);
    if (c != 0) return c < 0;
  }
  return a.coords().size() < b.coords().size();
}

/// (height, lex_less) order: the order in which points are enumerated.
inline bool enumeration_less(const ProjPoint& a, const ProjPoint& b) {
  const int c = cmp(a.height(), b.height());
  if (c != 0) return c < 0;
  return lex_less(a, b);
}

struct ProjPointHash {
  std::size_t operator()(const ProjPoint& p) const noexcept {
    std::size_t h = p.coords().size();
    for (const auto& c : p.coords()) {
      const std::size_t v = mpz_get_ui(c.get_mpz_t()) ^ (static_cast<std::size_t>(mpz_sgn(c.get_mpz_t()) + 1) << 61) ^
                            mpz_size(c.get_mpz_t());
      h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

class NotAMorphism : public Error {
 public:
  NotAMorphism(std::optional<ProjPoint> witness, const std::string& detail)
      : Error(ErrorKind::NotAMorphism,
              witness ? detail + "; common zero " + witness->str() : detail),
        witness_(std::move(witness)) {}
  const std::optional<ProjPoint>& witness() const noexcept { return witness_; }

 private:
  std::optional<ProjPoint> witness_;
};

// ---------------------------------------------------------------------------
// Homogeneous polynomials
// ---------------------------------------------------------------------------

using Exponents = std::vector<unsigned>;

struct Term {
  BigInt coeff;
  Exponents exps;
};

/// Descending lexicographic order on exponent vectors (x0^d first).
inline bool exponent_before(const Exponents& a, const Exponents& b) { return a > b; }

/// All exponent vectors of N+1 variables with total degree d, in
/// descending lexicographic order.
inline std::vector<Exponents> monomials(std::size_t n_vars, unsigned d) {
  std::vector<Exponents> out;
  Exponents cur(n_vars, 0);
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
    if (i + 1 == n_vars) {
      cur[i] = left;
      out.push_back(cur);
      return;
    }
    for (unsigned k = left + 1; k-- > 0;) {
      cur[i] = k;
      rec(i + 1, left - k);
    }
  };
  if (n_vars > 0) rec(0, d);
  return out;
}

/// Homogeneous form with integer coefficients in variables x_0..x_N.
/// Terms are kept sorted (descending lex), with distinct exponent vectors
/// and nonzero coefficients; an empty term list is the zero form.
class HomogPoly {
 public:
  HomogPoly() = default;
  HomogPoly(std::size_t N, unsigned degree, std::vector<Term> terms) : N_(N), degree_(degree) {
    std::map<Exponents, BigInt, std::greater<>> acc;
    for (auto& t : terms) {
      if (t.exps.size() != N + 1)
        throw Error(ErrorKind::DimensionMismatch, "exponent vector has wrong length");
      unsigned s = 0;
      for (auto e : t.exps) s += e;
      if (s != degree)
        throw Error(ErrorKind::DegreeMismatch,
                    "exponents sum to " + std::to_string(s) + ", expected " + std::to_string(degree));
      acc[t.exps] += t.coeff;
    }
    for (auto& [e, c] : acc)
      if (c != 0) terms_.push_back({c, e});
  }

  static HomogPoly zero(std::size_t N, unsigned degree) { return HomogPoly(N, degree, {}); }
  static HomogPoly monomial(std::size_t N, const Exponents& e, const BigInt& c = 1) {
    unsigned d = 0;
    for (auto x : e) d += x;
    return HomogPoly(N, d, {{c, e}});
  }

  std::size_t N() const { return N_; }
  unsigned degree() const { return degree_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  BigInt content() const {
    BigInt g = 0;
    for (const auto& t : terms_) g = gcd(g, t.coeff);
    return g;
  }
  BigInt max_abs_coeff() const {
    BigInt m = 0;
    for (const auto& t : terms_)
      if (mpz_cmpabs(t.coeff.get_mpz_t(), m.get_mpz_t()) > 0) m = abs(t.coeff);
    return m;
  }

  template <class Scalar>
  Scalar evaluate(std::span<const Scalar> x) const {
    if (x.size() != N_ + 1) throw Error(ErrorKind::DimensionMismatch, "evaluation point has wrong dimension");
    // powers[i][k] = x_i^k
    std::vector<std::vector<Scalar>> powers(N_ + 1);
    for (std::size_t i = 0; i <= N_; ++i) {
      powers[i].reserve(degree_ + 1);
      powers[i].push_back(Scalar(1));
      for (unsigned k = 1; k <= degree_; ++k) powers[i].push_back(powers[i].back() * x[i]);
    }
    Scalar acc(0);
    for (const auto& t : terms_) {
      Scalar m(t.coeff);
      for (std::size_t i = 0; i <= N_; ++i)
        if (t.exps[i]) m *= powers[i][t.exps[i]];
      acc += m;
    }
    return acc;
  }
  BigInt operator()(const std::vector<BigInt>& x) const { return evaluate<BigInt>(std::span<const BigInt>(x)); }

  friend HomogPoly operator*(const HomogPoly& a, const HomogPoly& b) {
    if (a.N_ != b.N_) throw Error(ErrorKind::DimensionMismatch, "product of forms in different variables");
    std::vector<Term> terms;
    for (const auto& s : a.terms_)
      for (const auto& t : b.terms_) {
        Exponents e(a.N_ + 1);
        for (std::size_t i = 0; i <= a.N_; ++i) e[i] = s.exps[i] + t.exps[i];
        terms.push_back({s.coeff * t.coeff, std::move(e)});
      }
    return HomogPoly(a.N_, a.degree_ + b.degree_, std::move(terms));
  }
  friend HomogPoly operator+(const HomogPoly& a, const HomogPoly& b) {
    if (a.N_ != b.N_) throw Error(ErrorKind::DimensionMismatch, "sum of forms in different variables");
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.degree_ != b.degree_) throw Error(ErrorKind::DegreeMismatch, "sum of forms of different degree");
    std::vector<Term> terms = a.terms_;
    terms.insert(terms.end(), b.terms_.begin(), b.terms_.end());
    return HomogPoly(a.N_, a.degree_, std::move(terms));
  }
  friend HomogPoly operator*(const BigInt& c, const HomogPoly& a) {
    std::vector<Term> terms = a.terms_;
    for (auto& t : terms) t.coeff *= c;
    return HomogPoly(a.N_, a.degree_, std::move(terms));
  }
  friend bool operator==(const HomogPoly& a, const HomogPoly& b) {
    if (a.N_ != b.N_ || a.terms_.size() != b.terms_.size()) return false;
    if (!a.terms_.empty() && a.degree_ != b.degree_) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (a.terms_[i].coeff != b.terms_[i].coeff || a.terms_[i].exps != b.terms_[i].exps) return false;
    return true;
  }

  /// Human-readable rendering in variables x0..xN.
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& t : terms_) {
      std::string mono;
      for (std::size_t i = 0; i <= N_; ++i) {
        if (!t.exps[i]) continue;
        if (!mono.empty()) mono += "*";
        mono += "x" + std::to_string(i);
        if (t.exps[i] > 1) mono += "^" + std::to_string(t.exps[i]);
      }
      BigInt c = t.coeff;
      if (!s.empty()) s += c < 0 ? " - " : " + ";
      else if (c < 0) s += "-";
      c = abs(c);
      if (mono.empty()) s += c.get_str();
      else if (c == 1) s += mono;
      else s += c.get_str() + "*" + mono;
    }
    return s;
  }

 private:
  std::size_t N_ = 1;
  unsigned degree_ = 1;
  std::vector<Term> terms_;
};

// ---------------------------------------------------------------------------
// Morphisms
// ---------------------------------------------------------------------------

enum class WdStatus { CertifiedWellDefined, HeuristicallyChecked, Unchecked };

inline const char* to_string(WdStatus s) {
  switch (s) {
    case WdStatus::CertifiedWellDefined: return "CertifiedWellDefined";
    case WdStatus::HeuristicallyChecked: return "HeuristicallyChecked";
    case WdStatus::Unchecked: return "Unchecked";
  }
  return "?";
}

/// Endomorphism of P^N given by N+1 integer forms of common degree d. The
/// coefficient content is divided out on construction (projectively the
/// same map).
class MorphismPN {
 public:
  MorphismPN() = default;
  explicit MorphismPN(std::vector<HomogPoly> polys, WdStatus status = WdStatus::Unchecked)
      : polys_(std::move(polys)), status_(status) {
    if (polys_.size() < 2) throw Error(ErrorKind::DimensionMismatch, "a morphism of P^N needs N+1 >= 2 forms");
    const std::size_t N = polys_.size() - 1;
    degree_ = polys_.front().degree();
    for (const auto& p : polys_) {
      if (p.N() != N)
        throw Error(ErrorKind::DimensionMismatch, "form in " + std::to_string(p.N() + 1) +
                                                      " variables, expected " + std::to_string(N + 1));
      if (p.degree() != degree_) throw Error(ErrorKind::DegreeMismatch, "component forms have different degrees");
    }
    if (degree_ < 1) throw Error(ErrorKind::DegreeMismatch, "degree must be at least 1");
    BigInt g = 0;
    for (const auto& p : polys_) g = gcd(g, p.content());
    if (g == 0) throw Error(ErrorKind::DegreeMismatch, "every component form is zero");
    if (g != 1) {
      for (auto& p : polys_) {
        std::vector<Term> terms = p.terms();
        for (auto& t : terms) mpz_divexact(t.coeff.get_mpz_t(), t.coeff.get_mpz_t(), g.get_mpz_t());
        p = HomogPoly(p.N(), p.degree(), std::move(terms));
      }
    }
  }

  /// The power map [x0^d : ... : xN^d].
  static MorphismPN power_map(std::size_t N, unsigned d) {
    std::vector<HomogPoly> polys;
    for (std::size_t i = 0; i <= N; ++i) {
      Exponents e(N + 1, 0);
      e[i] = d;
      polys.push_back(HomogPoly::monomial(N, e));
    }
    return MorphismPN(std::move(polys), WdStatus::CertifiedWellDefined);
  }

  std::size_t N() const { return polys_.size() - 1; }
  unsigned degree() const { return degree_; }
  const std::vector<HomogPoly>& polys() const { return polys_; }
  WdStatus status() const { return status_; }
  MorphismPN with_status(WdStatus s) const {
    MorphismPN m = *this;
    m.status_ = s;
    return m;
  }

  /// Each component is a single monomial x_{sigma(i)}^d with one common
  /// coefficient, sigma a permutation. With `allow_permutation` false,
  /// sigma must be the identity.
  bool is_pure_power(bool allow_permutation = true) const {
    std::vector<bool> used(N() + 1, false);
    const BigInt* coeff = nullptr;
    for (std::size_t i = 0; i <= N(); ++i) {
      const auto& terms = polys_[i].terms();
      if (terms.size() != 1) return false;
      const auto& t = terms.front();
      if (coeff && t.coeff != *coeff) return false;
      coeff = &t.coeff;
      std::size_t hot = N() + 1;
      for (std::size_t j = 0; j <= N(); ++j) {
        if (t.exps[j] == degree_) hot = j;
        else if (t.exps[j] != 0) return false;
      }
      if (hot > N() || used[hot]) return false;
      if (!allow_permutation && hot != i) return false;
      used[hot] = true;
    }
    return true;
  }

  friend bool operator==(const MorphismPN& a, const MorphismPN& b) { return a.polys_ == b.polys_; }

  std::string str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < polys_.size(); ++i) {
      if (i) s += " : ";
      s += polys_[i].str();
    }
    return s + "]";
  }

 private:
  std::vector<HomogPoly> polys_;
  unsigned degree_ = 1;
  WdStatus status_ = WdStatus::Unchecked;
};

/// Exact image f(P). Throws BaseLocusHit if every form vanishes at P.
inline ProjPoint evaluate(const MorphismPN& f, const ProjPoint& P) {
  if (P.dimension() != f.N())
    throw Error(ErrorKind::DimensionMismatch, "point in P^" + std::to_string(P.dimension()) + ", map on P^" +
                                                  std::to_string(f.N()));
  std::vector<BigInt> image;
  image.reserve(f.N() + 1);
  bool any = false;
  for (const auto& poly : f.polys()) {
    image.push_back(poly(P.coords()));
    any = any || image.back() != 0;
  }
  if (!any) throw BaseLocusHit(0, P.str());
  return ProjPoint::from_integers(std::move(image));
}

/// f^n(P), normalizing after every step. A base-locus failure reports the
/// index k of the orbit point f^k(P) at which f is undefined.
inline ProjPoint iterate(const MorphismPN& f, ProjPoint P, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    try {
      P = evaluate(f, P);
    } catch (const BaseLocusHit&) {
      throw BaseLocusHit(k, P.str());
    }
  }
  return P;
}

// ---------------------------------------------------------------------------
// Well-definedness
// ---------------------------------------------------------------------------

namespace detail {

/// Coefficients of a binary form of degree d: c[k] is the coefficient of
/// x^(d-k) y^k.
inline std::vector<BigInt> binary_coefficients(const HomogPoly& p) {
  std::vector<BigInt> c(p.degree() + 1, BigInt(0));
  for (const auto& t : p.terms()) c[t.exps[1]] = t.coeff;
  return c;
}

/// Sylvester resultant of two binary forms of degrees m and n.
inline BigInt binary_resultant(const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
  const std::size_t m = a.size() - 1, n = b.size() - 1, size = m + n;
  if (size == 0) return 1;
  Matrix<BigInt> s(size, size);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k <= m; ++k) s(i, i + k) = a[k];
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k <= n; ++k) s(n + i, i + k) = b[k];
  return determinant(s);
}

/// Univariate polynomials over Q, coefficient of t^i at index i.
using UPoly = std::vector<Rat>;

inline void trim(UPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline UPoly upoly_mod(UPoly a, const UPoly& b) {
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    const Rat q = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= q * b[i];
    trim(a);
  }
  return a;
}

inline UPoly upoly_gcd(UPoly a, UPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UPoly r = upoly_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

inline std::vector<BigInt> positive_divisors(const BigInt& n) {
  std::vector<BigInt> divs{1};
  for (const auto& [p, e] : factor(n)) {
    const std::size_t base = divs.size();
    BigInt pk = 1;
    for (unsigned long k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  return divs;
}

/// Rational roots of a nonzero polynomial (rational root theorem).
inline std::vector<Rat> rational_roots(const UPoly& p_in) {
  UPoly p = p_in;
  trim(p);
  std::vector<Rat> roots;
  if (p.size() <= 1) return roots;
  std::size_t low = 0;
  while (p[low] == 0) ++low;
  if (low > 0) roots.push_back(0);
  std::vector<BigInt> ints = primitive_integer_vector(UPoly(p.begin() + static_cast<long>(low), p.end()));
  if (ints.size() <= 1) return roots;
  for (const auto& num : positive_divisors(ints.front()))
    for (const auto& den : positive_divisors(ints.back()))
      for (int sign : {1, -1}) {
        Rat r = make_rat(sign * num, den);
        Rat acc = 0;
        for (std::size_t i = ints.size(); i-- > 0;) acc = acc * r + ints[i];
        if (acc == 0 && std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
      }
  return roots;
}

inline std::vector<long> primes_from(long start, std::size_t count) {
  std::vector<long> out;
  BigInt p = start - 1;
  while (out.size() < count) {
    p = next_prime(p);
    out.push_back(p.get_si());
  }
  return out;
}

}  // namespace detail

struct WdExactN1 {};

/// Finite-field and random-point screening. Primes are taken from 5 upward
/// (`prime_count` of them); `samples` random points are tried per prime
/// when P^N(F_p) is too large to enumerate, and as random rational points.
struct WdHeuristic {
  std::size_t samples = 100;
  std::size_t prime_count = 3;
  std::uint64_t seed = 1;
};

/// Resultant certificate for N = 1. Returns CertifiedWellDefined or throws
/// NotAMorphism (with a rational common zero when one exists).
inline WdStatus check_well_defined(const MorphismPN& f, WdExactN1) {
  if (f.N() != 1) throw PreconditionViolated("exact_n1 requires N = 1", "map is on P^" + std::to_string(f.N()));
  const auto a = detail::binary_coefficients(f.polys()[0]);
  const auto b = detail::binary_coefficients(f.polys()[1]);
  if (detail::binary_resultant(a, b) != 0) return WdStatus::CertifiedWellDefined;
  if (a.front() == 0 && b.front() == 0) throw NotAMorphism(ProjPoint::from_integers({1, 0}), "resultant is 0");
  // common root with y != 0: roots of gcd(F(t,1), G(t,1)), t = x/y
  detail::UPoly fa(a.size()), gb(b.size());
  const std::size_t d = a.size() - 1;
  for (std::size_t k = 0; k <= d; ++k) {
    fa[d - k] = a[k];
    gb[d - k] = b[k];
  }
  const auto g = detail::upoly_gcd(fa, gb);
  for (const auto& r : detail::rational_roots(g))
    throw NotAMorphism(normalize_point(std::vector<Rat>{r, Rat(1)}), "resultant is 0");
  throw NotAMorphism(std::nullopt, "resultant is 0; the common zero is not Q-rational");
}

inline WdStatus check_well_defined(const MorphismPN& f, const WdHeuristic& opts) {
  const std::size_t n_vars = f.N() + 1;
  std::mt19937_64 rng(opts.seed);
  auto vanishes_over_z = [&](const std::vector<BigInt>& x) {
    return std::all_of(f.polys().begin(), f.polys().end(), [&](const HomogPoly& p) { return p(x) == 0; });
  };
  // random rational points
  std::uniform_int_distribution<long> coord(-50, 50);
  for (std::size_t s = 0; s < opts.samples; ++s) {
    std::vector<BigInt> x(n_vars);
    bool nonzero = false;
    for (auto& c : x) {
      c = coord(rng);
      nonzero = nonzero || c != 0;
    }
    if (nonzero && vanishes_over_z(x)) throw NotAMorphism(ProjPoint::from_integers(x), "common zero at a sampled point");
  }
  std::size_t bad_primes = 0;
  const auto primes = detail::primes_from(5, opts.prime_count);
  for (long p : primes) {
    const BigInt P(p);
    auto vanishes_mod_p = [&](const std::vector<BigInt>& x) {
      for (const auto& poly : f.polys()) {
        BigInt v = poly(x);
        if (mpz_divisible_p(v.get_mpz_t(), P.get_mpz_t()) == 0) return false;
      }
      return true;
    };
    bool found = false;
    auto consider = [&](const std::vector<BigInt>& x) {
      if (!vanishes_mod_p(x)) return;
      found = true;
      std::vector<BigInt> centered = x;
      for (auto& c : centered)
        if (c > p / 2) c -= p;
      if (vanishes_over_z(centered))
        throw NotAMorphism(ProjPoint::from_integers(centered), "common zero lifted from F_" + std::to_string(p));
    };
    double affine = 1;
    for (std::size_t i = 0; i < n_vars; ++i) affine *= static_cast<double>(p);
    if (affine <= 2e6) {
      // points of P^N(F_p): first nonzero coordinate equal to 1
      for (std::size_t lead = 0; lead < n_vars && !found; ++lead) {
        std::vector<BigInt> x(n_vars, BigInt(0));
        x[lead] = 1;
        const std::size_t free = n_vars - lead - 1;
        std::vector<long> digits(free, 0);
        while (true) {
          for (std::size_t i = 0; i < free; ++i) x[lead + 1 + i] = digits[i];
          consider(x);
          if (found) break;
          std::size_t i = 0;
          while (i < free && ++digits[i] == p) digits[i++] = 0;
          if (i == free) break;
        }
      }
    } else {
      std::uniform_int_distribution<long> residue(0, p - 1);
      for (std::size_t s = 0; s < opts.samples && !found; ++s) {
        std::vector<BigInt> x(n_vars);
        bool nonzero = false;
        for (auto& c : x) {
          c = residue(rng);
          nonzero = nonzero || c != 0;
        }
        if (nonzero) consider(x);
      }
    }
    if (found) ++bad_primes;
  }
  if (!primes.empty() && bad_primes == primes.size())
    throw NotAMorphism(std::nullopt, "common zeros modulo every screened prime");
  return WdStatus::HeuristicallyChecked;
}

}  // namespace orbitlab
