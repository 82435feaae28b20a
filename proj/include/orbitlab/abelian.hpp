#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orbitlab/matrix.hpp"

namespace orbitlab {

/// Element of Z^r x Z/t. t == 1 means no torsion.
struct GroupPoint {
  std::vector<BigInt> free;
  BigInt torsion = 0;
  BigInt t = 1;

  GroupPoint() = default;
  GroupPoint(std::vector<BigInt> f, BigInt tors = 0, BigInt modulus = 1)
      : free(std::move(f)), torsion(std::move(tors)), t(std::move(modulus)) {
    if (t < 1) throw PreconditionViolated("t >= 1", t.get_str());
    reduce();
  }
  static GroupPoint of(std::initializer_list<long> f, long tors = 0, long modulus = 1) {
    return GroupPoint(std::vector<BigInt>(f.begin(), f.end()), tors, modulus);
  }

  std::size_t rank() const { return free.size(); }
  bool is_zero() const {
    for (const auto& x : free)
      if (x != 0) return false;
    return torsion == 0;
  }

  friend GroupPoint operator+(const GroupPoint& a, const GroupPoint& b) {
    check_compatible(a, b);
    GroupPoint r = a;
    for (std::size_t i = 0; i < r.free.size(); ++i) r.free[i] += b.free[i];
    r.torsion += b.torsion;
    r.reduce();
    return r;
  }
  friend GroupPoint operator-(const GroupPoint& a, const GroupPoint& b) { return a + BigInt(-1) * b; }
  friend GroupPoint operator*(const BigInt& k, const GroupPoint& a) {
    GroupPoint r = a;
    for (auto& x : r.free) x *= k;
    r.torsion *= k;
    r.reduce();
    return r;
  }
  friend bool operator==(const GroupPoint& a, const GroupPoint& b) {
    return a.free == b.free && a.torsion == b.torsion && a.t == b.t;
  }
  friend bool operator!=(const GroupPoint& a, const GroupPoint& b) { return !(a == b); }

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < free.size(); ++i) s += (i ? "," : "") + free[i].get_str();
    s += ")";
    if (t > 1) s += "+" + torsion.get_str() + " mod " + t.get_str();
    return s;
  }

  static void check_compatible(const GroupPoint& a, const GroupPoint& b) {
    if (a.free.size() != b.free.size() || a.t != b.t)
      throw Error(ErrorKind::DimensionMismatch, "group points " + a.str() + " and " + b.str() + " live in different groups");
  }

 private:
  void reduce() {
    mpz_fdiv_r(torsion.get_mpz_t(), torsion.get_mpz_t(), t.get_mpz_t());
  }
};

/// x -> multiplier * x + translation on the free part; torsion is translated.
struct AffineGroupMap {
  Matrix<BigInt> multiplier;
  GroupPoint translation;

  static AffineGroupMap translation_by(const GroupPoint& Q0) {
    return {Matrix<BigInt>::identity(Q0.rank()), Q0};
  }
  bool is_translation() const { return multiplier == Matrix<BigInt>::identity(translation.rank()); }

  GroupPoint operator()(const GroupPoint& x) const {
    GroupPoint::check_compatible(x, translation);
    GroupPoint r = x;
    r.free = multiplier.apply(x.free);
    return r + translation;
  }
};

// ---------------------------------------------------------------------------
// Multiples with coprime multipliers
// ---------------------------------------------------------------------------

struct GcdPairVerdict {
  BigInt m1, m2;
  bool distinct = true;
  /// deg^n1 m1^(2g) == deg^n2 m2^(2g) when not distinct.
  std::optional<std::pair<BigInt, BigInt>> witness;
};

/// Decides, for each pair in M, whether deg^n1 m1^(2g) = deg^n2 m2^(2g) has
/// a solution n1, n2 >= 0, by comparing prime exponents.
inline std::vector<GcdPairVerdict> gcd_distinctness(const BigInt& deg_f, unsigned long g, const std::vector<BigInt>& M) {
  if (deg_f < 2) throw PreconditionViolated("deg_f >= 2", deg_f.get_str());
  if (g < 1) throw PreconditionViolated("g >= 1", std::to_string(g));
  for (const auto& m : M) {
    if (m < 1) throw PreconditionViolated("m positive", m.get_str());
    if (gcd(deg_f, m) != 1)
      throw PreconditionViolated("gcd(deg_f, m) = 1", "gcd(" + deg_f.get_str() + "," + m.get_str() + ") = " + gcd(deg_f, m).get_str());
  }
  for (std::size_t i = 0; i < M.size(); ++i)
    for (std::size_t j = i + 1; j < M.size(); ++j)
      if (M[i] != M[j] && gcd(M[i], M[j]) != 1)
        throw PreconditionViolated("gcd(m1, m2) = 1", "gcd(" + M[i].get_str() + "," + M[j].get_str() + ") = " + gcd(M[i], M[j]).get_str());

  auto exps = [](const BigInt& n) {
    std::map<BigInt, long> e;
    for (const auto& [p, k] : factor(n)) e[p] = static_cast<long>(k);
    return e;
  };
  const auto ed = exps(deg_f);
  std::vector<GcdPairVerdict> out;
  for (std::size_t i = 0; i < M.size(); ++i) {
    for (std::size_t j = i + 1; j < M.size(); ++j) {
      auto e1 = exps(M[i]), e2 = exps(M[j]);
      std::map<BigInt, long> primes;
      for (const auto* e : std::array<const std::map<BigInt, long>*, 3>{&ed, &e1, &e2})
        for (const auto& [p, k] : *e) primes[p] = 0;
      // a_p (n1 - n2) = 2g (v_p(m2) - v_p(m1)) for every p
      std::optional<Rat> k;
      bool ok = true;
      for (const auto& [p, unused] : primes) {
        const long a = ed.count(p) ? ed.at(p) : 0;
        const long delta = (e2.count(p) ? e2.at(p) : 0) - (e1.count(p) ? e1.at(p) : 0);
        const BigInt rhs = BigInt(static_cast<long>(2 * g)) * delta;
        if (a == 0) {
          if (rhs != 0) ok = false;
          continue;
        }
        Rat kk(rhs, a);
        kk.canonicalize();
        if (k && *k != kk) ok = false;
        k = kk;
      }
      GcdPairVerdict v{M[i], M[j], true, std::nullopt};
      if (ok && k && k->get_den() == 1) {
        const BigInt kn = k->get_num();
        v.distinct = false;
        v.witness = std::make_pair(kn > 0 ? kn : BigInt(0), kn < 0 ? BigInt(-kn) : BigInt(0));
      }
      out.push_back(std::move(v));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Translations
// ---------------------------------------------------------------------------

struct TranslationVerdict {
  bool equivalent = false;
  /// P + n Q0 == Q + n' Q0.
  std::optional<std::pair<BigInt, BigInt>> witness;
};

namespace detail {
inline bool group_lex_less(const GroupPoint& a, const GroupPoint& b) {
  if (a.free != b.free) return a.free < b.free;
  return a.torsion < b.torsion;
}
}  // namespace detail

/// Decides whether P and Q have intersecting forward orbits under x -> x + Q0.
inline TranslationVerdict translation_orbit_equiv(const AffineGroupMap& f, const GroupPoint& P, const GroupPoint& Q) {
  if (!f.is_translation()) throw PreconditionViolated("multiplier is identity", "map is not a pure translation");
  GroupPoint::check_compatible(P, Q);
  GroupPoint::check_compatible(P, f.translation);
  const GroupPoint& Q0 = f.translation;
  const GroupPoint D = Q - P;  // need k Q0 == D with k = n - n'
  TranslationVerdict v;
  std::optional<BigInt> k;

  std::size_t lead = Q0.rank();
  for (std::size_t i = 0; i < Q0.rank(); ++i)
    if (Q0.free[i] != 0) {
      lead = i;
      break;
    }
  if (lead < Q0.rank()) {
    if (D.free[lead] % Q0.free[lead] != 0) return v;
    const BigInt kk = D.free[lead] / Q0.free[lead];
    if (kk * Q0 != D) return v;
    k = kk;
  } else {
    for (const auto& x : D.free)
      if (x != 0) return v;
    // k q == r (mod t)
    const BigInt& t = Q0.t;
    const BigInt g = gcd(Q0.torsion, t);
    if (D.torsion % g != 0) return v;
    const BigInt period = t / g;
    BigInt k0 = 0;
    if (period > 1) {
      BigInt inv;
      BigInt q = Q0.torsion / g;
      mpz_invert(inv.get_mpz_t(), q.get_mpz_t(), period.get_mpz_t());
      k0 = (D.torsion / g) * inv;
      mpz_fdiv_r(k0.get_mpz_t(), k0.get_mpz_t(), period.get_mpz_t());
    }
    // representative of least absolute value; the tie goes by orientation
    BigInt alt = k0 - period;
    if (k0 != 0) {
      const BigInt a0 = abs(k0), a1 = abs(alt);
      if (a1 < a0 || (a1 == a0 && !detail::group_lex_less(P, Q))) k0 = alt;
    }
    k = k0;
  }
  v.equivalent = true;
  v.witness = std::make_pair(*k > 0 ? *k : BigInt(0), *k < 0 ? BigInt(-*k) : BigInt(0));
  return v;
}

class DependentGenerators : public Error {
 public:
  explicit DependentGenerators(std::pair<BigInt, BigInt> relation)
      : Error(ErrorKind::DependentGenerators,
              "a*Q0 + b*Q1 = 0 with (a,b) = (" + relation.first.get_str() + "," + relation.second.get_str() + ")"),
        relation_(std::move(relation)) {}
  const std::pair<BigInt, BigInt>& relation() const noexcept { return relation_; }

 private:
  std::pair<BigInt, BigInt> relation_;
};

/// m Q1 for m = 1..count; distinct m give distinct orbits of x -> x + Q0.
inline std::vector<GroupPoint> lattice_representatives(const GroupPoint& Q0, const GroupPoint& Q1, std::size_t count) {
  GroupPoint::check_compatible(Q0, Q1);
  Matrix<BigInt> cols(Q0.rank(), 2);
  for (std::size_t i = 0; i < Q0.rank(); ++i) {
    cols(i, 0) = Q0.free[i];
    cols(i, 1) = Q1.free[i];
  }
  const auto ker = kernel_basis(cols);
  if (!ker.empty()) {
    BigInt a = ker.front()[0], b = ker.front()[1];
    if (a < 0 || (a == 0 && b < 0)) a = -a, b = -b;
    // scale so the torsion part vanishes as well
    const BigInt tors = a * Q0.torsion + b * Q1.torsion;
    BigInt r = tors;
    mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), Q0.t.get_mpz_t());
    const BigInt s = Q0.t / gcd(Q0.t, r);
    throw DependentGenerators({a * s, b * s});
  }
  const auto f = AffineGroupMap::translation_by(Q0);
  std::vector<GroupPoint> out;
  for (std::size_t m = 1; m <= count; ++m) out.push_back(BigInt(static_cast<unsigned long>(m)) * Q1);
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = i + 1; j < out.size(); ++j)
      if (translation_orbit_equiv(f, out[i], out[j]).equivalent)
        throw Error(ErrorKind::PreconditionViolated, "representatives " + out[i].str() + " and " + out[j].str() + " share an orbit");
  return out;
}

}  // namespace orbitlab
