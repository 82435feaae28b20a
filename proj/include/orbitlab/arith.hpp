#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orbitlab/error.hpp"

namespace orbitlab {

using BigInt = mpz_class;
/// Exact rational. mpq_class keeps gcd(num, den) = 1 and den > 0 once
/// canonicalized; every constructor in this library goes through make_rat.
using Rat = mpq_class;

inline Rat make_rat(const BigInt& num, const BigInt& den) {
  if (den == 0) throw Error(ErrorKind::ParseError, "zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline BigInt lcm(const BigInt& a, const BigInt& b) {
  BigInt l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

inline BigInt ipow(const BigInt& base, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Rat ipow(const Rat& base, long e) {
  Rat r;
  const unsigned long ue = static_cast<unsigned long>(e < 0 ? -e : e);
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), ue);
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), ue);
  r.canonicalize();
  if (e < 0) {
    if (r == 0) throw Error(ErrorKind::PreconditionViolated, "negative power of zero");
    r = 1 / r;
  }
  return r;
}

inline bool is_probable_prime(const BigInt& n) {
  return n >= 2 && mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

inline BigInt next_prime(const BigInt& n) {
  BigInt r;
  mpz_nextprime(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

/// p-adic valuation of a nonzero integer.
inline long valuation(BigInt n, const BigInt& p) {
  if (n == 0) throw Error(ErrorKind::PreconditionViolated, "valuation of zero");
  return static_cast<long>(mpz_remove(n.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

/// p-adic valuation of a rational; std::nullopt encodes +infinity (x = 0).
inline std::optional<long> valuation(const Rat& x, const BigInt& p) {
  if (x == 0) return std::nullopt;
  return valuation(x.get_num(), p) - valuation(x.get_den(), p);
}

namespace detail {

inline BigInt pollard_brent(const BigInt& n, unsigned long seed) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  BigInt y = seed % (n - 1) + 1, c = (seed * 7 + 3) % (n - 1) + 1, g = 1, q = 1, x, ys;
  const unsigned long m = 128;
  unsigned long r = 1;
  auto step = [&](BigInt& v) {
    v = v * v + c;
    mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
  };
  while (g == 1) {
    x = y;
    for (unsigned long i = 0; i < r; ++i) step(y);
    unsigned long k = 0;
    while (k < r && g == 1) {
      ys = y;
      for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
        step(y);
        BigInt diff = abs(x - y);
        q = q * diff;
        mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      }
      g = gcd(q, n);
      k += m;
    }
    r *= 2;
  }
  if (g == n) {
    do {
      step(ys);
      g = gcd(abs(x - ys), n);
    } while (g == 1);
  }
  return g;
}

inline void factor_into(const BigInt& n, std::map<BigInt, unsigned long>& out) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    ++out[n];
    return;
  }
  BigInt d = n;
  for (unsigned long seed = 2; d == n || d == 1; ++seed) d = pollard_brent(n, seed);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace detail

/// Prime factorization of |n| (n != 0), primes ascending.
inline std::vector<std::pair<BigInt, unsigned long>> factor(const BigInt& n) {
  if (n == 0) throw Error(ErrorKind::PreconditionViolated, "factor of zero");
  BigInt m = abs(n);
  std::map<BigInt, unsigned long> acc;
  for (unsigned long p = 2; p < 10000 && p * p <= m; p += (p == 2 ? 1 : 2)) {
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      ++acc[BigInt(p)];
      m /= p;
    }
  }
  if (m > 1) detail::factor_into(m, acc);
  return {acc.begin(), acc.end()};
}

/// Writes n = root^exponent with root not a perfect power (n >= 2).
/// Returns (n, 1) for n in {0, 1}.
inline std::pair<BigInt, unsigned long> perfect_power_root(const BigInt& n) {
  BigInt base = n;
  unsigned long exponent = 1;
  if (base < 2) return {base, exponent};
  bool reduced = true;
  while (reduced) {
    reduced = false;
    const auto bits = mpz_sizeinbase(base.get_mpz_t(), 2);
    for (unsigned long e = 2; e <= bits; ++e) {
      BigInt r;
      if (mpz_root(r.get_mpz_t(), base.get_mpz_t(), e) != 0) {
        base = r;
        exponent *= e;
        reduced = true;
        break;
      }
    }
  }
  return {base, exponent};
}

inline std::string to_string(const BigInt& x) { return x.get_str(); }
inline std::string to_string(const Rat& x) { return x.get_str(); }

inline Rat parse_rat(const std::string& s) {
  Rat q;
  if (s.empty() || q.set_str(s, 10) != 0) throw ParseError("not a rational: '" + s + "'");
  if (q.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

inline BigInt parse_int(const std::string& s) {
  BigInt z;
  if (s.empty() || z.set_str(s, 10) != 0) throw ParseError("not an integer: '" + s + "'");
  return z;
}

}  // namespace orbitlab
