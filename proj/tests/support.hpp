#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "orbitlab/orbitlab.hpp"

namespace testing_support {

using namespace orbitlab;

inline HomogPoly poly(std::size_t N, unsigned d, std::vector<std::pair<long, Exponents>> terms) {
  std::vector<Term> t;
  for (auto& [c, e] : terms) t.push_back({BigInt(c), e});
  return HomogPoly(N, d, std::move(t));
}

/// [x^2, y^2]
inline MorphismPN square_map() { return MorphismPN::power_map(1, 2); }

/// [x^2 + y^2, xy]
inline MorphismPN sum_map() {
  return MorphismPN({poly(1, 2, {{1, {2, 0}}, {1, {0, 2}}}), poly(1, 2, {{1, {1, 1}}})});
}

/// x_0^3 = x0*f0 + (-y)*f1 ... the certificate for [x^2 + y^2, xy]:
/// x^3 = x (x^2 + y^2) - y (xy),  y^3 = y (x^2 + y^2) - x (xy).
inline NullstellensatzCertificate sum_map_certificate() {
  NullstellensatzCertificate c;
  c.M = 3;
  c.G = {{poly(1, 1, {{1, {1, 0}}}), poly(1, 1, {{-1, {0, 1}}})},
         {poly(1, 1, {{1, {0, 1}}}), poly(1, 1, {{-1, {1, 0}}})}};
  c.row_scale = {1, 1};
  return c;
}

inline ProjPoint pt(std::initializer_list<long> c) { return ProjPoint::from_integers(c); }

inline BigInt random_int(std::mt19937_64& rng, long lo, long hi) {
  return BigInt(std::uniform_int_distribution<long>(lo, hi)(rng));
}

/// Random point with coordinates in [-bound, bound], not all zero.
inline ProjPoint random_point(std::mt19937_64& rng, std::size_t N, long bound) {
  while (true) {
    std::vector<BigInt> c;
    bool nonzero = false;
    for (std::size_t i = 0; i <= N; ++i) {
      c.push_back(random_int(rng, -bound, bound));
      nonzero = nonzero || c.back() != 0;
    }
    if (nonzero) return ProjPoint::from_integers(std::move(c));
  }
}

inline Rat random_rat(std::mt19937_64& rng, long bound) {
  long den = std::uniform_int_distribution<long>(1, bound)(rng);
  return make_rat(random_int(rng, -bound, bound), BigInt(den));
}

inline Rat random_nonzero_rat(std::mt19937_64& rng, long bound) {
  while (true) {
    Rat q = random_rat(rng, bound);
    if (q != 0) return q;
  }
}

}  // namespace testing_support
