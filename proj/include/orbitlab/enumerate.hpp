#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "orbitlab/core.hpp"

namespace orbitlab {

namespace detail {
/// k-th value in coordinate order 0, 1, -1, 2, -2, ...
inline long coordinate_at(long k) { return k == 0 ? 0 : (k % 2 ? (k + 1) / 2 : -k / 2); }
}  // namespace detail

/// Calls fn(coords) for every canonical lift with max |x_i| == H, in no
/// particular order. coords is a std::vector<long> of length N+1.
template <class Fn>
void for_each_point_in_shell_unordered(std::size_t N, long H, Fn&& fn) {
  if (H < 1) return;
  const std::size_t n = N + 1;
  std::vector<long> x(n, 0);
  // j is the first index with |x_j| == H; earlier coordinates lie in (-H, H)
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<long> lo(n), hi(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (i < j) lo[i] = -(H - 1), hi[i] = H - 1;
      else if (i == j) lo[i] = -H, hi[i] = H;
      else lo[i] = -H, hi[i] = H;
    }
    std::vector<long> cur = lo;
    while (true) {
      if (cur[j] == H || cur[j] == -H) {
        long g = 0;
        std::size_t first = n;
        for (std::size_t i = 0; i < n; ++i) {
          g = std::gcd(g, cur[i]);
          if (first == n && cur[i] != 0) first = i;
        }
        if (g == 1 && cur[first] > 0) fn(static_cast<const std::vector<long>&>(cur));
      }
      std::size_t i = n;
      bool done = true;
      while (i-- > 0) {
        if (i == j) {
          // only the two values -H and H
          if (cur[i] == -H) { cur[i] = H; done = false; break; }
          cur[i] = -H;
          continue;
        }
        if (++cur[i] <= hi[i]) { done = false; break; }
        cur[i] = lo[i];
      }
      if (done) break;
    }
  }
}

namespace detail {
inline bool coords_lex_less(const std::vector<long>& a, const std::vector<long>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    const long aa = a[i] < 0 ? -a[i] : a[i], bb = b[i] < 0 ? -b[i] : b[i];
    if (aa != bb) return aa < bb;
    if ((a[i] < 0) != (b[i] < 0)) return a[i] > 0;
  }
  return false;
}
}  // namespace detail

/// Same points as for_each_point_in_shell_unordered, in lex_less order.
template <class Fn>
void for_each_point_in_shell(std::size_t N, long H, Fn&& fn) {
  std::vector<std::vector<long>> shell;
  for_each_point_in_shell_unordered(N, H, [&](const std::vector<long>& x) { shell.push_back(x); });
  std::sort(shell.begin(), shell.end(), detail::coords_lex_less);
  for (const auto& x : shell) fn(x);
}

/// Every point of P^N(Q) with 1 <= H(P) <= T in enumeration order.
template <class Fn>
void for_each_point(std::size_t N, long T, Fn&& fn) {
  for (long H = 1; H <= T; ++H) for_each_point_in_shell(N, H, fn);
}

inline std::vector<ProjPoint> points_up_to(std::size_t N, long T) {
  std::vector<ProjPoint> out;
  for_each_point(N, T, [&](const std::vector<long>& x) {
    std::vector<BigInt> c(x.begin(), x.end());
    out.push_back(ProjPoint::from_integers(std::move(c)));
  });
  return out;
}

}  // namespace orbitlab
