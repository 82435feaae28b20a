#pragma once

#include <map>
#include <unordered_set>
#include <optional>
#include <string>
#include <vector>

#include "orbitlab/density.hpp"

namespace orbitlab {

/// Invertible upper-triangular matrix acting on P^N. A = Lambda + Theta with
/// Lambda the diagonal and Theta strictly upper triangular.
class TriangularMap {
 public:
  TriangularMap() = default;
  explicit TriangularMap(Matrix<Rat> A) : A_(std::move(A)) {
    if (A_.rows() != A_.cols() || A_.rows() < 2)
      throw PreconditionViolated("square matrix of size N+1 >= 2", std::to_string(A_.rows()) + "x" + std::to_string(A_.cols()));
    for (std::size_t i = 0; i < A_.rows(); ++i) {
      for (std::size_t j = 0; j < i; ++j)
        if (A_(i, j) != 0) throw PreconditionViolated("upper triangular", "entry (" + std::to_string(i) + "," + std::to_string(j) + ") is nonzero");
      if (A_(i, i) == 0) throw PreconditionViolated("nonzero eigenvalues", "diagonal entry " + std::to_string(i) + " is zero");
    }
  }

  static TriangularMap diagonal(const std::vector<Rat>& lambdas) {
    Matrix<Rat> A(lambdas.size(), lambdas.size());
    for (std::size_t i = 0; i < lambdas.size(); ++i) A(i, i) = lambdas[i];
    return TriangularMap(std::move(A));
  }

  std::size_t N() const { return A_.rows() - 1; }
  const Matrix<Rat>& matrix() const { return A_; }
  std::vector<Rat> eigenvalues() const {
    std::vector<Rat> l;
    for (std::size_t i = 0; i < A_.rows(); ++i) l.push_back(A_(i, i));
    return l;
  }
  bool is_diagonal() const {
    for (std::size_t i = 0; i < A_.rows(); ++i)
      for (std::size_t j = i + 1; j < A_.cols(); ++j)
        if (A_(i, j) != 0) return false;
    return true;
  }

  Matrix<Rat> lambda() const {
    Matrix<Rat> L(A_.rows(), A_.cols());
    for (std::size_t i = 0; i < A_.rows(); ++i) L(i, i) = A_(i, i);
    return L;
  }
  Matrix<Rat> theta() const { return A_ - lambda(); }

  /// Exact inverse (back substitution).
  TriangularMap inverse() const {
    const std::size_t n = A_.rows();
    Matrix<Rat> inv(n, n);
    for (std::size_t c = 0; c < n; ++c) {
      for (std::size_t i = n; i-- > 0;) {
        Rat s = (i == c) ? Rat(1) : Rat(0);
        for (std::size_t k = i + 1; k < n; ++k) s -= A_(i, k) * inv(k, c);
        inv(i, c) = s / A_(i, i);
      }
    }
    return TriangularMap(std::move(inv));
  }

  Matrix<Rat> power(std::size_t n) const {
    Matrix<Rat> r = Matrix<Rat>::identity(A_.rows()), b = A_;
    while (n) {
      if (n & 1) r = r * b;
      b = b * b;
      n >>= 1;
    }
    return r;
  }

  ProjPoint apply(const ProjPoint& P) const {
    if (P.dimension() != N()) throw Error(ErrorKind::DimensionMismatch, "point and matrix sizes differ");
    std::vector<Rat> v(P.coords().begin(), P.coords().end());
    return normalize_point(A_.apply(v));
  }

 private:
  Matrix<Rat> A_;
};

/// A^n = sum_j binom(n, j) Lambda^(n-j) Theta^j, valid when Lambda and Theta
/// commute (block-constant diagonal).
inline Matrix<Rat> binomial_power(const TriangularMap& A, std::size_t n) {
  const std::size_t size = A.N() + 1;
  const Matrix<Rat> L = A.lambda(), Th = A.theta();
  Matrix<Rat> acc(size, size), theta_j = Matrix<Rat>::identity(size);
  BigInt binom = 1;
  for (std::size_t j = 0; j <= std::min(n, size - 1); ++j) {
    Matrix<Rat> Lp(size, size);
    for (std::size_t i = 0; i < size; ++i) Lp(i, i) = ipow(L(i, i), static_cast<long>(n - j));
    acc = acc + Rat(binom) * (Lp * theta_j);
    theta_j = theta_j * Th;
    binom = binom * (n - j) / (j + 1);
  }
  return acc;
}

inline bool lambda_theta_commute(const TriangularMap& A) {
  const auto L = A.lambda(), Th = A.theta();
  return L * Th == Th * L;
}

// ---------------------------------------------------------------------------
// p-adic valuations along an orbit
// ---------------------------------------------------------------------------

/// Row n holds ord_p of each coordinate of A^n (p^-r_0, ..., p^-r_N);
/// std::nullopt stands for a zero coordinate.
struct ValuationTable {
  BigInt p;
  std::vector<long> r;
  std::vector<std::vector<std::optional<long>>> rows;
  /// Indices n whose row differs from (-r_0, ..., -r_N).
  std::vector<std::size_t> violations;
};

inline ValuationTable triangular_orbit_valuations(const TriangularMap& A, const BigInt& p, const std::vector<long>& r,
                                                  std::size_t n_max) {
  if (!is_probable_prime(p)) throw PreconditionViolated("p prime", p.get_str() + " is not prime");
  if (r.size() != A.N() + 1)
    throw PreconditionViolated("r strictly decreasing and positive", "r has " + std::to_string(r.size()) + " entries, need " + std::to_string(A.N() + 1));
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] < 1 || (i && r[i] >= r[i - 1]))
      throw PreconditionViolated("r strictly decreasing and positive", "violated at index " + std::to_string(i));
  }
  const auto& M = A.matrix();
  for (std::size_t i = 0; i <= A.N(); ++i) {
    const Rat& l = M(i, i);
    if (l.get_num() % p == 0 || l.get_den() % p == 0)
      throw PreconditionViolated("eigenvalues are p-units", "lambda_" + std::to_string(i) + " = " + l.get_str());
    for (std::size_t j = i; j <= A.N(); ++j)
      if (M(i, j).get_den() % p == 0)
        throw PreconditionViolated("entries p-integral", "entry (" + std::to_string(i) + "," + std::to_string(j) + ") = " + M(i, j).get_str());
  }
  ValuationTable t{p, r, {}, {}};
  std::vector<Rat> v;
  for (long ri : r) v.push_back(ipow(Rat(p), -ri));
  for (std::size_t n = 0; n <= n_max; ++n) {
    std::vector<std::optional<long>> row;
    bool ok = true;
    for (std::size_t i = 0; i < v.size(); ++i) {
      row.push_back(valuation(v[i], p));
      ok = ok && row.back() && *row.back() == -r[i];
    }
    if (!ok) t.violations.push_back(n);
    t.rows.push_back(std::move(row));
    if (n < n_max) v = M.apply(v);
  }
  return t;
}

// ---------------------------------------------------------------------------
// Monomial weights
// ---------------------------------------------------------------------------

struct WeightVector {
  std::vector<long> r;
  unsigned d = 1;

  /// r_i = (d+1)^(N-i).
  static WeightVector standard(std::size_t N, unsigned d) {
    WeightVector w{std::vector<long>(N + 1), d};
    long v = 1;
    for (std::size_t i = N + 1; i-- > 0;) {
      w.r[i] = v;
      v *= static_cast<long>(d) + 1;
    }
    return w;
  }
};

struct InjectivityResult {
  bool injective = true;
  std::optional<std::pair<Exponents, Exponents>> collision;
};

/// Exhaustive check that k -> r.k is injective on {|k| = d}. The collision
/// reported is the first one met in descending lex order of k.
inline InjectivityResult monomial_weight_injectivity(const WeightVector& w) {
  InjectivityResult res;
  std::map<long, Exponents> seen;
  for (const auto& k : monomials(w.r.size(), w.d)) {
    long dot = 0;
    for (std::size_t i = 0; i < k.size(); ++i) dot += w.r[i] * static_cast<long>(k[i]);
    auto [it, fresh] = seen.emplace(dot, k);
    if (!fresh) {
      res.injective = false;
      res.collision = std::make_pair(it->second, k);
      return res;
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// Multiplicative independence
// ---------------------------------------------------------------------------

struct IndependenceResult {
  bool independent = true;
  std::optional<std::vector<BigInt>> relation;
};

/// Independence modulo {+1, -1}: the prime-exponent matrix has full row
/// rank. A relation v satisfies prod values_i^v_i = +-1.
inline IndependenceResult multiplicative_independence(const std::vector<Rat>& values) {
  std::map<BigInt, std::size_t> prime_index;
  std::vector<std::map<BigInt, long>> exps(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] == 0) throw PreconditionViolated("nonzero values", "value " + std::to_string(i) + " is zero");
    for (const auto& [p, e] : factor(values[i].get_num())) exps[i][p] += static_cast<long>(e);
    for (const auto& [p, e] : factor(values[i].get_den())) exps[i][p] -= static_cast<long>(e);
    for (const auto& [p, e] : exps[i]) prime_index.emplace(p, 0);
  }
  std::size_t k = 0;
  for (auto& [p, idx] : prime_index) idx = k++;
  // columns are the values, so the kernel holds exponent relations
  Matrix<BigInt> Et(prime_index.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    for (const auto& [p, e] : exps[i]) Et(prime_index[p], i) = e;
  IndependenceResult res;
  const auto ker = kernel_basis(Et);
  if (!ker.empty()) {
    res.independent = false;
    res.relation = ker.front();
  }
  return res;
}

// ---------------------------------------------------------------------------
// Orbit and backward-branch density
// ---------------------------------------------------------------------------

struct LinearDensityResult {
  std::vector<ProjPoint> points;
  DensityCertificate density;
  /// Diagonal map, multiplicatively independent ratios lambda_i/lambda_N
  /// (i < N), and P in the torus x_0 ... x_N != 0.
  bool case4_sufficient = false;
};

inline bool case4_condition(const TriangularMap& A, const ProjPoint& P) {
  if (!A.is_diagonal()) return false;
  for (const auto& c : P.coords())
    if (c == 0) return false;
  const auto l = A.eigenvalues();
  std::vector<Rat> ratios;
  for (std::size_t i = 0; i + 1 < l.size(); ++i) ratios.push_back(l[i] / l.back());
  return multiplicative_independence(ratios).independent;
}

inline LinearDensityResult linear_orbit_density(const TriangularMap& A, const ProjPoint& P, std::size_t steps, unsigned D) {
  LinearDensityResult res;
  ProjPoint Q = P;
  for (std::size_t n = 0; n < steps; ++n) {
    res.points.push_back(Q);
    if (n + 1 < steps) Q = A.apply(Q);
  }
  res.density = vanishing_forms(res.points, D, A.N());
  res.case4_sufficient = case4_condition(A, P);
  return res;
}

struct BackwardBranch {
  std::vector<ProjPoint> points;  // A^{-n} P for n < steps
  DensityCertificate density;
  bool distinct = true;
};

inline BackwardBranch backward_branch(const TriangularMap& A, const ProjPoint& P, std::size_t steps, unsigned D) {
  BackwardBranch res;
  const TriangularMap inv = A.inverse();
  std::unordered_set<ProjPoint, ProjPointHash> seen;
  ProjPoint Q = P;
  for (std::size_t n = 0; n < steps; ++n) {
    res.points.push_back(Q);
    if (!seen.insert(Q).second) res.distinct = false;
    if (n + 1 < steps) Q = inv.apply(Q);
  }
  res.density = vanishing_forms(res.points, D, A.N());
  return res;
}

}  // namespace orbitlab
