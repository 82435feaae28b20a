#include <gtest/gtest.h>

#include "support.hpp"

using namespace orbitlab;
using namespace testing_support;

namespace {

Matrix<Rat> mat(std::initializer_list<std::initializer_list<long>> rows) {
  Matrix<Rat> m(rows.size(), rows.begin()->size());
  std::size_t i = 0;
  for (const auto& r : rows) {
    std::size_t j = 0;
    for (long v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

std::vector<std::optional<long>> row(long a, long b) { return {a, b}; }

}  // namespace

TEST(Triangular, Validation) {
  EXPECT_THROW(TriangularMap(mat({{1, 0}, {1, 1}})), PreconditionViolated);
  EXPECT_THROW(TriangularMap(mat({{0, 1}, {0, 1}})), PreconditionViolated);
  EXPECT_NO_THROW(TriangularMap(mat({{2, 1}, {0, 5}})));
}

TEST(Triangular, InverseAndPower) {
  const TriangularMap A(mat({{2, 1, 3}, {0, 5, -1}, {0, 0, 7}}));
  EXPECT_EQ(A.matrix() * A.inverse().matrix(), Matrix<Rat>::identity(3));
  EXPECT_EQ(A.power(3), A.matrix() * A.matrix() * A.matrix());
}

TEST(Valuations, Examples) {
  const TriangularMap A(mat({{2, 1}, {0, 5}}));
  const auto t = triangular_orbit_valuations(A, BigInt(3), {2, 1}, 1);
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[0], row(-2, -1));
  EXPECT_EQ(t.rows[1], row(-2, -1));
  EXPECT_TRUE(t.violations.empty());
  const TriangularMap A2(mat({{4, 7}, {0, 25}}));
  EXPECT_EQ(triangular_orbit_valuations(A2, BigInt(3), {2, 1}, 1).rows[1], row(-2, -1));
  EXPECT_EQ(A2.apply(pt({1, 3})), normalize_point(std::vector<Rat>{Rat(25, 9), Rat(25, 3)}));
}

TEST(Valuations, IdentityHoldsForAdmissibleInputs) {
  std::mt19937_64 rng(41);
  const std::vector<long> primes{2, 3, 5, 7};
  for (int it = 0; it < 40; ++it) {
    const long p = primes[rng() % primes.size()];
    const std::size_t n = 2 + rng() % 3;
    Matrix<Rat> m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      long l;
      do l = std::uniform_int_distribution<long>(-20, 20)(rng);
      while (l == 0 || l % p == 0);
      m(i, i) = l;
      for (std::size_t j = i + 1; j < n; ++j) m(i, j) = std::uniform_int_distribution<long>(-9, 9)(rng);
    }
    std::vector<long> r;
    long top = static_cast<long>(n) + static_cast<long>(rng() % 3);
    for (std::size_t i = 0; i < n; ++i) r.push_back(top - static_cast<long>(i));
    const auto t = triangular_orbit_valuations(TriangularMap(m), BigInt(p), r, 15);
    EXPECT_TRUE(t.violations.empty());
  }
}

TEST(Valuations, PreconditionsNamed) {
  auto hyp = [](auto&& fn) {
    try {
      fn();
    } catch (const PreconditionViolated& e) {
      return e.hypothesis();
    }
    return std::string("none");
  };
  EXPECT_EQ(hyp([] { triangular_orbit_valuations(TriangularMap(mat({{3, 1}, {0, 5}})), BigInt(3), {2, 1}, 3); }),
            "eigenvalues are p-units");
  EXPECT_EQ(hyp([] { triangular_orbit_valuations(TriangularMap(mat({{2, 1}, {0, 5}})), BigInt(4), {2, 1}, 3); }), "p prime");
  EXPECT_EQ(hyp([] { triangular_orbit_valuations(TriangularMap(mat({{2, 1}, {0, 5}})), BigInt(3), {1, 2}, 3); }),
            "r strictly decreasing and positive");
  Matrix<Rat> m = mat({{2, 0}, {0, 5}});
  m(0, 1) = Rat(1, 3);
  EXPECT_EQ(hyp([&] { triangular_orbit_valuations(TriangularMap(m), BigInt(3), {2, 1}, 3); }), "entries p-integral");
}

TEST(Weights, Examples) {
  auto w = WeightVector::standard(1, 2);
  EXPECT_EQ(w.r, (std::vector<long>{3, 1}));
  EXPECT_TRUE(monomial_weight_injectivity(w).injective);
  w = WeightVector::standard(2, 2);
  EXPECT_EQ(w.r, (std::vector<long>{9, 3, 1}));
  EXPECT_TRUE(monomial_weight_injectivity(w).injective);
  const auto c = monomial_weight_injectivity(WeightVector{{1, 1}, 2});
  EXPECT_FALSE(c.injective);
  ASSERT_TRUE(c.collision);
  EXPECT_EQ(c.collision->first, (Exponents{2, 0}));
  EXPECT_EQ(c.collision->second, (Exponents{1, 1}));
}

TEST(Weights, DefaultInjectiveExhaustive) {
  for (std::size_t N = 1; N <= 4; ++N)
    for (unsigned d = 1; d <= 6; ++d) EXPECT_TRUE(monomial_weight_injectivity(WeightVector::standard(N, d)).injective);
}

TEST(MultIndep, Examples) {
  EXPECT_TRUE(multiplicative_independence({Rat(2), Rat(3)}).independent);
  auto r = multiplicative_independence({Rat(2), Rat(4)});
  EXPECT_FALSE(r.independent);
  EXPECT_EQ(*r.relation, (std::vector<BigInt>{-2, 1}));
  EXPECT_TRUE(multiplicative_independence({Rat(6), Rat(10), Rat(15)}).independent);
  r = multiplicative_independence({Rat(2, 3), Rat(3, 2)});
  EXPECT_EQ(*r.relation, (std::vector<BigInt>{1, 1}));
  EXPECT_FALSE(multiplicative_independence({Rat(-1)}).independent);
  EXPECT_THROW(multiplicative_independence({Rat(0)}), PreconditionViolated);
}

TEST(MultIndep, RelationsVerify) {
  std::mt19937_64 rng(42);
  const std::vector<long> base{2, 3, 5, 6, 10, 12, 15, 18};
  for (int it = 0; it < 200; ++it) {
    std::vector<Rat> v;
    const std::size_t n = 1 + rng() % 4;
    for (std::size_t i = 0; i < n; ++i) {
      Rat q = make_rat(BigInt(base[rng() % base.size()]), BigInt(base[rng() % base.size()]));
      if (rng() % 2) q = -q;
      if (q == 1 || q == -1) q = 7;
      v.push_back(q);
    }
    const auto r = multiplicative_independence(v);
    if (r.independent) continue;
    Rat prod = 1;
    for (std::size_t i = 0; i < v.size(); ++i) prod *= ipow(v[i], (*r.relation)[i].get_si());
    EXPECT_TRUE(prod == 1 || prod == -1);
    bool nonzero = false;
    for (const auto& x : *r.relation) nonzero = nonzero || x != 0;
    EXPECT_TRUE(nonzero);
  }
}

TEST(LinearDensity, Examples) {
  const auto A = TriangularMap::diagonal({Rat(2), Rat(3), Rat(1)});
  const auto r = linear_orbit_density(A, pt({1, 1, 1}), 12, 2);
  EXPECT_TRUE(r.density.dense);
  EXPECT_EQ(r.density.rank, 6u);
  EXPECT_TRUE(r.case4_sufficient);
  const auto I = TriangularMap::diagonal({Rat(1), Rat(1)});
  EXPECT_FALSE(linear_orbit_density(I, pt({2, 3}), 5, 1).density.dense);
  const auto S = TriangularMap::diagonal({Rat(2), Rat(2)});
  const auto s = linear_orbit_density(S, pt({1, 1}), 5, 1);
  EXPECT_FALSE(s.density.dense);
  EXPECT_FALSE(s.case4_sufficient);
}

TEST(Backward, Examples) {
  const auto A = TriangularMap::diagonal({Rat(2), Rat(1)});
  const auto b = backward_branch(A, pt({1, 1}), 5, 3);
  EXPECT_EQ(b.points, (std::vector<ProjPoint>{pt({1, 1}), pt({1, 2}), pt({1, 4}), pt({1, 8}), pt({1, 16})}));
  EXPECT_TRUE(b.distinct);
  EXPECT_TRUE(b.density.dense);
  EXPECT_TRUE(backward_branch(A, pt({1, 1}), 1, 1).distinct);
  const auto F = TriangularMap::diagonal({Rat(1), Rat(-1)});
  const auto f = backward_branch(F, pt({1, 1}), 3, 1);
  EXPECT_EQ(f.points[1], pt({1, -1}));
  EXPECT_FALSE(f.distinct);
}

TEST(Backward, DistinctnessMatchesPeriodicity) {
  std::mt19937_64 rng(43);
  for (int it = 0; it < 50; ++it) {
    const Rat l0 = random_nonzero_rat(rng, 3), l1 = random_nonzero_rat(rng, 3);
    const auto A = TriangularMap::diagonal({l0, l1});
    const ProjPoint P = random_point(rng, 1, 5);
    const auto b = backward_branch(A, P, 6, 1);
    // finite projective order on P: (l0/l1)^k == 1 for some k < 6, or P on an axis
    bool periodic = P[0] == 0 || P[1] == 0;
    for (long k = 1; k < 6; ++k) periodic = periodic || ipow(l0 / l1, k) == 1;
    EXPECT_EQ(b.distinct, !periodic) << l0.get_str() << " " << l1.get_str() << " " << P.str();
  }
}

TEST(BinomialPower, MatchesRepeatedProduct) {
  std::mt19937_64 rng(44);
  for (int it = 0; it < 30; ++it) {
    // block-constant diagonal so that Lambda and Theta commute
    const std::size_t n = 2 + rng() % 3;
    const Rat lambda = random_nonzero_rat(rng, 4);
    Matrix<Rat> m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      m(i, i) = lambda;
      for (std::size_t j = i + 1; j < n; ++j) m(i, j) = random_rat(rng, 5);
    }
    const TriangularMap A(m);
    ASSERT_TRUE(lambda_theta_commute(A));
    for (std::size_t k = 0; k <= 20; ++k) EXPECT_EQ(binomial_power(A, k), A.power(k));
  }
  EXPECT_FALSE(lambda_theta_commute(TriangularMap(mat({{2, 1}, {0, 5}}))));
}
