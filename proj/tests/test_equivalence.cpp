#include <gtest/gtest.h>

#include <set>

#include "support.hpp"

using namespace orbitlab;
using namespace testing_support;

namespace {

const ComparisonConstants& square_constants() {
  static const ComparisonConstants c = comparison_constants(square_map());
  return c;
}

std::string verdict(const MorphismPN& f, const ProjPoint& P, const ProjPoint& Q, const ComparisonConstants& c) {
  return to_string(decide_grand_equiv(f, P, Q, c));
}

}  // namespace

TEST(DecideEquiv, Examples) {
  const auto f = square_map();
  const auto& c = square_constants();
  EXPECT_EQ(verdict(f, pt({2, 1}), pt({16, 1}), c), "Equivalent(2,0)");
  EXPECT_EQ(verdict(f, pt({2, 1}), pt({3, 1}), c), "NotEquivalent(HeightRatio)");
  EXPECT_EQ(verdict(f, pt({2, 1}), pt({1, 2}), c), "NotEquivalent(SupportSignature)");
  EXPECT_EQ(verdict(f, pt({1, 1}), pt({1, -1}), c), "Equivalent(0,1)");
}

TEST(DecideEquiv, WitnessIsMinimal) {
  const auto f = square_map();
  // f(2,1) = (4,1) = f(2,-1): merge at (1,1), not (2,2)
  const auto v = decide_grand_equiv(f, pt({2, 1}), pt({2, -1}), square_constants());
  ASSERT_TRUE(std::holds_alternative<Equivalent>(v));
  EXPECT_EQ(std::get<Equivalent>(v).i, 1u);
  EXPECT_EQ(std::get<Equivalent>(v).j, 1u);
}

TEST(DecideEquiv, PreperiodicCycles) {
  // [x^2 - y^2, y^2]: (0,1) -> (1,-1)... use x -> x^2 - 1: 0 -> -1 -> 0 is a 2-cycle, 1 -> 0
  MorphismPN f({poly(1, 2, {{1, {2, 0}}, {-1, {0, 2}}}), poly(1, 2, {{1, {0, 2}}})});
  const auto c = comparison_constants(f, ConstantsHeuristic{});
  // (1,0) is the fixed point at infinity; (0,1) lies on the finite 2-cycle
  EXPECT_EQ(verdict(f, pt({1, 0}), pt({0, 1}), c), "NotEquivalent(PreperiodicCycleDisjoint)");
  EXPECT_EQ(verdict(f, pt({1, 1}), pt({0, 1}), c), "Equivalent(1,0)");
}

TEST(DecideEquiv, InconclusiveWithoutCertificates) {
  const auto f = sum_map();
  const auto c = comparison_constants(f);  // UpperOnly
  EquivBudget b;
  b.max_sum = 6;
  const auto v = decide_grand_equiv(f, pt({2, 1}), pt({3, 1}), c, b);
  EXPECT_TRUE(std::holds_alternative<InconclusiveVerdict>(v));
}

TEST(DecideEquiv, CertifiedNonPowerMap) {
  const auto f = sum_map();
  const auto c = comparison_constants(f, sum_map_certificate());
  EquivBudget b;
  b.max_sum = 8;
  b.height_tol = Rat(1, 1000);
  b.cap_bits = 4096;
  // (0,1) -> (1,0) -> (1,0) is preperiodic, (2,1) wanders
  const auto v = decide_grand_equiv(f, pt({0, 1}), pt({2, 1}), c, b);
  EXPECT_EQ(to_string(v), "NotEquivalent(HeightRatio)");
}

namespace {

/// Exact search for an orbit intersection with i + j <= n.
bool orbits_meet(const MorphismPN& f, const ProjPoint& P, const ProjPoint& Q, std::size_t n) {
  std::vector<ProjPoint> a{P}, b{Q};
  for (std::size_t k = 0; k < n; ++k) {
    a.push_back(evaluate(f, a.back()));
    b.push_back(evaluate(f, b.back()));
  }
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = 0; i + j <= n; ++j)
      if (a[i] == b[j]) return true;
  return false;
}

}  // namespace

TEST(DecideEquiv, RelationLawsOnSmallBox) {
  const auto f = square_map();
  const auto& c = square_constants();
  const auto pts = points_up_to(1, 3);
  ASSERT_EQ(pts.size(), 16u);
  std::vector<std::vector<EquivVerdict>> v(pts.size());
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = 0; b < pts.size(); ++b) v[a].push_back(decide_grand_equiv(f, pts[a], pts[b], c));
  for (std::size_t a = 0; a < pts.size(); ++a) {
    ASSERT_TRUE(std::holds_alternative<Equivalent>(v[a][a]));
    EXPECT_EQ(std::get<Equivalent>(v[a][a]).i, 0u);
    EXPECT_EQ(std::get<Equivalent>(v[a][a]).j, 0u);
    for (std::size_t b = 0; b < pts.size(); ++b) {
      EXPECT_FALSE(std::holds_alternative<InconclusiveVerdict>(v[a][b]));
      if (const auto* e = std::get_if<Equivalent>(&v[a][b])) {
        EXPECT_EQ(iterate(f, pts[a], e->i), iterate(f, pts[b], e->j));
        ASSERT_TRUE(std::holds_alternative<Equivalent>(v[b][a]));
        EXPECT_EQ(std::get<Equivalent>(v[b][a]).i, e->j);
        EXPECT_EQ(std::get<Equivalent>(v[b][a]).j, e->i);
        // height merge: d^i hhat(P) == d^j hhat(Q) exactly
        const auto hP = canonical_height(f, pts[a], c), hQ = canonical_height(f, pts[b], c);
        EXPECT_EQ(hP.exact->scaled(Rat(ipow(BigInt(2), e->i))), hQ.exact->scaled(Rat(ipow(BigInt(2), e->j))));
        // classifications agree
        EXPECT_EQ(classify_preperiodic(f, pts[a]).is_preperiodic(), classify_preperiodic(f, pts[b]).is_preperiodic());
      } else {
        EXPECT_TRUE(std::holds_alternative<NotEquivalent>(v[b][a]));
        EXPECT_FALSE(orbits_meet(f, pts[a], pts[b], 12));
      }
      for (std::size_t k = 0; k < pts.size(); ++k) {
        if (std::holds_alternative<Equivalent>(v[a][b]) && std::holds_alternative<Equivalent>(v[b][k])) {
          EXPECT_FALSE(std::holds_alternative<NotEquivalent>(v[a][k]));
        }
      }
    }
  }
}

TEST(Greedy, Examples) {
  const auto f = square_map();
  const auto& c = square_constants();
  const auto r = greedy_representatives(f, 2, 1, c);
  EXPECT_EQ(r.reps, (std::vector<ProjPoint>{pt({0, 1}), pt({1, 0}), pt({1, 1}), pt({1, 2}), pt({2, 1})}));
  EXPECT_TRUE(r.density.dense);
  EXPECT_TRUE(r.certified);
  bool saw = false;
  for (const auto& m : r.merged)
    if (m.point == pt({1, -1})) {
      saw = true;
      EXPECT_EQ(r.reps[m.rep], pt({1, 1}));
    }
  EXPECT_TRUE(saw);
  EXPECT_TRUE(r.inconclusive.empty());

  const auto r1 = greedy_representatives(f, 1, 1, c);
  EXPECT_EQ(r1.reps, (std::vector<ProjPoint>{pt({0, 1}), pt({1, 0}), pt({1, 1})}));

  const auto r0 = greedy_representatives(f, 0, 1, c);
  EXPECT_TRUE(r0.reps.empty());
  EXPECT_FALSE(r0.density.dense);
}

TEST(Greedy, PairwiseCertified) {
  const auto f = square_map();
  const auto& c = square_constants();
  const auto r = greedy_representatives(f, 6, 2, c);
  EXPECT_EQ(r.pair_certificates.size(), r.reps.size() * (r.reps.size() - 1) / 2);
  for (std::size_t a = 0; a < r.reps.size(); ++a)
    for (std::size_t b = a + 1; b < r.reps.size(); ++b)
      EXPECT_TRUE(std::holds_alternative<NotEquivalent>(decide_grand_equiv(f, r.reps[a], r.reps[b], c)));
  // every enumerated point is accounted for exactly once
  EXPECT_EQ(r.reps.size() + r.merged.size() + r.inconclusive.size(), points_up_to(1, 6).size());
  for (const auto& m : r.merged) EXPECT_EQ(iterate(f, r.reps[m.rep], m.witness.i), iterate(f, m.point, m.witness.j));
}
