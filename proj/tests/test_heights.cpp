#include <gtest/gtest.h>

#include "support.hpp"

using namespace orbitlab;
using namespace testing_support;

namespace {
Real R(double v) { return Real::from(v); }
}  // namespace

TEST(WeilHeight, Examples) {
  EXPECT_EQ(weil_height(pt({3, 2})).H, 3);
  EXPECT_TRUE(weil_height(pt({3, 2})).log.contains(Real::from(std::log(3.0))) ||
              weil_height(pt({3, 2})).log.width() < R(1e-30));
  EXPECT_EQ(weil_height(pt({1, 0})).H, 1);
  EXPECT_TRUE(weil_height(pt({1, 0})).log.width().is_zero());
  EXPECT_EQ(weil_height(pt({10, -7})).H, 10);
}

TEST(ExactLog, ReducesToPowerRoot) {
  EXPECT_EQ(ExactLog(BigInt(16), Rat(1)), ExactLog(BigInt(2), Rat(4)));
  EXPECT_EQ(ExactLog(BigInt(256), Rat(1, 4)), ExactLog(BigInt(2), Rat(2)));
  EXPECT_FALSE(ExactLog(BigInt(3), Rat(1)) == ExactLog(BigInt(2), Rat(1)));
  EXPECT_TRUE(ExactLog(BigInt(1), Rat(5)).is_zero());
}

TEST(Constants, PowerMap) {
  const auto c = comparison_constants(square_map());
  EXPECT_EQ(c.mode, ConstantsMode::Certified);
  EXPECT_TRUE(c.c_up.width().is_zero());
  EXPECT_TRUE(c.c_up.lo().is_zero());
  ASSERT_TRUE(c.c_low);
  EXPECT_TRUE(c.c_low->hi().is_zero());
  EXPECT_TRUE(c.exact_zero());
}

TEST(Constants, SumMapUpperOnly) {
  const auto c = comparison_constants(sum_map());
  EXPECT_EQ(c.mode, ConstantsMode::UpperOnly);
  EXPECT_EQ(c.up_factor, 2);
  EXPECT_TRUE(c.c_up.contains(Real::from(std::log(2.0))) || c.c_up.width() < R(1e-30));
  EXPECT_FALSE(c.c_low.has_value());
}

TEST(Constants, Certificate) {
  const auto c = comparison_constants(sum_map(), sum_map_certificate());
  EXPECT_EQ(c.mode, ConstantsMode::Certified);
  ASSERT_TRUE(c.low_factor);
  EXPECT_EQ(*c.low_factor, 2);
  // identity-power certificate on [x^2, y^2]
  NullstellensatzCertificate id;
  id.M = 2;
  id.G = {{poly(1, 0, {{1, {0, 0}}}), HomogPoly::zero(1, 0)}, {HomogPoly::zero(1, 0), poly(1, 0, {{1, {0, 0}}})}};
  id.row_scale = {1, 1};
  const auto c2 = comparison_constants(square_map(), id);
  EXPECT_EQ(c2.mode, ConstantsMode::Certified);
  EXPECT_TRUE(c2.exact_zero());
  // a wrong identity is rejected
  auto bad = sum_map_certificate();
  bad.G[0][1] = poly(1, 1, {{1, {0, 1}}});
  try {
    comparison_constants(sum_map(), bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CertificateInvalid);
  }
}

TEST(Constants, LowerBoundHoldsWithCertificate) {
  const auto f = sum_map();
  const auto c = comparison_constants(f, sum_map_certificate());
  std::mt19937_64 rng(4);
  for (int it = 0; it < 1000; ++it) {
    const ProjPoint P = random_point(rng, 1, 1000);
    // H(f(P)) * exp(C_low) >= H(P)^2 exactly
    const BigInt lhs = evaluate(f, P).height();
    const Rat low = *c.low_factor;
    EXPECT_GE(Rat(lhs) * low, Rat(P.height() * P.height()));
  }
}

TEST(Constants, HeuristicIsSeeded) {
  const auto a = comparison_constants(sum_map(), ConstantsHeuristic{2000, 5});
  const auto b = comparison_constants(sum_map(), ConstantsHeuristic{2000, 5});
  EXPECT_EQ(a.mode, ConstantsMode::Heuristic);
  EXPECT_EQ(a.heuristic_margin, b.heuristic_margin);
  EXPECT_TRUE(a.c_low->lo() == b.c_low->lo());
}

TEST(Constants, UpperBoundValidity) {
  std::mt19937_64 rng(8);
  for (const auto& f : {sum_map(), square_map(),
                        MorphismPN({poly(1, 3, {{3, {3, 0}}, {-2, {1, 2}}}), poly(1, 3, {{5, {0, 3}}, {1, {2, 1}}})})}) {
    const auto c = comparison_constants(f);
    for (int it = 0; it < 1000; ++it) {
      const ProjPoint P = random_point(rng, 1, 50);
      // exact form: H(f(P)) <= up_factor * H(P)^d
      EXPECT_LE(evaluate(f, P).height(), c.up_factor * ipow(P.height(), f.degree())) << P.str();
    }
  }
}

TEST(CanonicalHeight, PowerMapExact) {
  const auto f = square_map();
  const auto c = comparison_constants(f);
  auto h = canonical_height(f, pt({2, 1}), c);
  EXPECT_EQ(h.iterations_used, 0u);
  ASSERT_TRUE(h.exact);
  EXPECT_EQ(*h.exact, ExactLog(BigInt(2), Rat(1)));
  EXPECT_TRUE(h.certified());
  auto z = canonical_height(f, pt({1, 1}), c);
  EXPECT_TRUE(z.is_exact_zero());
  EXPECT_TRUE(z.lo().is_zero() && z.hi().is_zero());
}

TEST(CanonicalHeight, SumMapConvergesAndMatchesOracle) {
  const auto f = sum_map();
  const auto c = comparison_constants(f, sum_map_certificate());
  HeightBudget b;
  b.tol = Rat(1, 100);
  b.cap_bits = 512;
  const auto h = canonical_height(f, pt({2, 1}), c, b);
  EXPECT_TRUE(h.certified());
  EXPECT_TRUE(h.width() <= R(0.01));
  // oracle: h(f^n P)/2^n for n <= 12 all lie within the later enclosure's reach
  ProjPoint Q = pt({2, 1});
  BigInt dn = 1;
  for (int n = 0; n <= 12; ++n) {
    if (n >= static_cast<int>(h.iterations_used)) {
      Interval est = Interval::log_of(Q.height()) / Interval::point(dn);
      // |est - hhat| <= log 2 / 2^n
      Interval slack = Interval::log_of(BigInt(2)) / Interval::point(dn);
      EXPECT_TRUE((est - slack).lo() <= h.hi());
      EXPECT_TRUE((est + slack).hi() >= h.lo());
    }
    Q = evaluate(f, Q);
    dn *= 2;
  }
  // interval nesting across tolerances
  HeightBudget fine;
  fine.tol = Rat(1, 100000);
  fine.cap_bits = 1ul << 20;
  const auto h2 = canonical_height(f, pt({2, 1}), c, fine);
  EXPECT_TRUE(h2.value.intersects(h.value));
  EXPECT_GT(h2.iterations_used, h.iterations_used);
}

TEST(CanonicalHeight, UpperOnlyIsHeuristic) {
  HeightBudget b;
  b.tol = Rat(1, 10);
  const auto h = canonical_height(sum_map(), pt({2, 1}), comparison_constants(sum_map()), b);
  EXPECT_FALSE(h.certified());
}

TEST(CanonicalHeight, OverflowAndDegreeChecks) {
  const auto f = sum_map();
  const auto c = comparison_constants(f, sum_map_certificate());
  HeightBudget b;
  b.tol = Rat(1, BigInt("1000000000000000000000000000000"));
  b.cap_bits = 64;
  try {
    canonical_height(f, pt({2, 1}), c, b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::HeightOverflow);
  }
  b.strict = false;
  EXPECT_NO_THROW(canonical_height(f, pt({2, 1}), c, b));
  MorphismPN lin({poly(1, 1, {{1, {1, 0}}}), poly(1, 1, {{1, {0, 1}}})});
  EXPECT_THROW(canonical_height(lin, pt({2, 1}), comparison_constants(lin)), PreconditionViolated);
}

TEST(CanonicalHeight, FunctionalEquationSampled) {
  // |mid(hhat(fP)) - d mid(hhat(P))| <= width(hhat(fP)) + d width(hhat(P))
  const auto f = sum_map();
  const auto c = comparison_constants(f, sum_map_certificate());
  HeightBudget b;
  b.tol = Rat(1, 1000);
  b.cap_bits = 1ul << 18;
  std::mt19937_64 rng(12);
  for (int it = 0; it < 100; ++it) {
    const ProjPoint P = random_point(rng, 1, 200);
    const auto hP = canonical_height(f, P, c, b);
    const auto hF = canonical_height(f, evaluate(f, P), c, b);
    const Interval two = Interval::point(BigInt(2));
    Interval lhs = Interval(hF.midpoint(), hF.midpoint()) - two * Interval(hP.midpoint(), hP.midpoint());
    Interval rhs = Interval(hF.width(), hF.width()) + two * Interval(hP.width(), hP.width());
    const Real dev = lhs.hi().sign() >= 0 ? lhs.hi() : (Interval::point(BigInt(0)) - lhs).hi();
    EXPECT_TRUE(dev <= rhs.hi()) << P.str();
  }
}

TEST(CanonicalHeight, BoundedByWeilHeight) {
  // |mid(hhat(P)) - h(P)| <= C/(d-1) + width, certified constants
  const auto f = sum_map();
  const auto c = comparison_constants(f, sum_map_certificate());
  HeightBudget b;
  b.tol = Rat(1, 10000);
  b.cap_bits = 1ul << 18;
  std::mt19937_64 rng(13);
  for (int it = 0; it < 100; ++it) {
    const ProjPoint P = random_point(rng, 1, 1000);
    const auto h = canonical_height(f, P, c, b);
    Interval diff = Interval(h.midpoint(), h.midpoint()) - Interval::log_of(P.height());
    Interval bound = c.c_max() + Interval(h.width(), h.width());
    EXPECT_TRUE(diff.lo() >= (Interval::point(BigInt(0)) - bound).lo() && diff.hi() <= bound.hi()) << P.str();
  }
}

TEST(CanonicalHeight, ZeroExactlyOnPreperiodic) {
  const auto f = square_map();
  const auto c = comparison_constants(f);
  for (const auto& P : points_up_to(1, 5)) {
    const auto rec = classify_preperiodic(f, P, OrbitBudget{}, c);
    const auto h = canonical_height(f, P, c);
    if (rec.is_preperiodic()) {
      EXPECT_TRUE(h.is_exact_zero()) << P.str();
    } else {
      EXPECT_TRUE(rec.is_wandering());
      EXPECT_TRUE(h.is_certainly_positive()) << P.str();
    }
  }
}

TEST(HhatMin, Examples) {
  const auto f = square_map();
  const auto c = comparison_constants(f);
  const auto r = hhat_min(f, 10, c);
  EXPECT_EQ(r.witness, pt({1, 2}));
  ASSERT_TRUE(r.value.exact);
  EXPECT_EQ(*r.value.exact, ExactLog(BigInt(2), Rat(1)));
  EXPECT_EQ(r.preperiodic, 4u);
  try {
    hhat_min(f, 1, c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EmptySearch);
  }
  const auto r3 = hhat_min(f, 3, c);
  EXPECT_EQ(*r3.value.exact, ExactLog(BigInt(2), Rat(1)));
}

TEST(HhatMin, SumMapCertified) {
  const auto f = sum_map();
  const auto c = comparison_constants(f, sum_map_certificate());
  HeightBudget b;
  b.tol = Rat(1, 1000);
  b.cap_bits = 4096;
  const auto r = hhat_min(f, 3, c, b);
  EXPECT_TRUE(r.value.certified());
  EXPECT_TRUE(r.value.lo().sign() >= 0);
}
