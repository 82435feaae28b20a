// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "support.hpp"

using namespace orbitlab;
using namespace testing_support;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

#define CHECK(cond, msg)          \
  do {                            \
    if (!(cond)) return {false, msg}; \
  } while (0)

Outcome height_laws() {
  const auto f = square_map();
  const auto c = comparison_constants(f);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 100; ++i) {
    const auto P = random_point(rng, 1, 1000000);
    const auto h = canonical_height(f, P, c);
    if (P.height() == 1 || (P.coords()[0] == 0 || P.coords()[1] == 0)) {
      CHECK(h.is_exact_zero(), "preperiodic point " + P.str() + " has nonzero height");
      continue;
    }
    CHECK(h.exact && *h.exact == ExactLog(P.height(), 1), "hhat != h at " + P.str());
    const auto hf = canonical_height(f, evaluate(f, P), c);
    CHECK(hf.exact && *hf.exact == h.exact->scaled(2), "hhat(fP) != 2 hhat(P) at " + P.str());
  }
  for (const auto& P : {pt({0, 1}), pt({1, 0}), pt({1, 1}), pt({1, -1})})
    CHECK(canonical_height(f, P, c).is_exact_zero(), "hhat != 0 at " + P.str());
  return {true, "100 random points, exact"};
}

Outcome constant_soundness() {
  const auto f = sum_map();
  const Interval log2 = Interval::log_of(BigInt(2));
  std::mt19937_64 rng(2);
  std::size_t equal = 0;
  for (int i = 0; i < 1001; ++i) {
    // (1,1) attains the bound with equality
    const auto P = i == 0 ? pt({1, 1}) : random_point(rng, 1, 1000000);
    const BigInt H = P.height(), Hf = evaluate(f, P).height();
    // exact form: H(fP) <= 2 H(P)^2
    CHECK(Hf <= 2 * H * H, "bound fails at " + P.str());
    const Interval lhs = Interval::log_of(Hf);
    const Interval rhs = Interval::point(BigInt(2)) * Interval::log_of(H) + log2;
    CHECK(!certainly_greater(lhs, rhs), "enclosure contradicts bound at " + P.str());
    if (Hf == 2 * H * H) ++equal;
  }
  return {true, "1000 random points and (1,1), " + std::to_string(equal) + " with equality"};
}

Outcome minimal_height() {
  const auto f = square_map();
  const auto r = hhat_min(f, 50, comparison_constants(f));
  CHECK(r.value.exact && *r.value.exact == ExactLog(BigInt(2), 1), "value " + r.value.str());
  CHECK(r.witness == pt({1, 2}), "witness " + r.witness.str());
  return {true, "log 2 at (1,2)"};
}

Outcome equivalence_relation() {
  const auto f = square_map();
  const auto c = comparison_constants(f);
  const auto pts = points_up_to(1, 3);
  CHECK(pts.size() == 16, "expected 16 points, got " + std::to_string(pts.size()));
  const std::size_t n = pts.size();
  std::vector<std::vector<int>> kind(n, std::vector<int>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const auto v = decide_grand_equiv(f, pts[a], pts[b], c);
      kind[a][b] = static_cast<int>(v.index());
      if (const auto* e = std::get_if<Equivalent>(&v))
        CHECK(iterate(f, pts[a], e->i) == iterate(f, pts[b], e->j), "witness fails for " + pts[a].str() + " " + pts[b].str());
    }
  }
  std::size_t classes = 0;
  for (std::size_t a = 0; a < n; ++a) {
    CHECK(kind[a][a] == 0, "not reflexive at " + pts[a].str());
    bool first = true;
    for (std::size_t b = 0; b < a; ++b) first = first && kind[a][b] != 0;
    classes += first;
    for (std::size_t b = 0; b < n; ++b) {
      CHECK(kind[a][b] == kind[b][a], "asymmetric at " + pts[a].str() + " " + pts[b].str());
      for (std::size_t e = 0; e < n; ++e)
        if (kind[a][b] == 0 && kind[b][e] == 0)
          CHECK(kind[a][e] != 1, "transitivity violated at " + pts[a].str() + " " + pts[e].str());
    }
  }
  return {true, "256 ordered pairs, " + std::to_string(classes) + " classes"};
}

Outcome avoiding_set() {
  const auto f = square_map();
  const auto c = comparison_constants(f);
  const std::vector<OrbitMinimum> minima{{canonical_height(f, pt({2, 1}), c), "(2,1)"}};
  const auto a = build_avoiding_set(f, minima, 4, Rat(20), 3, c);
  std::set<BigInt> orbit;
  const BigInt cap = height_cap_from_bits(256);
  for (ProjPoint Q = pt({2, 1}); Q.height() <= cap; Q = evaluate(f, Q)) orbit.insert(Q.height());
  CHECK(orbit.size() == 9, "orbit expansion has " + std::to_string(orbit.size()) + " heights");
  for (const auto& P : a.points) CHECK(!orbit.count(P.height()), "point " + P.str() + " meets the orbit");
  CHECK(a.density.D == 3 && a.density.dense, "not dense at D=3");
  return {true, std::to_string(a.points.size()) + " points, rank " + std::to_string(a.density.rank)};
}

Outcome gap_growth() {
  const auto rows = gap_growth_scan({Rat(1)}, Rat(1, 2), Rat(2), {Rat(20), Rat(100), Rat(1000), Rat(10000)});
  const Real threshold = Real::from(Rat(3, 10), MPFR_RNDU);
  std::string detail;
  for (const auto& r : rows) {
    CHECK(r.normalized, "degenerate cover at T=" + r.T.get_str());
    CHECK(r.normalized->lo() >= threshold, "normalized gap below 0.3 at T=" + r.T.get_str());
    detail += (detail.empty() ? "" : " ") + r.normalized->lo().str(4);
  }
  return {true, "normalized " + detail};
}

Outcome weight_injectivity() {
  for (std::size_t N = 1; N <= 4; ++N)
    for (unsigned d = 1; d <= 6; ++d)
      CHECK(monomial_weight_injectivity(WeightVector::standard(N, d)).injective,
            "collision at N=" + std::to_string(N) + " d=" + std::to_string(d));
  CHECK(!monomial_weight_injectivity(WeightVector{{1, 1}, 2}).injective, "control r=(1,1) is injective");
  return {true, "N<=4, d<=6 injective; control collides"};
}

Outcome valuation_identity() {
  Matrix<Rat> m(2, 2);
  m(0, 0) = 2, m(0, 1) = 1, m(1, 1) = 5;
  const auto t = triangular_orbit_valuations(TriangularMap(m), 3, {2, 1}, 50);
  CHECK(t.rows.size() == 51, "row count " + std::to_string(t.rows.size()));
  for (const auto& row : t.rows) CHECK(row.size() == 2 && row[0] == -2L && row[1] == -1L, "row differs from (-2,-1)");
  CHECK(t.violations.empty(), "violations recorded");
  m(0, 0) = 3;
  try {
    triangular_orbit_valuations(TriangularMap(m), 3, {2, 1}, 50);
    return {false, "lambda=3 accepted"};
  } catch (const PreconditionViolated& e) {
    CHECK(e.hypothesis() == "eigenvalues are p-units", "wrong hypothesis " + e.hypothesis());
  }
  return {true, "rows 0..50 equal (-2,-1); lambda=3 rejected"};
}

long naive_projective_count(long T) {
  long c = 0;
  for (long x = -T; x <= T; ++x)
    for (long y = -T; y <= T; ++y)
      if (std::gcd(x, y) == 1) ++c;
  return c / 2;
}

Outcome counting() {
  for (long T : {1L, 2L, 3L, 10L, 100L}) {
    const BigInt got = count_projective_points(1, T);
    CHECK(got == naive_projective_count(T), "count mismatch at T=" + std::to_string(T));
  }
  CHECK(count_projective_points(1, 3) == 16, "T=3 count");
  const auto line = poly(2, 1, {{1, {1, 0, 0}}, {1, {0, 1, 0}}, {1, {0, 0, 1}}});
  CHECK(count_hypersurface_points(line, 1) == 3 && count_hypersurface_points(line, 2) == 6, "hypersurface counts");
  const auto f = square_map();
  const auto r = count_orbit(f, pt({2, 1}), BigInt(100), comparison_constants(f));
  CHECK(r.count == 3, "orbit count " + r.count.get_str());
  CHECK(r.paper_bound && Real::from(BigInt(3), MPFR_RNDU) <= r.paper_bound->lo(), "orbit bound not certified");
  CHECK(r.paper_bound->lo() >= Real::from(3.72) && r.paper_bound->hi() <= Real::from(3.74), "bound off 3.73");
  return {true, "T=100: " + count_projective_points(1, 100).get_str() + " points; orbit 3 <= " + r.paper_bound->lo().str(4)};
}

Outcome greedy() {
  const auto f = square_map();
  const auto rs = greedy_representatives(f, 2, 1, comparison_constants(f));
  const std::vector<ProjPoint> want{pt({0, 1}), pt({1, 0}), pt({1, 1}), pt({1, 2}), pt({2, 1})};
  CHECK(rs.reps == want, "representatives differ");
  bool merged = false;
  for (const auto& m : rs.merged) merged = merged || m.point == pt({1, -1});
  CHECK(merged, "(1,-1) not recorded as merged");
  CHECK(rs.density.D == 1 && rs.density.dense, "not dense at D=1");
  return {true, "5 representatives, (1,-1) merged"};
}

Outcome linear_density() {
  const auto a = linear_orbit_density(TriangularMap::diagonal({2, 3, 1}), pt({1, 1, 1}), 12, 2);
  CHECK(a.density.rank == 6 && a.density.n_monomials == 6 && a.density.dense, "forward orbit not dense at D=2");
  const auto b = backward_branch(TriangularMap::diagonal({2, 1}), pt({1, 1}), 5, 3);
  CHECK(b.distinct, "backward branch repeats");
  CHECK(b.density.dense && b.density.D == 3, "backward branch not dense at D=3");
  return {true, "rank 6 at D=2; backward rank " + std::to_string(b.density.rank)};
}

Outcome abelian() {
  const auto v = gcd_distinctness(4, 1, {3, 5, 7});
  CHECK(v.size() == 3, "expected 3 pairs");
  for (const auto& p : v) {
    CHECK(p.distinct, "pair not distinct");
    const BigInt a = p.m1 * p.m1, b = p.m2 * p.m2;
    for (unsigned long n1 = 0; n1 <= 40; ++n1)
      for (unsigned long n2 = 0; n2 <= 40; ++n2)
        CHECK(ipow(BigInt(4), n1) * a != ipow(BigInt(4), n2) * b, "brute force finds a collision");
  }
  const auto Q0 = GroupPoint::of({1, 0});
  const auto reps = lattice_representatives(Q0, GroupPoint::of({0, 1}), 5);
  const auto f = AffineGroupMap::translation_by(Q0);
  CHECK(reps.size() == 5, "representative count");
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::size_t j = i + 1; j < reps.size(); ++j)
      CHECK(!translation_orbit_equiv(f, reps[i], reps[j]).equivalent, "representatives share an orbit");
  return {true, "3 pairs distinct; 5 representatives"};
}

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "canonical-height laws", 1, height_laws},
      {2, "comparison-constant soundness", 2, constant_soundness},
      {3, "minimal height", 5, minimal_height},
      {4, "grand-orbit equivalence relation", 5, equivalence_relation},
      {5, "avoiding set", 5, avoiding_set},
      {6, "interval-gap growth", 1, gap_growth},
      {7, "weight injectivity", 2, weight_injectivity},
      {8, "valuation identity", 1, valuation_identity},
      {9, "counting", 30, counting},
      {10, "greedy representatives", 2, greedy},
      {11, "linear density and backward branch", 2, linear_density},
      {12, "abelian model", 1, abelian},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.ok && s > c.limit_s) o = {false, o.detail + "; over time limit"};
    failed += !o.ok;
    std::printf("%s %2d %-36s %7.3fs (limit %gs)  %s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, s, c.limit_s, o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
