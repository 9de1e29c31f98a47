#include "abelat/covering.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "abelat/error.hpp"

namespace abelat {
namespace {

using Vec = std::vector<std::int64_t>;
using RVec = std::vector<Rational>;

double mu_oracle(std::int64_t n) {
  const double a = std::floor((n + 1) / 2.0);
  return std::sqrt(a * (n + 1 - a) / (n + 1));
}

RVec random_point(std::mt19937& rng, std::size_t len) {
  std::uniform_int_distribution<int> d(-60, 60);
  RVec p(len);
  Rational s = 0;
  for (std::size_t i = 0; i + 1 < len; ++i) {
    p[i] = Rational(d(rng), 12);
    p[i].canonicalize();
    s += p[i];
  }
  p.back() = -s;
  return p;
}

Rational dist_sq(const RVec& p, const Vec& x) {
  Rational s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    Rational d = p[i] - x[i];
    s += d * d;
  }
  return s;
}

// Nearest lattice point by scanning a box of radius 2 around the rounded
// target. Any closer point differs by less than 2 in every coordinate.
Rational brute_cvp(const FiniteAbelianGroup& g, const RVec& p) {
  const std::size_t len = p.size();
  Vec base(len);
  for (std::size_t i = 0; i < len; ++i) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), p[i].get_num_mpz_t(), p[i].get_den_mpz_t());
    base[i] = f.get_si();
  }
  Vec off(len, -2);
  Rational best = -1;
  while (true) {
    Vec x(len);
    std::int64_t s = 0;
    for (std::size_t i = 0; i < len; ++i) s += x[i] = base[i] + off[i];
    if (s == 0 && membership(g, x)) {
      Rational d = dist_sq(p, x);
      if (best < 0 || d < best) best = d;
    }
    std::size_t i = 0;
    while (i < len && off[i] == 3) off[i++] = -2;
    if (i == len) break;
    ++off[i];
  }
  return best;
}

TEST(RootLattice, CoveringRadius) {
  for (std::int64_t n = 1; n <= 30; ++n) EXPECT_NEAR(mu_root_lattice(n), mu_oracle(n), 1e-14);
  EXPECT_DOUBLE_EQ(mu_root_lattice(3), 1.0);
  EXPECT_THROW(mu_root_lattice(0), Error);
}

TEST(AnalyticBounds, NaturalLogarithm) {
  EXPECT_NEAR(analytic_bounds(2).thm14, 0.5 * std::sqrt(14 - 4 * std::log(2.0)), 1e-14);
  const double n = 3;
  EXPECT_NEAR(analytic_bounds(3).thm14,
              0.5 * std::sqrt(n + 4 * std::log(n - 1) + 7 - 4 * std::log(2.0) + 10 / n), 1e-14);
  EXPECT_NEAR(analytic_bounds(5).sha, mu_oracle(5) + std::sqrt(2.0), 1e-14);
  EXPECT_THROW(analytic_bounds(1), Error);
}

TEST(AnalyticBounds, PrintedTable) {
  struct Row {
    std::int64_t n;
    const char* mu;
    const char* thm;
    const char* sha;
  };
  const std::vector<Row> rows = {
      {3, "1.0000", "1.8257", "2.4142"},        {4, "1.0954", "1.9443", "2.5097"},
      {5, "1.2247", "2.0477", "2.6390"},        {6, "1.3093", "2.1408", "2.7235"},
      {20, "2.2887", "3.0210", "3.7029"},       {50, "3.5700", "4.1831", "4.9842"},
      {100, "5.0247", "5.5387", "6.4389"},      {1000, "15.8193", "16.0613", "17.2335"},
      {10000, "50.0025", "50.1026", "51.4167"}, {100000, "158.1147", "158.1536", "159.5289"},
      {1000000, "500.0002", "500.0149", "501.4145"}};
  std::vector<std::int64_t> ns;
  for (const auto& r : rows) ns.push_back(r.n);
  auto table = bounds_table(ns);
  ASSERT_EQ(table.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(format4(table[i].mu_an), rows[i].mu) << rows[i].n;
    EXPECT_EQ(format4(table[i].thm14), rows[i].thm) << rows[i].n;
    EXPECT_EQ(format4(table[i].sha), rows[i].sha) << rows[i].n;
    EXPECT_EQ(table[i].recursive_sq.has_value(), rows[i].n <= kRecursiveBoundCap);
  }
  EXPECT_EQ(format4(2.50965), "2.5097");
}

TEST(Grams, PrintedQAndR) {
  const std::vector<IntMatrix> q = {
      {{6, -3}, {-3, 6}},
      {{6, -4, 2}, {-4, 6, -4}, {2, -4, 6}},
      {{6, -4, 1, 1}, {-4, 6, -4, 1}, {1, -4, 6, -4}, {1, 1, -4, 6}},
      {{6, -4, 1, 0, 1}, {-4, 6, -4, 1, 0}, {1, -4, 6, -4, 1}, {0, 1, -4, 6, -4}, {1, 0, 1, -4, 6}},
      {{6, -4, 1, 0, 0, 1},
       {-4, 6, -4, 1, 0, 0},
       {1, -4, 6, -4, 1, 0},
       {0, 1, -4, 6, -4, 1},
       {0, 0, 1, -4, 6, -4},
       {1, 0, 0, 1, -4, 6}}};
  for (std::int64_t n = 2; n <= 6; ++n) {
    EXPECT_EQ(gram(cyclic_toeplitz_basis(n)), q[n - 2]) << n;
    EXPECT_EQ(closed_form_grams(n, n).gram, q[n - 2]);
  }
  const IntMatrix r6 = {{6, -4, 1, 0, 0, 0},  {-4, 6, -4, 1, 0, 0}, {1, -4, 6, -4, 1, 0},
                        {0, 1, -4, 6, -4, 1}, {0, 0, 1, -4, 6, -4}, {0, 0, 0, 1, -4, 6}};
  for (std::size_t k = 1; k <= 6; ++k) {
    IntMatrix rk(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) rk(i, j) = r6(i, j);
    EXPECT_EQ(banded_gram(static_cast<std::int64_t>(k), false), rk);
    EXPECT_EQ(closed_form_grams(8, static_cast<std::int64_t>(k)).gram, rk);
  }
}

TEST(Grams, ClosedFormDeterminants) {
  for (std::int64_t n = 2; n <= 64; ++n) {
    ClosedFormGram q = closed_form_grams(n, n);
    EXPECT_EQ(q.det_bareiss, Integer(n + 1) * (n + 1) * (n + 1));
    EXPECT_EQ(q.det_closed, q.det_bareiss);
  }
  for (std::int64_t k = 1; k <= 64; ++k) {
    ClosedFormGram r = closed_form_grams(65, k);
    EXPECT_EQ(r.det_closed, r.det_bareiss) << k;
    EXPECT_EQ(r.det_bareiss * 12, Integer(k + 1) * (k + 2) * (k + 2) * (k + 3));
  }
  EXPECT_THROW(closed_form_grams(1, 1), Error);
}

TEST(RecursiveBound, Z4) {
  RecursiveBoundTrace t = recursive_bound(cyclic_toeplitz_basis(3));
  ASSERT_EQ(t.r_sq.size(), 3u);
  EXPECT_EQ(t.r_sq[0], Rational(3, 2));
  EXPECT_EQ(t.r_sq[1], Rational(7, 3));
  EXPECT_EQ(t.r_sq[2], Rational(47, 15));
  EXPECT_EQ(t.v_sq, (std::vector<Integer>{6, 20, 64}));
  EXPECT_EQ(format4(std::sqrt(t.r_sq[2].get_d())), "1.7701");
}

TEST(RecursiveBound, Z2AndOverride) {
  RecursiveBoundTrace t = recursive_bound(canonical_basis(FiniteAbelianGroup({2})));
  EXPECT_EQ(t.r_sq, (std::vector<Rational>{2}));
  RecursiveBoundTrace o = recursive_bound(cyclic_toeplitz_basis(3), Rational(1));
  EXPECT_EQ(o.r_sq[2], Rational(1) + Rational(5, 6) + Rational(4, 5));
  EXPECT_THROW(recursive_bound(IntMatrix{{1, 1}, {-1, -1}}), Error);
}

TEST(Cvp, Examples) {
  LatticeBasis z2 = canonical_basis(FiniteAbelianGroup({2}));
  CvpResult r = cvp_nearest(z2, {Rational(1, 2), Rational(-1, 2)});
  EXPECT_EQ(r.dist_sq, Rational(1, 2));
  CvpResult lp = cvp_nearest(z2, {Rational(4), Rational(-4)});
  EXPECT_EQ(lp.dist_sq, 0);
  EXPECT_EQ(lp.lattice_point, (std::vector<Integer>{4, -4}));
  EXPECT_EQ(lp.coefficients, (std::vector<Integer>{2}));
  EXPECT_THROW(cvp_nearest(z2, {Rational(1), Rational(0)}), Error);
  EXPECT_THROW(cvp_nearest(z2, {Rational(0)}), Error);
}

TEST(Cvp, AgreesWithBruteForce) {
  std::mt19937 rng(17);
  for (const auto& g : abelian_groups_up_to(6)) {
    LatticeBasis b = canonical_basis(g);
    for (int t = 0; t < 25; ++t) {
      RVec p = random_point(rng, static_cast<std::size_t>(g.n() + 1));
      CvpResult r = cvp_nearest(b, p);
      EXPECT_EQ(r.dist_sq, brute_cvp(g, p)) << g.to_string();
      Vec x;
      for (const auto& v : r.lattice_point) x.push_back(v.get_si());
      EXPECT_TRUE(membership(g, x));
      EXPECT_EQ(dist_sq(p, x), r.dist_sq);
    }
  }
}

TEST(Cvp, TranslationInvariance) {
  std::mt19937 rng(23);
  for (const char* spec : {"Z5", "Z2xZ4", "Z3xZ3", "Z11"}) {
    FiniteAbelianGroup g = parse_group(spec);
    LatticeBasis b = canonical_basis(g);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (int t = 0; t < 30; ++t) {
      RVec p = random_point(rng, static_cast<std::size_t>(g.n() + 1));
      RVec q = p;
      for (std::size_t c = 0; c < b.matrix().cols(); ++c) {
        const int a = coef(rng);
        for (std::size_t r = 0; r < q.size(); ++r) q[r] += a * Rational(b.matrix()(r, c));
      }
      EXPECT_EQ(cvp_nearest(b, p).dist_sq, cvp_nearest(b, q).dist_sq) << spec;
    }
  }
}

TEST(Sha, WithinBound) {
  std::mt19937 rng(29);
  for (const auto& g : abelian_groups_up_to(12)) {
    const double bound = analytic_bounds(std::max<std::int64_t>(g.n(), 2)).sha;
    for (int t = 0; t < 100; ++t) {
      RVec p = random_point(rng, static_cast<std::size_t>(g.n() + 1));
      ShaResult s = sha_round(g, p);
      EXPECT_TRUE(membership(g, s.lattice_point));
      EXPECT_EQ(dist_sq(p, s.lattice_point), s.dist_sq);
      EXPECT_LE(s.dist, mu_root_lattice(g.n()) + std::sqrt(2.0) + 1e-12);
      EXPECT_LE(s.dist, bound + 1e-12);
      EXPECT_GE(s.dist_sq, cvp_nearest(canonical_basis(g), p).dist_sq);
    }
  }
}

TEST(DeepHole, LowerBoundProperties) {
  for (const char* spec : {"Z2", "Z3", "Z4", "Z2xZ2", "Z5", "Z7"}) {
    FiniteAbelianGroup g = parse_group(spec);
    DeepHoleEstimate e = deep_hole_estimate(g, 200, 3);
    EXPECT_EQ(cvp_nearest(canonical_basis(g), e.point).dist_sq, e.dist_sq) << spec;
    EXPECT_NEAR(e.value, std::sqrt(e.dist_sq.get_d()), 1e-12);
    EXPECT_LE(e.value, analytic_bounds(std::max<std::int64_t>(g.n(), 2)).sha + 1e-12);
    DeepHoleEstimate again = deep_hole_estimate(g, 200, 3);
    EXPECT_EQ(again.dist_sq, e.dist_sq);
    EXPECT_EQ(again.point, e.point);
  }
  EXPECT_NEAR(deep_hole_estimate(FiniteAbelianGroup({2}), 50, 1).value, std::sqrt(2.0), 1e-12);
  EXPECT_THROW(deep_hole_estimate(FiniteAbelianGroup({5}), 0, 1), Error);
}

}  // namespace
}  // namespace abelat
