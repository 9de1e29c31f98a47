#include "abelat/exact_linalg.hpp"

#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "abelat/error.hpp"

namespace abelat {
namespace {

// Laplace expansion along the first row: the independent oracle.
Integer cofactor_det(const IntMatrix& a) {
  const std::size_t n = a.rows();
  if (n == 1) return a(0, 0);
  Integer det = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (sgn(a(0, c)) == 0) continue;
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r) {
      std::size_t k = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != c) minor(r - 1, k++) = a(r, j);
    }
    Integer term = a(0, c) * cofactor_det(minor);
    det += (c % 2 == 0) ? term : Integer(-term);
  }
  return det;
}

IntMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  IntMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = d(rng);
  return m;
}

const IntMatrix kQ4{{6, -4, 1, 1}, {-4, 6, -4, 1}, {1, -4, 6, -4}, {1, 1, -4, 6}};
const IntMatrix kR4{{6, -4, 1, 0}, {-4, 6, -4, 1}, {1, -4, 6, -4}, {0, 1, -4, 6}};
const IntMatrix kB32{{-2, 1}, {1, -2}, {1, 1}};
const IntMatrix kB43{{-2, 1, 0}, {1, -2, 1}, {0, 1, -2}, {1, 0, 1}};

TEST(Bareiss, PrintedGrams) {
  EXPECT_EQ(bareiss_det(kQ4), 125);
  EXPECT_EQ(bareiss_det(kR4), 105);
  EXPECT_EQ(bareiss_det(IntMatrix::identity(5)), 1);
}

TEST(Bareiss, NeedsPivoting) {
  EXPECT_EQ(bareiss_det(IntMatrix{{0, 1}, {1, 0}}), -1);
  EXPECT_EQ(bareiss_det(IntMatrix{{0, 0, 2}, {0, 3, 0}, {5, 0, 0}}), -30);
  EXPECT_EQ(bareiss_det(IntMatrix{{1, 2}, {2, 4}}), 0);
}

TEST(Bareiss, RejectsNonSquare) {
  EXPECT_THROW(bareiss_det(kB32), Error);
}

TEST(Bareiss, AgreesWithCofactorExpansion) {
  std::mt19937 rng(20241014);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 5);
    // Sparse-ish entries exercise the zero-pivot row swaps.
    IntMatrix a = random_matrix(rng, n, n, trial % 2 ? -9 : -1, trial % 2 ? 9 : 1);
    EXPECT_EQ(bareiss_det(a), cofactor_det(a)) << to_string(a);
  }
}

TEST(Bareiss, LargeEntriesStayExact) {
  IntMatrix a{{1, 0}, {0, 1}};
  a(0, 0) = Integer("123456789012345678901234567890");
  a(1, 1) = Integer("987654321098765432109876543210");
  EXPECT_EQ(bareiss_det(a), a(0, 0) * a(1, 1));
}

TEST(LeadingMinors, MatchPrefixDeterminants) {
  std::vector<Integer> m = leading_principal_minors(kQ4);
  ASSERT_EQ(m.size(), 4u);
  EXPECT_EQ(m[0], 6);
  EXPECT_EQ(m[1], 20);
  EXPECT_EQ(m[2], 50);
  EXPECT_EQ(m[3], 125);
  EXPECT_THROW(leading_principal_minors(IntMatrix{{0, 1}, {1, 0}}), Error);
}

TEST(Gram, Examples) {
  EXPECT_EQ(gram(kB32), (IntMatrix{{6, -3}, {-3, 6}}));
  EXPECT_EQ(gram(IntMatrix{{-2}, {1}, {0}, {1}}), IntMatrix{{6}});
  EXPECT_EQ(gram(IntMatrix{{0}, {0}}), IntMatrix{{0}});
}

TEST(Gram, SymmetricPositiveSemidefinite) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    IntMatrix a = random_matrix(rng, 6, 1 + static_cast<std::size_t>(trial % 5), -3, 3);
    IntMatrix g = gram(a);
    EXPECT_EQ(g, g.transpose());
    for (std::size_t k = 1; k <= g.rows(); ++k) {
      IntMatrix lead(k, k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) lead(i, j) = g(i, j);
      EXPECT_GE(sgn(bareiss_det(lead)), 0);
    }
  }
}

TEST(Rank, Examples) {
  // S(Z4): ±(1,1,-1,-1), ±(-1,1,1,-1).
  IntMatrix s4{{1, -1, -1, 1}, {1, -1, 1, -1}, {-1, 1, 1, -1}, {-1, 1, -1, 1}};
  EXPECT_EQ(integer_rank(s4), 2u);
  EXPECT_EQ(integer_rank(IntMatrix::identity(6)), 6u);
  // S(Z3): ±(-2,1,1), ±(1,-2,1), ±(1,1,-2).
  IntMatrix s3{{-2, 2, 1, -1, 1, -1}, {1, -1, -2, 2, 1, -1}, {1, -1, 1, -1, -2, 2}};
  EXPECT_EQ(integer_rank(s3), 2u);
}

TEST(Hnf, Examples) {
  EXPECT_EQ(hnf(IntMatrix{{2, 0}, {0, 4}}), (IntMatrix{{2, 0}, {0, 4}}));
  EXPECT_EQ(hnf(IntMatrix{{4, 2}, {0, 0}}), (IntMatrix{{2, 0}, {0, 0}}));
}

TEST(Hnf, CyclicBasisHasIndexFour) {
  // Rows 0..2 of B_{4,3} determine it; their HNF pivots multiply to the
  // index of the lattice in Z^3, which is 4.
  IntMatrix top(3, 3);
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) top(r, c) = kB43(r, c);
  IntMatrix h = hnf(top);
  Integer prod = 1;
  for (std::size_t i = 0; i < 3; ++i) prod *= h(i, i);
  EXPECT_EQ(prod, 4);
  EXPECT_EQ(abs(bareiss_det(top)), 4);
}

// Span equality in both directions: the property that makes hnf usable as
// a sublattice oracle.
TEST(Hnf, SpansTheSameLattice) {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t rows = 2 + static_cast<std::size_t>(trial % 4);
    const std::size_t cols = 1 + static_cast<std::size_t>(trial % 5);
    IntMatrix a = random_matrix(rng, rows, cols, -6, 6);
    IntMatrix h = hnf(a);
    ASSERT_EQ(h.rows(), rows);
    const std::size_t rank = integer_rank(a);
    EXPECT_EQ(integer_rank(h), rank);
    for (std::size_t c = 0; c < a.cols(); ++c) EXPECT_TRUE(in_hnf_span(h, a.column(c)));
    // Appending h's columns to a must not enlarge the lattice: the
    // canonical form of [a | h] equals that of a.
    IntMatrix both(rows, a.cols() + h.cols());
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < a.cols(); ++c) both(r, c) = a(r, c);
      for (std::size_t c = 0; c < h.cols(); ++c) both(r, a.cols() + c) = h(r, c);
    }
    IntMatrix hb = hnf(both);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < rank; ++c) EXPECT_EQ(hb(r, c), h(r, c));
    for (std::size_t c = rank; c < h.cols(); ++c)
      for (std::size_t r = 0; r < rows; ++r) EXPECT_EQ(sgn(h(r, c)), 0);
  }
}

TEST(Hnf, DetectsNonMembers) {
  IntMatrix h = hnf(IntMatrix{{2, 0}, {0, 2}});
  EXPECT_TRUE(in_hnf_span(h, {Integer(4), Integer(-2)}));
  EXPECT_FALSE(in_hnf_span(h, {Integer(1), Integer(0)}));
  EXPECT_FALSE(in_hnf_span(h, {Integer(2), Integer(3)}));
}

TEST(CauchyBinet, Examples) {
  CauchyBinetResult r = cauchy_binet_check(kB32);
  EXPECT_EQ(r.lhs, 27);
  EXPECT_EQ(r.rhs, 27);
  EXPECT_TRUE(r.equal);
  r = cauchy_binet_check(kB43);
  EXPECT_EQ(r.lhs, 64);
  EXPECT_TRUE(r.equal);
  IntMatrix sq{{2, 1}, {7, 3}};
  r = cauchy_binet_check(sq);
  EXPECT_EQ(r.rhs, 1);
  EXPECT_TRUE(r.equal);
}

TEST(CauchyBinet, TwoHundredRandomMatrices) {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> rows_d(1, 7);
  for (int trial = 0; trial < 200; ++trial) {
    const int rows = rows_d(rng);
    std::uniform_int_distribution<int> cols_d(1, rows);
    const int cols = cols_d(rng);
    IntMatrix a = random_matrix(rng, static_cast<std::size_t>(rows), static_cast<std::size_t>(cols), -3, 3);
    EXPECT_TRUE(cauchy_binet_check(a).equal) << to_string(a);
  }
}

TEST(CauchyBinet, Guards) {
  EXPECT_THROW(cauchy_binet_check(IntMatrix(2, 3)), Error);
  try {
    cauchy_binet_check(IntMatrix(17, 2));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCapExceeded);
  }
}

TEST(SolveRational, RecoversSolution) {
  IntMatrix a{{2, 1}, {1, 3}};
  std::vector<Rational> x = solve_rational(a, {Rational(1), Rational(2)});
  EXPECT_EQ(x[0], Rational(1, 5));
  EXPECT_EQ(x[1], Rational(3, 5));
}

TEST(MatrixText, RoundTrip) {
  std::stringstream ss;
  write_matrix(ss, kB43);
  EXPECT_EQ(ss.str().substr(0, 4), "4 3\n");
  EXPECT_EQ(read_matrix(ss), kB43);
}

TEST(MatrixText, RejectsMalformed) {
  for (const char* text : {"", "2", "2 2\n1 2\n3", "2 2\n1 x\n3 4", "0 3\n"}) {
    std::stringstream ss(text);
    try {
      read_matrix(ss);
      ADD_FAILURE() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kParse) << text;
    }
  }
}

TEST(IntMatrix, Basics) {
  EXPECT_THROW(IntMatrix(0, 3), Error);
  IntMatrix m = IntMatrix::from_columns({{1, 2, 3}, {4, 5, 6}});
  EXPECT_EQ(m, (IntMatrix{{1, 4}, {2, 5}, {3, 6}}));
  EXPECT_EQ(m.leading_columns(1), (IntMatrix{{1}, {2}, {3}}));
  EXPECT_EQ(m.transpose() * m, gram(m));
}

}  // namespace
}  // namespace abelat
