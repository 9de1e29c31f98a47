#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <vector>

namespace abelat {

using Integer = mpz_class;
// Always kept canonical: positive denominator, reduced.
using Rational = mpq_class;

// Dense row-major matrix of arbitrary-precision integers, rows, cols >= 1.
class IntMatrix {
 public:
  IntMatrix(std::size_t rows, std::size_t cols);
  // Row-major nested initializer, handy for printed matrices in tests.
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  // Builds a matrix whose columns are the given integer vectors.
  static IntMatrix from_columns(const std::vector<std::vector<std::int64_t>>& columns);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  IntMatrix transpose() const;
  // First k columns.
  IntMatrix leading_columns(std::size_t k) const;
  std::vector<Integer> column(std::size_t c) const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Integer> data_;
};

// Fraction-free (Bareiss) elimination with row swaps on zero pivots.
Integer bareiss_det(const IntMatrix& a);

// det of each leading k x k block, k = 1..n, from a single Bareiss pass
// without pivoting. Every leading block must be nonsingular (as for the Gram
// matrix of independent vectors); a vanishing one throws kInvalidArgument.
std::vector<Integer> leading_principal_minors(const IntMatrix& a);

// AᵀA. Zero entries are skipped, so banded inputs stay cheap.
IntMatrix gram(const IntMatrix& a);

// Rank over Q.
std::size_t integer_rank(const IntMatrix& a);

// Column-style Hermite normal form of the integer column span. The first
// rank() columns are lower-echelon with positive pivots and entries left of
// each pivot reduced into [0, pivot); the remaining columns are zero.
IntMatrix hnf(const IntMatrix& a);

// Whether v lies in the integer column span of an HNF produced by hnf().
bool in_hnf_span(const IntMatrix& h, std::vector<Integer> v);

struct CauchyBinetResult {
  Integer lhs;  // det(AᵀA)
  Integer rhs;  // sum of squared maximal minors
  bool equal;
};

inline constexpr std::size_t kCauchyBinetMaxRows = 16;

// Test oracle: enumerates all C(rows, cols) row subsets. rows must be
// >= cols and <= kCauchyBinetMaxRows.
CauchyBinetResult cauchy_binet_check(const IntMatrix& a);

// Exact solve of a nonsingular square system over Q.
std::vector<Rational> solve_rational(const IntMatrix& a, const std::vector<Rational>& b);

// Matrix text format: "rows cols" on the first line, then one line per row.
void write_matrix(std::ostream& os, const IntMatrix& a);
IntMatrix read_matrix(std::istream& is);

std::string to_string(const IntMatrix& a);

}  // namespace abelat
