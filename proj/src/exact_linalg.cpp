#include "abelat/exact_linalg.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <utility>

#include "abelat/error.hpp"

namespace abelat {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {
  if (rows == 0 || cols == 0) {
    throw Error(ErrorCode::kInvalidArgument, "matrix dimensions must be positive");
  }
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
    : IntMatrix(rows.size(), rows.size() ? rows.begin()->size() : 0) {
  std::size_t r = 0;
  for (const auto& row : rows) {
    if (row.size() != cols_) {
      throw Error(ErrorCode::kInvalidArgument, "ragged matrix initializer");
    }
    std::size_t c = 0;
    for (long v : row) (*this)(r, c++) = v;
    ++r;
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<std::vector<std::int64_t>>& columns) {
  if (columns.empty()) throw Error(ErrorCode::kInvalidArgument, "no columns");
  IntMatrix m(columns.front().size(), columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != m.rows()) {
      throw Error(ErrorCode::kInvalidArgument, "columns of unequal length");
    }
    for (std::size_t r = 0; r < m.rows(); ++r) {
      m(r, c) = static_cast<long>(columns[c][r]);
    }
  }
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntMatrix IntMatrix::leading_columns(std::size_t k) const {
  if (k == 0 || k > cols_) {
    throw Error(ErrorCode::kInvalidArgument, "column count out of range");
  }
  IntMatrix out(rows_, k);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < k; ++c) out(r, c) = (*this)(r, c);
  return out;
}

std::vector<Integer> IntMatrix::column(std::size_t c) const {
  std::vector<Integer> v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) {
    throw Error(ErrorCode::kInvalidArgument, "matrix product shape mismatch");
  }
  IntMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

namespace {

using Dense = std::vector<std::vector<Integer>>;

Dense to_dense(const IntMatrix& a) {
  Dense m(a.rows(), std::vector<Integer>(a.cols()));
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) m[r][c] = a(r, c);
  return m;
}

// One Bareiss step on rows > k, columns > k, using pivot m[k][k].
void bareiss_step(Dense& m, std::size_t k, std::size_t first_col, const Integer& prev) {
  const Integer& pivot = m[k][first_col];
  Integer tmp;
  for (std::size_t i = k + 1; i < m.size(); ++i) {
    const bool lead_zero = sgn(m[i][first_col]) == 0;
    for (std::size_t j = first_col + 1; j < m[i].size(); ++j) {
      if (lead_zero) {
        if (sgn(m[i][j]) == 0) continue;
        tmp = m[i][j] * pivot;
      } else {
        tmp = m[i][j] * pivot - m[i][first_col] * m[k][j];
      }
      mpz_divexact(m[i][j].get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
    }
    m[i][first_col] = 0;
  }
}

}  // namespace

Integer bareiss_det(const IntMatrix& a) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorCode::kInvalidArgument, "determinant of a non-square matrix");
  }
  Dense m = to_dense(a);
  const std::size_t n = a.rows();
  int sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(m[k][k]) == 0) {
      std::size_t p = k + 1;
      while (p < n && sgn(m[p][k]) == 0) ++p;
      if (p == n) return 0;
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    bareiss_step(m, k, k, prev);
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

std::vector<Integer> leading_principal_minors(const IntMatrix& a) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorCode::kInvalidArgument, "principal minors of a non-square matrix");
  }
  Dense m = to_dense(a);
  const std::size_t n = a.rows();
  std::vector<Integer> minors;
  minors.reserve(n);
  Integer prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (sgn(m[k][k]) == 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "leading principal minor " + std::to_string(k + 1) + " vanishes");
    }
    minors.push_back(m[k][k]);
    if (k + 1 < n) bareiss_step(m, k, k, prev);
    prev = m[k][k];
  }
  return minors;
}

IntMatrix gram(const IntMatrix& a) {
  IntMatrix g(a.cols(), a.cols());
  std::vector<std::size_t> support;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    support.clear();
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (sgn(a(r, c)) != 0) support.push_back(c);
    for (std::size_t i : support)
      for (std::size_t j : support)
        if (i <= j) g(i, j) += a(r, i) * a(r, j);
  }
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < i; ++j) g(i, j) = g(j, i);
  return g;
}

std::size_t integer_rank(const IntMatrix& a) {
  Dense m = to_dense(a);
  std::size_t rank = 0;
  Integer prev = 1;
  for (std::size_t c = 0; c < a.cols() && rank < a.rows(); ++c) {
    std::size_t p = rank;
    while (p < a.rows() && sgn(m[p][c]) == 0) ++p;
    if (p == a.rows()) continue;
    std::swap(m[rank], m[p]);
    bareiss_step(m, rank, c, prev);
    prev = m[rank][c];
    ++rank;
  }
  return rank;
}

IntMatrix hnf(const IntMatrix& a) {
  IntMatrix h = a;
  const std::size_t rows = h.rows();
  const std::size_t cols = h.cols();
  auto combine = [&](std::size_t ci, std::size_t cj, const Integer& s, const Integer& t,
                     const Integer& u, const Integer& v) {
    // (col_i, col_j) <- (s col_i + t col_j, u col_i + v col_j)
    for (std::size_t r = 0; r < rows; ++r) {
      Integer x = h(r, ci);
      Integer y = h(r, cj);
      h(r, ci) = s * x + t * y;
      h(r, cj) = u * x + v * y;
    }
  };

  std::size_t col = 0;
  for (std::size_t row = 0; row < rows && col < cols; ++row) {
    for (std::size_t j = col + 1; j < cols; ++j) {
      if (sgn(h(row, j)) == 0) continue;
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), h(row, col).get_mpz_t(),
                 h(row, j).get_mpz_t());
      Integer u = -h(row, j) / g;
      Integer v = h(row, col) / g;
      combine(col, j, s, t, u, v);
    }
    if (sgn(h(row, col)) == 0) continue;
    if (sgn(h(row, col)) < 0) {
      for (std::size_t r = 0; r < rows; ++r) h(r, col) = -h(r, col);
    }
    const Integer pivot = h(row, col);
    for (std::size_t k = 0; k < col; ++k) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), h(row, k).get_mpz_t(), pivot.get_mpz_t());
      if (sgn(q) == 0) continue;
      for (std::size_t r = 0; r < rows; ++r) h(r, k) -= q * h(r, col);
    }
    ++col;
  }
  return h;
}

bool in_hnf_span(const IntMatrix& h, std::vector<Integer> v) {
  if (v.size() != h.rows()) {
    throw Error(ErrorCode::kInvalidArgument, "vector length does not match HNF rows");
  }
  std::size_t row = 0;
  for (std::size_t c = 0; c < h.cols(); ++c) {
    while (row < h.rows() && sgn(h(row, c)) == 0) {
      if (sgn(v[row]) != 0) return false;
      ++row;
    }
    if (row == h.rows()) break;
    if (!mpz_divisible_p(v[row].get_mpz_t(), h(row, c).get_mpz_t())) return false;
    Integer q = v[row] / h(row, c);
    for (std::size_t r = row; r < h.rows(); ++r) v[r] -= q * h(r, c);
    ++row;
  }
  for (const Integer& x : v)
    if (sgn(x) != 0) return false;
  return true;
}

CauchyBinetResult cauchy_binet_check(const IntMatrix& a) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  if (rows < cols) {
    throw Error(ErrorCode::kInvalidArgument, "Cauchy-Binet check needs rows >= cols");
  }
  if (rows > kCauchyBinetMaxRows) {
    throw Error(ErrorCode::kCapExceeded,
                "Cauchy-Binet oracle limited to " + std::to_string(kCauchyBinetMaxRows) +
                    " rows");
  }
  CauchyBinetResult out;
  out.lhs = bareiss_det(gram(a));
  out.rhs = 0;
  std::vector<std::size_t> pick(cols);
  for (std::size_t i = 0; i < cols; ++i) pick[i] = i;
  IntMatrix minor(cols, cols);
  while (true) {
    for (std::size_t i = 0; i < cols; ++i)
      for (std::size_t j = 0; j < cols; ++j) minor(i, j) = a(pick[i], j);
    Integer d = bareiss_det(minor);
    out.rhs += d * d;
    // next combination in lexicographic order
    std::size_t i = cols;
    while (i > 0 && pick[i - 1] == rows - cols + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < cols; ++j) pick[j] = pick[j - 1] + 1;
  }
  out.equal = out.lhs == out.rhs;
  return out;
}

std::vector<Rational> solve_rational(const IntMatrix& a, const std::vector<Rational>& b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) {
    throw Error(ErrorCode::kInvalidArgument, "solve needs a square system");
  }
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = a(i, j);
    m[i][n] = b[i];
  }
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && sgn(m[p][k]) == 0) ++p;
    if (p == n) throw Error(ErrorCode::kInvalidArgument, "singular system");
    std::swap(m[k], m[p]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || sgn(m[i][k]) == 0) continue;
      Rational f = m[i][k] / m[k][k];
      for (std::size_t j = k; j <= n; ++j) m[i][j] -= f * m[k][j];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = m[i][n] / m[i][i];
  return x;
}

void write_matrix(std::ostream& os, const IntMatrix& a) {
  os << a.rows() << ' ' << a.cols() << '\n';
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
      if (c) os << ' ';
      os << a(r, c);
    }
    os << '\n';
  }
}

IntMatrix read_matrix(std::istream& is) {
  long long rows = 0;
  long long cols = 0;
  if (!(is >> rows >> cols) || rows <= 0 || cols <= 0) {
    throw Error(ErrorCode::kParse, "matrix header must be 'rows cols' with positive sizes");
  }
  IntMatrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  std::string token;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (!(is >> token) || m(r, c).set_str(token, 10) != 0) {
        throw Error(ErrorCode::kParse, "matrix entry (" + std::to_string(r) + ", " +
                                           std::to_string(c) + ") missing or malformed");
      }
    }
  if (is >> token) throw Error(ErrorCode::kParse, "trailing data after matrix");
  return m;
}

std::string to_string(const IntMatrix& a) {
  std::ostringstream os;
  write_matrix(os, a);
  return os.str();
}

}  // namespace abelat
