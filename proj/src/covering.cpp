#include "abelat/covering.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>

#include "abelat/basis_builder.hpp"
#include "abelat/error.hpp"
#include "rng.hpp"

namespace abelat {

double mu_root_lattice(std::int64_t n) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "mu(A_n) needs n >= 1");
  const double m = static_cast<double>(n + 1);
  return n % 2 == 1 ? 0.5 * std::sqrt(m) : 0.5 * std::sqrt(m - 1.0 / m);
}

AnalyticBounds analytic_bounds(std::int64_t n) {
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "analytic bounds need n >= 2");
  const double x = static_cast<double>(n);
  AnalyticBounds b;
  b.mu_an = mu_root_lattice(n);
  b.thm14 = 0.5 * std::sqrt(x + 4.0 * std::log(x - 1.0) + 7.0 - 4.0 * std::log(2.0) + 10.0 / x);
  b.sha = b.mu_an + std::sqrt(2.0);
  return b;
}

std::string format4(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  return buf;
}

IntMatrix cyclic_toeplitz_basis(std::int64_t n) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "cyclic basis needs n >= 1");
  const auto k = static_cast<std::size_t>(n);
  IntMatrix b(k + 1, k);
  for (std::size_t j = 0; j < k; ++j) {
    b(j, j) = -2;
    if (j > 0) b(j - 1, j) = 1;
    if (j + 1 < k) b(j + 1, j) = 1;
    Integer sum = 0;
    for (std::size_t r = 0; r < k; ++r) sum += b(r, j);
    b(k, j) = -sum;
  }
  return b;
}

IntMatrix banded_gram(std::int64_t k, bool wrap) {
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "banded Gram needs k >= 1");
  const auto s = static_cast<std::size_t>(k);
  IntMatrix g(s, s);
  for (std::size_t i = 0; i < s; ++i) {
    g(i, i) = 6;
    if (i + 1 < s) g(i, i + 1) = g(i + 1, i) = -4;
    if (i + 2 < s) g(i, i + 2) = g(i + 2, i) = 1;
  }
  if (wrap) {
    g(0, s - 1) += 1;
    g(s - 1, 0) += 1;
  }
  return g;
}

ClosedFormGram closed_form_grams(std::int64_t n, std::int64_t k) {
  if (n < 2 || k < 1 || k > n) {
    throw Error(ErrorCode::kInvalidArgument, "closed-form Grams need n >= 2 and 1 <= k <= n");
  }
  IntMatrix g = gram(cyclic_toeplitz_basis(n).leading_columns(static_cast<std::size_t>(k)));
  if (!(g == banded_gram(k, k == n))) {
    throw Error(ErrorCode::kVerificationFailed, "Gram of the cyclic basis is not banded");
  }
  Integer closed;
  if (k == n) {
    closed = Integer(n + 1) * (n + 1) * (n + 1);
  } else {
    closed = Integer(k + 1) * (k + 2) * (k + 2) * (k + 3) / 12;
  }
  Integer det = bareiss_det(g);
  return {std::move(g), std::move(closed), std::move(det)};
}

RecursiveBoundTrace recursive_bound(const IntMatrix& basis, std::optional<Rational> r1_sq) {
  RecursiveBoundTrace t;
  try {
    t.v_sq = leading_principal_minors(gram(basis));
  } catch (const Error& e) {
    throw Error(ErrorCode::kInvalidArgument, "degenerate column prefix: some V_k vanishes");
  }
  t.r_sq.reserve(t.v_sq.size());
  Rational first = r1_sq ? *r1_sq : Rational(t.v_sq[0], 4);
  first.canonicalize();
  t.r_sq.push_back(first);
  for (std::size_t k = 1; k < t.v_sq.size(); ++k) {
    Rational step(t.v_sq[k], 4 * t.v_sq[k - 1]);
    step.canonicalize();
    t.r_sq.push_back(t.r_sq.back() + step);
  }
  return t;
}

RecursiveBoundTrace recursive_bound(const LatticeBasis& basis, std::optional<Rational> r1_sq) {
  return recursive_bound(basis.matrix(), std::move(r1_sq));
}

namespace {

Integer round_half_up(const Rational& x) {
  Integer num = 2 * x.get_num() + x.get_den();
  Integer den = 2 * x.get_den();
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

std::int64_t round_half_up(double x) { return static_cast<std::int64_t>(std::floor(x + 0.5)); }

std::int64_t to_i64(const Integer& x) { return x.get_si(); }
std::int64_t to_i64(std::int64_t x) { return x; }


// Schnorr-Euchner enumeration on the Gram form G = Uᵀ D U of a basis, in
// either exact (Rational) or floating (double) arithmetic.
template <class T>
class Enumerator {
 public:
  explicit Enumerator(const std::vector<std::vector<T>>& gram) : n_(gram.size()), u_(n_, std::vector<T>(n_, T(0))), d_(n_) {
    for (std::size_t i = 0; i < n_; ++i) {
      T di = gram[i][i];
      for (std::size_t k = 0; k < i; ++k) di -= u_[k][i] * u_[k][i] * d_[k];
      d_[i] = di;
      u_[i][i] = 1;
      for (std::size_t j = i + 1; j < n_; ++j) {
        T v = gram[i][j];
        for (std::size_t k = 0; k < i; ++k) v -= u_[k][i] * u_[k][j] * d_[k];
        u_[i][j] = v / di;
      }
    }
  }

  // Solves G c = rhs.
  std::vector<T> solve(std::vector<T> rhs) const {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t k = 0; k < i; ++k) rhs[i] -= u_[k][i] * rhs[k];
    for (std::size_t i = 0; i < n_; ++i) rhs[i] /= d_[i];
    for (std::size_t i = n_; i-- > 0;)
      for (std::size_t j = i + 1; j < n_; ++j) rhs[i] -= u_[i][j] * rhs[j];
    return rhs;
  }

  // Minimises (c - center)ᵀ G (c - center) over integer c.
  std::vector<std::int64_t> nearest(const std::vector<T>& center, T& best) const {
    std::vector<std::int64_t> c(n_), best_c(n_);
    // Babai nearest plane for the starting radius.
    T q(0);
    for (std::size_t i = n_; i-- > 0;) {
      T ctr = level_center(center, c, i);
      c[i] = to_i64(round_half_up(ctr));
      T diff = T(c[i]) - ctr;
      q += d_[i] * diff * diff;
    }
    best = q;
    best_c = c;
    auto leaf = [&](T value) {
      if (value < best) {
        best = value;
        best_c = c;
      }
    };
    auto bound = [&]() { return best; };
    search(center, c, n_ - 1, T(0), bound, leaf);
    return best_c;
  }

  // Every integer c with form value <= radius.
  std::vector<std::vector<std::int64_t>> within(const std::vector<T>& center, T radius) const {
    std::vector<std::int64_t> c(n_);
    std::vector<std::vector<std::int64_t>> out;
    auto leaf = [&](T) { out.push_back(c); };
    auto bound = [&]() { return radius; };
    search(center, c, n_ - 1, T(0), bound, leaf);
    return out;
  }

 private:
  T level_center(const std::vector<T>& center, const std::vector<std::int64_t>& c,
                 std::size_t i) const {
    T ctr = center[i];
    for (std::size_t j = i + 1; j < n_; ++j) ctr -= u_[i][j] * (T(c[j]) - center[j]);
    return ctr;
  }

  template <class Bound, class Leaf>
  void search(const std::vector<T>& center, std::vector<std::int64_t>& c, std::size_t i,
              T partial, const Bound& bound, const Leaf& leaf) const {
    const T ctr = level_center(center, c, i);
    const std::int64_t r = to_i64(round_half_up(ctr));
    auto visit = [&](std::int64_t x) {
      T diff = T(x) - ctr;
      T value = partial + d_[i] * diff * diff;
      if (value > bound()) return false;
      c[i] = x;
      if (i == 0) leaf(value);
      else search(center, c, i - 1, value, bound, leaf);
      return true;
    };
    if (!visit(r)) return;
    bool up = true;
    bool down = true;
    for (std::int64_t step = 1; up || down; ++step) {
      if (up) up = visit(r + step);
      if (down) down = visit(r - step);
    }
  }

  std::size_t n_;
  std::vector<std::vector<T>> u_;
  std::vector<T> d_;
};

template <class T>
std::vector<std::vector<T>> gram_as(const IntMatrix& b) {
  IntMatrix g = gram(b);
  std::vector<std::vector<T>> out(g.rows(), std::vector<T>(g.cols()));
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) {
      if constexpr (std::is_same_v<T, double>) out[i][j] = g(i, j).get_d();
      else out[i][j] = T(g(i, j));
    }
  return out;
}

void require_zero_sum(const std::vector<Rational>& point, std::size_t len) {
  if (point.size() != len) {
    throw Error(ErrorCode::kInvalidArgument,
                "point must have " + std::to_string(len) + " coordinates");
  }
  Rational sum = 0;
  for (const auto& x : point) sum += x;
  if (sgn(sum) != 0) throw Error(ErrorCode::kInvalidArgument, "point is not in span A_n");
}

// Floating closest-vector oracle for a fixed basis, used by the estimator.
class FloatCvp {
 public:
  explicit FloatCvp(const IntMatrix& b)
      : rows_(b.rows()), cols_(b.cols()), b_(rows_ * cols_), enumerator_(gram_as<double>(b)) {
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) b_[r * cols_ + c] = b(r, c).get_d();
  }

  std::size_t dim() const { return rows_; }

  std::vector<double> point(const std::vector<std::int64_t>& coeffs) const {
    std::vector<double> p(rows_, 0.0);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) p[r] += b_[r * cols_ + c] * static_cast<double>(coeffs[c]);
    return p;
  }

  std::vector<double> from_unit_cube(const std::vector<double>& u) const {
    std::vector<double> p(rows_, 0.0);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) p[r] += b_[r * cols_ + c] * u[c];
    return p;
  }

  std::vector<double> center(const std::vector<double>& t) const {
    std::vector<double> rhs(cols_, 0.0);
    for (std::size_t c = 0; c < cols_; ++c)
      for (std::size_t r = 0; r < rows_; ++r) rhs[c] += b_[r * cols_ + c] * t[r];
    return enumerator_.solve(rhs);
  }

  // Nearest lattice point and its squared distance.
  std::pair<std::vector<double>, double> nearest(const std::vector<double>& t) const {
    double q = 0;
    std::vector<double> p = point(enumerator_.nearest(center(t), q));
    return {p, dist_sq(p, t)};
  }

  std::vector<std::vector<double>> within(const std::vector<double>& t, double radius_sq) const {
    std::vector<std::vector<double>> out;
    for (const auto& c : enumerator_.within(center(t), radius_sq)) out.push_back(point(c));
    return out;
  }

  static double dist_sq(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return s;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> b_;
  Enumerator<double> enumerator_;
};

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void axpy(double s, const std::vector<double>& x, std::vector<double>& y) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += s * x[i];
}

// Small dense solve by partial pivoting.
std::vector<double> solve_dense(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::fabs(a[r][c]) > std::fabs(a[p][c])) p = r;
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a[r][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[r][j] -= f * a[c][j];
      b[r] -= f * b[c];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
    x[i] = s / a[i][i];
  }
  return x;
}

// Moves t away from the circumcentre of its nearest lattice points, keeping
// them equidistant, until a new lattice point becomes equally near; repeats
// until the nearest points affinely span the space (a Voronoi vertex).
std::vector<double> walk_to_vertex(const FloatCvp& cvp, std::vector<double> t, double reach,
                                   detail::Rng& rng) {
  const std::size_t dim = cvp.dim();
  const std::size_t n = dim - 1;
  const double tol = 1e-9;
  for (std::size_t iter = 0; iter < 2 * n + 4; ++iter) {
    auto [p0, f2] = cvp.nearest(t);
    std::vector<std::vector<double>> active = cvp.within(t, f2 + tol * std::max(1.0, f2));

    // Orthonormal directions of the affine hull, and the independent
    // differences that produced them.
    std::vector<std::vector<double>> q;
    std::vector<std::vector<double>> diffs;
    for (const auto& p : active) {
      std::vector<double> a(dim);
      for (std::size_t i = 0; i < dim; ++i) a[i] = p[i] - p0[i];
      std::vector<double> w = a;
      for (const auto& e : q) axpy(-dot(w, e), e, w);
      const double len = std::sqrt(dot(w, w));
      if (len < 1e-7) continue;
      for (auto& x : w) x /= len;
      q.push_back(std::move(w));
      diffs.push_back(std::move(a));
    }
    if (q.size() >= n) return t;

    std::vector<double> circ = p0;
    if (!diffs.empty()) {
      const std::size_t k = diffs.size();
      std::vector<std::vector<double>> m(k, std::vector<double>(k));
      std::vector<double> rhs(k);
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) m[i][j] = dot(diffs[i], diffs[j]);
        rhs[i] = 0.5 * dot(diffs[i], diffs[i]);
      }
      std::vector<double> lambda = solve_dense(m, rhs);
      for (std::size_t i = 0; i < k; ++i) axpy(lambda[i], diffs[i], circ);
    }

    std::vector<double> d(dim);
    for (std::size_t i = 0; i < dim; ++i) d[i] = t[i] - circ[i];
    auto clean = [&](std::vector<double>& v) {
      for (const auto& e : q) axpy(-dot(v, e), e, v);
      const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(dim);
      for (auto& x : v) x -= mean;
    };
    clean(d);
    if (std::sqrt(dot(d, d)) < 1e-9) {
      for (auto& x : d) x = rng.unit() - 0.5;
      clean(d);
    }
    const double len = std::sqrt(dot(d, d));
    if (len < 1e-12) return t;
    for (auto& x : d) x /= len;

    std::vector<double> tp(dim);
    for (std::size_t i = 0; i < dim; ++i) tp[i] = t[i] - p0[i];
    double s = reach;
    for (int shots = 0; shots < 64; ++shots) {
      std::vector<double> t1 = t;
      axpy(s, d, t1);
      auto [qpt, g2] = cvp.nearest(t1);
      const double dp2 = FloatCvp::dist_sq(t1, p0);
      if (g2 >= dp2 - tol * std::max(1.0, dp2)) break;
      std::vector<double> qp(dim);
      for (std::size_t i = 0; i < dim; ++i) qp[i] = qpt[i] - p0[i];
      const double denom = 2.0 * dot(d, qp);
      if (denom <= 1e-15) break;
      const double s_new = (FloatCvp::dist_sq(t, qpt) - f2) / denom;
      if (!(s_new < s)) break;
      s = std::max(0.0, s_new);
    }
    axpy(s, d, t);
  }
  return t;
}

struct Candidate {
  std::vector<double> t;
  double f2;
};

std::vector<Rational> to_exact(const std::vector<double>& t) {
  std::vector<Rational> out(t.size());
  Rational sum = 0;
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    out[i] = Rational(t[i]);
    sum += out[i];
  }
  out.back() = -sum;
  return out;
}

}  // namespace

CvpResult cvp_nearest(const LatticeBasis& basis, const std::vector<Rational>& point) {
  const IntMatrix& b = basis.matrix();
  require_zero_sum(point, b.rows());
  Enumerator<Rational> e(gram_as<Rational>(b));
  std::vector<Rational> rhs(b.cols(), 0);
  for (std::size_t c = 0; c < b.cols(); ++c)
    for (std::size_t r = 0; r < b.rows(); ++r) {
      if (sgn(b(r, c)) != 0) rhs[c] += Rational(b(r, c)) * point[r];
    }
  Rational best;
  std::vector<std::int64_t> coeffs = e.nearest(e.solve(rhs), best);
  CvpResult out;
  out.coefficients.reserve(coeffs.size());
  for (auto c : coeffs) out.coefficients.emplace_back(static_cast<long>(c));
  out.lattice_point.assign(b.rows(), 0);
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) out.lattice_point[r] += b(r, c) * out.coefficients[c];
  out.dist_sq = 0;
  for (std::size_t r = 0; r < b.rows(); ++r) {
    Rational diff = Rational(out.lattice_point[r]) - point[r];
    out.dist_sq += diff * diff;
  }
  return out;
}

ShaResult sha_round(const FiniteAbelianGroup& g, const std::vector<Rational>& point) {
  const auto len = static_cast<std::size_t>(g.n() + 1);
  require_zero_sum(point, len);
  std::vector<std::int64_t> v(len);
  std::vector<Rational> err(len);
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < len; ++i) {
    v[i] = round_half_up(point[i]).get_si();
    err[i] = Rational(static_cast<long>(v[i])) - point[i];
    sum += v[i];
  }
  // Nearest point of A_n: undo the roundings that overshot the most.
  std::vector<std::size_t> idx(len);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  if (sum > 0) {
    std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return err[a] > err[b]; });
    for (std::int64_t k = 0; k < sum; ++k) --v[idx[static_cast<std::size_t>(k)]];
  } else if (sum < 0) {
    std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return err[a] < err[b]; });
    for (std::int64_t k = 0; k < -sum; ++k) ++v[idx[static_cast<std::size_t>(k)]];
  }
  const ElementId s = group_sum(g, std::span<const std::int64_t>(v.data(), len - 1));
  if (s != 0) {
    --v[coordinate_of(s)];
    ++v[len - 1];
  }
  ShaResult out;
  out.lattice_point = v;
  out.dist_sq = 0;
  for (std::size_t i = 0; i < len; ++i) {
    Rational diff = Rational(static_cast<long>(v[i])) - point[i];
    out.dist_sq += diff * diff;
  }
  out.dist = std::sqrt(out.dist_sq.get_d());
  return out;
}

DeepHoleEstimate deep_hole_estimate(const FiniteAbelianGroup& g, std::int64_t samples,
                                    std::uint64_t seed) {
  if (samples < 1) throw Error(ErrorCode::kInvalidArgument, "samples must be >= 1");
  const auto n = static_cast<std::size_t>(g.n());
  const std::size_t dim = n + 1;
  std::optional<LatticeBasis> basis;
  try {
    basis.emplace(build_minimal_basis(g, seed).basis);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNotWellRounded) throw;
    basis.emplace(canonical_basis(g));
  }
  const FloatCvp cvp(basis->matrix());
  const double reach = 4.0 * (mu_root_lattice(static_cast<std::int64_t>(n)) + std::sqrt(2.0));
  detail::Rng rng(seed);

  std::vector<Candidate> pool;
  auto consider = [&](std::vector<double> t) {
    t = walk_to_vertex(cvp, std::move(t), reach, rng);
    pool.push_back({t, cvp.nearest(t).second});
  };
  std::vector<double> half(dim, 0.5);
  half.back() = -0.5 * static_cast<double>(n);
  consider(half);
  std::vector<double> u(n);
  for (std::int64_t s = 0; s < samples; ++s) {
    for (auto& x : u) x = rng.unit();
    consider(cvp.from_unit_cube(u));
  }
  std::stable_sort(pool.begin(), pool.end(),
                   [](const Candidate& a, const Candidate& b) { return a.f2 > b.f2; });
  pool.resize(std::min<std::size_t>(pool.size(), 8));

  // Coordinate ascent along e_i - e_j with step halving.
  for (auto& cand : pool) {
    double step = 0.125;
    for (int it = 0; it < 40; ++it) {
      Candidate best = cand;
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) {
          if (i == j) continue;
          std::vector<double> t = cand.t;
          t[i] += step;
          t[j] -= step;
          const double f2 = cvp.nearest(t).second;
          if (f2 > best.f2) best = {std::move(t), f2};
        }
      if (best.f2 > cand.f2) cand = std::move(best);
      else step *= 0.5;
    }
  }

  DeepHoleEstimate out;
  bool first = true;
  for (const auto& cand : pool) {
    std::vector<Rational> t = to_exact(cand.t);
    CvpResult r = cvp_nearest(*basis, t);
    if (first || r.dist_sq > out.dist_sq) {
      out.point = std::move(t);
      out.dist_sq = r.dist_sq;
      first = false;
    }
  }
  out.value = std::sqrt(out.dist_sq.get_d());
  return out;
}

std::vector<CoveringReport> bounds_table(const std::vector<std::int64_t>& ns, std::int64_t cap) {
  std::vector<CoveringReport> out;
  out.reserve(ns.size());
  for (std::int64_t n : ns) {
    const AnalyticBounds b = analytic_bounds(n);
    CoveringReport r;
    r.n = n;
    r.mu_an = b.mu_an;
    r.thm14 = b.thm14;
    r.sha = b.sha;
    if (n <= cap) r.recursive_sq = recursive_bound(cyclic_toeplitz_basis(n)).r_sq.back();
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace abelat
