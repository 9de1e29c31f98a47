#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "abelat/exact_linalg.hpp"
#include "abelat/groups.hpp"
#include "abelat/lattice.hpp"

namespace abelat {

// Covering radius of the root lattice A_n, n >= 1.
double mu_root_lattice(std::int64_t n);

struct AnalyticBounds {
  double mu_an = 0;
  double thm14 = 0;  // the closed upper bound for mu(Z_{n+1}), natural log
  double sha = 0;    // mu(A_n) + sqrt(2)
};
AnalyticBounds analytic_bounds(std::int64_t n);

// x rounded to four decimals, e.g. 2.50965 -> "2.5097". This is the
// convention the printed bound table follows digit for digit (chopping would
// give 2.5096).
std::string format4(double x);

// T̃_{n+1}: the (n+1) x n basis of L(Z_{n+1}) with columns
// e_{j-1} - 2 e_j + e_{j+1} (indices past the ends wrap into the last row).
IntMatrix cyclic_toeplitz_basis(std::int64_t n);

// Pentadiagonal 6 / -4 / 1 matrix of size k; with `wrap` the two corner
// entries gain +1 (the Gram of the full cyclic basis).
IntMatrix banded_gram(std::int64_t k, bool wrap);

struct ClosedFormGram {
  IntMatrix gram;
  Integer det_closed;
  Integer det_bareiss;
};
// Gram of the first k columns of cyclic_toeplitz_basis(n). Throws
// kVerificationFailed if it differs from banded_gram(k, k == n).
ClosedFormGram closed_form_grams(std::int64_t n, std::int64_t k);

struct RecursiveBoundTrace {
  std::vector<Integer> v_sq;   // V_k^2 = det of the Gram of the first k columns
  std::vector<Rational> r_sq;  // r_k^2
};
// r_1^2 defaults to |b_1|^2 / 4. Columns are used in the given order.
RecursiveBoundTrace recursive_bound(const IntMatrix& basis,
                                    std::optional<Rational> r1_sq = std::nullopt);
RecursiveBoundTrace recursive_bound(const LatticeBasis& basis,
                                    std::optional<Rational> r1_sq = std::nullopt);

struct CvpResult {
  std::vector<Integer> lattice_point;
  std::vector<Integer> coefficients;
  Rational dist_sq;
};
// Exact closest vector by Schnorr-Euchner enumeration. The point must have
// length n + 1 and zero coordinate sum.
CvpResult cvp_nearest(const LatticeBasis& basis, const std::vector<Rational>& point);

struct ShaResult {
  std::vector<std::int64_t> lattice_point;
  Rational dist_sq;
  double dist = 0;
};
ShaResult sha_round(const FiniteAbelianGroup& g, const std::vector<Rational>& point);

struct DeepHoleEstimate {
  double value = 0;               // exact distance of `point` to L(G), as a double
  std::vector<Rational> point;    // witness
  Rational dist_sq;               // exact
};
// Lower bound for mu(G) from seeded random points walked to Voronoi
// vertices, plus the point (1/2, ..., 1/2, -n/2).
DeepHoleEstimate deep_hole_estimate(const FiniteAbelianGroup& g, std::int64_t samples,
                                    std::uint64_t seed);

struct CoveringReport {
  std::int64_t n = 0;
  double mu_an = 0;
  double thm14 = 0;
  double sha = 0;
  std::optional<Rational> recursive_sq;
  std::optional<double> deep_hole_estimate;
};

inline constexpr std::int64_t kRecursiveBoundCap = 512;

// recursive_sq uses T̃_{n+1} and is filled only for n <= cap.
std::vector<CoveringReport> bounds_table(const std::vector<std::int64_t>& ns,
                                         std::int64_t cap = kRecursiveBoundCap);

}  // namespace abelat
