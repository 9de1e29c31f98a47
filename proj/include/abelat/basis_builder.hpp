#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "abelat/exact_linalg.hpp"
#include "abelat/groups.hpp"
#include "abelat/lattice.hpp"

namespace abelat {

// An ordering of the nonzero elements of G (the label column) next to an
// n x n matrix whose columns are points of L(G) written in label order.
class AdmissibleArray {
 public:
  // Throws kInvalidArgument unless labels permute the nonzero elements and
  // every column of the extended matrix is a lattice point.
  AdmissibleArray(FiniteAbelianGroup group, std::vector<ElementId> labels, IntMatrix m);

  const FiniteAbelianGroup& group() const { return group_; }
  const std::vector<ElementId>& labels() const { return labels_; }
  const IntMatrix& m() const { return m_; }

  // M plus a final row of negated column sums.
  IntMatrix extended() const;
  // The extended matrix with rows moved to canonical coordinates.
  IntMatrix canonical_matrix() const;

  Integer det_m() const;
  Integer gram_det() const;
  // Squared norm of every extended column when they all agree, else -1.
  std::int64_t common_norm_sq() const;

  bool is_basis() const;
  // Verified basis; throws kVerificationFailed otherwise.
  LatticeBasis to_basis() const;

 private:
  FiniteAbelianGroup group_;
  std::vector<ElementId> labels_;
  IntMatrix m_;
};

// Label rows given as residue tuples, e.g. {{0, 1}, {1, 0}, {1, 1}}.
AdmissibleArray make_array(const FiniteAbelianGroup& g,
                           const std::vector<std::vector<std::int64_t>>& labels,
                           IntMatrix m);

// Tridiagonal Toeplitz, -2 on the diagonal and 1 beside it, (m-1) x (m-1).
IntMatrix toeplitz_t(std::int64_t m);
// Bidiagonal ones with the last column replaced by (0,...,0,-1,-1,-1,0).
IntMatrix toeplitz_u(std::int64_t m);

// Labels 1..m-1 paired with T_m U_m; requires m >= 5.
AdmissibleArray cyclic_minimal_array(std::int64_t m);

// Hand-made arrays for Z2, Z3 and Z2xZ2.
AdmissibleArray small_group_array(const FiniteAbelianGroup& g);

// Printed bases of minimal vectors for Z2xZ4, Z3xZ3 and Z4xZ4.
AdmissibleArray special_array(const FiniteAbelianGroup& g);

// Array for G x H built from bases of G and H, both with d = 2 and
// det M = ±|group|. The result lives in direct_product(G, H).
AdmissibleArray combine_product(const AdmissibleArray& arr_g, const AdmissibleArray& arr_h);

// Array for Z_m x G, m in {2, 3, 4}. Throws kHypothesisViolation when G has
// no element that the m = 3 / m = 4 constructions need.
AdmissibleArray attach_small(std::int64_t m, const AdmissibleArray& arr_g);

struct BuildStep {
  std::string tag;
  std::vector<std::string> operands;
};

struct BuildTrace {
  std::vector<BuildStep> steps;
  bool fallback_used = false;
  std::uint64_t seed = 0;
};

struct FallbackOptions {
  int restarts = 64;
  // swap steps per restart = swap_factor * n^2
  int swap_factor = 10;
};

struct BuildResult {
  LatticeBasis basis;
  BuildTrace trace;
};

// Basis of minimal vectors for every G other than Z4 (kNotWellRounded).
BuildResult build_minimal_basis(const FiniteAbelianGroup& g, std::uint64_t seed,
                                const FallbackOptions& options = {});

// Randomised greedy search over S(G). Throws kBudgetExhausted when no basis
// is found within the restart budget.
LatticeBasis fallback_greedy_basis(const FiniteAbelianGroup& g, std::uint64_t seed,
                                   const FallbackOptions& options = {});

std::string trace_to_json(const BuildTrace& trace);

}  // namespace abelat
