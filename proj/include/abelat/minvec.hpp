#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "abelat/groups.hpp"
#include "abelat/lattice.hpp"

namespace abelat {

// A zero-sum multiset of nonzero coordinate values, e.g. {1, 1, -1, -1},
// stored as value -> multiplicity.
using SupportPattern = std::map<std::int64_t, int>;

// Every zero-sum pattern with squared norm <= max_norm_sq (both signs
// listed separately), sorted by norm then lexicographically.
std::vector<SupportPattern> support_patterns(std::int64_t max_norm_sq);

// All nonzero members of L(G) with squared norm <= max_norm_sq, for
// max_norm_sq in {2, 4, 6, 8}. Sorted lexicographically, no duplicates.
std::vector<LatticeVector> enumerate_short_vectors(const FiniteAbelianGroup& g,
                                                   std::int64_t max_norm_sq);

struct MinimalVectorReport {
  std::int64_t d_squared = 0;
  std::vector<LatticeVector> vectors;  // S(G)
  std::size_t rank = 0;
  bool well_rounded = false;
};

MinimalVectorReport minimum_distance(const FiniteAbelianGroup& g);

// d(G)^2 without materialising S(G): stops at the first hit.
std::int64_t minimum_norm_sq(const FiniteAbelianGroup& g);

bool well_rounded(const FiniteAbelianGroup& g);

}  // namespace abelat
