#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "abelat/groups.hpp"

namespace abelat {

// p[i - 1] = sigma(i) for i = 1..n, acting on canonical nonzero-element
// indices.
using Permutation = std::vector<std::int64_t>;

struct PermutationSet {
  std::int64_t n = 0;
  std::set<Permutation> perms;  // lexicographic

  bool contains_identity() const;
  // Closure under composition and inverses, by brute force.
  bool is_group() const;
};

Permutation compose(const Permutation& a, const Permutation& b);  // a after b
Permutation inverse(const Permutation& p);
std::string cycle_notation(const Permutation& p);

inline constexpr std::int64_t kAutomorphismOrderCap = 32;
inline constexpr std::int64_t kStabilizerCap = 10;
// Guards memory: Aut(Z2^5) alone has about 10^7 elements.
inline constexpr std::size_t kMaxPermutations = 1 << 20;

// Permutations of the nonzero elements induced by Aut(G). Throws
// kCapExceeded if |G| > order_cap or the result would hold more than
// kMaxPermutations elements.
PermutationSet enumerate_group_automorphisms(const FiniteAbelianGroup& g,
                                             std::int64_t order_cap = kAutomorphismOrderCap);

// All sigma in S_n with sum_i x_i g_sigma(i) = 0 for every column x of the
// canonical basis, i.e. coordinate permutations mapping L(G) onto itself.
// Throws kCapExceeded if n > n_cap.
PermutationSet lattice_coordinate_stabilizer(const FiniteAbelianGroup& g,
                                             std::int64_t n_cap = kStabilizerCap);

// Lexicographically greedy generating set.
std::vector<Permutation> generating_set(const PermutationSet& s);

struct AutomorphismComparison {
  bool equal = false;
  std::size_t order = 0;  // common size when equal, else |Aut(G)|
  std::vector<Permutation> generators;
};
AutomorphismComparison verify_automorphism_correspondence(
    const FiniteAbelianGroup& g, std::int64_t n_cap = kStabilizerCap,
    std::int64_t order_cap = kAutomorphismOrderCap);

}  // namespace abelat
