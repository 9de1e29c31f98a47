#include "abelat/automorphism.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "abelat/error.hpp"
#include "abelat/lattice.hpp"

namespace abelat {
namespace {

using Vec = std::vector<std::int64_t>;

std::int64_t units(std::int64_t m) {
  std::int64_t c = 0;
  for (std::int64_t k = 1; k < m; ++k) c += std::gcd(k, m) == 1;
  return c;
}

// sigma maps L(G) onto itself iff it maps every basis column into L(G).
bool preserves_lattice(const FiniteAbelianGroup& g, const Permutation& p) {
  LatticeBasis b = canonical_basis(g);
  for (std::size_t c = 0; c < b.matrix().cols(); ++c) {
    Vec x = b.column(c);
    Vec y = x;
    for (std::size_t i = 0; i < p.size(); ++i) y[static_cast<std::size_t>(p[i] - 1)] = x[i];
    if (!membership(g, y)) return false;
  }
  return true;
}

TEST(Permutations, Basics) {
  Permutation p = {2, 3, 1};
  Permutation q = {2, 1, 3};
  EXPECT_EQ(compose(p, q), (Permutation{3, 2, 1}));
  EXPECT_EQ(compose(p, inverse(p)), (Permutation{1, 2, 3}));
  EXPECT_EQ(cycle_notation(p), "(1 2 3)");
  EXPECT_EQ(cycle_notation({1, 2, 3}), "()");
  PermutationSet s{3, {{1, 2, 3}, {2, 3, 1}, {3, 1, 2}}};
  EXPECT_TRUE(s.contains_identity());
  EXPECT_TRUE(s.is_group());
  PermutationSet t{3, {{1, 2, 3}, {2, 3, 1}}};
  EXPECT_FALSE(t.is_group());
}

TEST(GroupAutomorphisms, CyclicUnitCount) {
  for (std::int64_t m = 2; m <= 16; ++m) {
    PermutationSet a = enumerate_group_automorphisms(FiniteAbelianGroup({m}));
    EXPECT_EQ(static_cast<std::int64_t>(a.perms.size()), units(m)) << m;
    EXPECT_TRUE(a.is_group());
    for (const auto& p : a.perms) {
      // Multiplication by the unit p(1).
      for (std::int64_t i = 1; i < m; ++i) EXPECT_EQ(p[i - 1], (p[0] * i) % m);
    }
  }
}

TEST(GroupAutomorphisms, Orders) {
  EXPECT_EQ(enumerate_group_automorphisms(parse_group("Z2xZ2")).perms.size(), 6u);
  EXPECT_EQ(enumerate_group_automorphisms(parse_group("Z2xZ4")).perms.size(), 8u);
  EXPECT_EQ(enumerate_group_automorphisms(parse_group("Z2xZ2xZ2")).perms.size(), 168u);
  EXPECT_EQ(enumerate_group_automorphisms(parse_group("Z3xZ3")).perms.size(), 48u);
  EXPECT_THROW(enumerate_group_automorphisms(FiniteAbelianGroup({40})), Error);
}

TEST(Stabilizer, MatchesExhaustiveCheck) {
  for (const auto& g : abelian_groups_up_to(7)) {
    const auto n = static_cast<std::size_t>(g.n());
    PermutationSet s = lattice_coordinate_stabilizer(g);
    Permutation p(n);
    std::iota(p.begin(), p.end(), 1);
    std::size_t count = 0;
    do {
      const bool keeps = preserves_lattice(g, p);
      EXPECT_EQ(keeps, s.perms.count(p) == 1) << g.to_string();
      count += keeps;
    } while (std::next_permutation(p.begin(), p.end()));
    EXPECT_EQ(count, s.perms.size());
  }
}

TEST(Stabilizer, MovesRandomLatticeVectorsIntoTheLattice) {
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (const char* spec : {"Z9", "Z2xZ4", "Z3xZ3", "Z10"}) {
    FiniteAbelianGroup g = parse_group(spec);
    LatticeBasis b = canonical_basis(g);
    PermutationSet s = lattice_coordinate_stabilizer(g);
    for (const auto& p : s.perms) {
      Vec x(static_cast<std::size_t>(g.n() + 1), 0);
      for (std::size_t c = 0; c < b.matrix().cols(); ++c) {
        const int a = coef(rng);
        for (std::size_t r = 0; r < x.size(); ++r) x[r] += a * b.matrix()(r, c).get_si();
      }
      Vec y = x;
      for (std::size_t i = 0; i < p.size(); ++i) y[static_cast<std::size_t>(p[i] - 1)] = x[i];
      EXPECT_TRUE(membership(g, y)) << spec;
    }
  }
  EXPECT_THROW(lattice_coordinate_stabilizer(FiniteAbelianGroup({12})), Error);
}

TEST(Correspondence, HoldsUpToEleven) {
  for (const auto& g : abelian_groups_up_to(11)) {
    AutomorphismComparison c = verify_automorphism_correspondence(g);
    EXPECT_TRUE(c.equal) << g.to_string();
    EXPECT_EQ(c.order, enumerate_group_automorphisms(g).perms.size());
    EXPECT_EQ(c.generators.empty(), c.order == 1);
  }
}

TEST(GeneratingSet, GeneratesTheGroup) {
  for (const char* spec : {"Z7", "Z2xZ2xZ2", "Z3xZ3", "Z8"}) {
    PermutationSet a = enumerate_group_automorphisms(parse_group(spec));
    std::vector<Permutation> gens = generating_set(a);
    std::set<Permutation> closure;
    std::vector<Permutation> frontier = {*a.perms.begin()};
    closure.insert(frontier[0]);
    while (!frontier.empty()) {
      Permutation cur = frontier.back();
      frontier.pop_back();
      for (const auto& s : gens) {
        Permutation next = compose(s, cur);
        if (closure.insert(next).second) frontier.push_back(next);
      }
    }
    EXPECT_EQ(closure, a.perms) << spec;
  }
}

}  // namespace
}  // namespace abelat
