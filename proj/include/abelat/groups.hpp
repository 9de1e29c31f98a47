#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace abelat {

// Elements are addressed by their mixed-radix code: the residue tuple read as
// a number whose first factor is the most significant digit. With this
// encoding the code of an element is its position in the canonical order, so
// 0 is the zero element and code i >= 1 is g_i, the i-th nonzero element.
using ElementId = std::int64_t;

struct GroupElement {
  std::vector<std::int64_t> residues;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

// G = Z_{m_1} x ... x Z_{m_k} with m_1 <= ... <= m_k, every m_i >= 2.
class FiniteAbelianGroup {
 public:
  explicit FiniteAbelianGroup(std::vector<std::int64_t> moduli);

  const std::vector<std::int64_t>& moduli() const { return moduli_; }
  std::size_t rank() const { return moduli_.size(); }
  std::int64_t order() const { return order_; }
  // Number of nonzero elements, which is also the lattice dimension.
  std::int64_t n() const { return order_ - 1; }

  GroupElement element(ElementId id) const;
  ElementId id(const GroupElement& g) const;

  ElementId add(ElementId a, ElementId b) const;
  ElementId negate(ElementId a) const;
  ElementId scale(std::int64_t k, ElementId a) const;
  std::int64_t element_order(ElementId a) const;

  // The element with residue 1 in factor `factor` and 0 elsewhere.
  ElementId standard_generator(std::size_t factor) const;

  // "Z2xZ4"; parse_group(to_string()) reproduces the group.
  std::string to_string() const;

  friend bool operator==(const FiniteAbelianGroup& a,
                         const FiniteAbelianGroup& b) {
    return a.moduli_ == b.moduli_;
  }

 private:
  std::vector<std::int64_t> moduli_;
  std::vector<std::int64_t> place_;  // mixed-radix place value per factor
  std::int64_t order_ = 1;
};

// Accepts "Z4", "Z2xZ4", "z2 x z4", "Z2×Z4", "2,4", "2x4". Moduli are sorted
// but never merged, so Z2xZ3 stays distinct from Z6.
FiniteAbelianGroup parse_group(std::string_view spec);

// All |G| elements in canonical order: zero first, then lexicographic.
std::vector<GroupElement> enumerate_elements(const FiniteAbelianGroup& g);

struct ElementOps {
  GroupElement sum;
  GroupElement neg_a;
  std::int64_t order_a;
};
ElementOps element_ops(const FiniteAbelianGroup& g, const GroupElement& a,
                       const GroupElement& b);

// External direct product K = A x B with injections of both operands.
struct DirectProduct {
  FiniteAbelianGroup group;
  std::vector<ElementId> left;   // left[a] is the image of a in K
  std::vector<ElementId> right;  // right[b] is the image of b in K
};
DirectProduct direct_product(const FiniteAbelianGroup& a,
                             const FiniteAbelianGroup& b);

// One representative per isomorphism class, in invariant-factor form
// (m_1 | m_2 | ... | m_k), for every order in [2, max_order].
std::vector<FiniteAbelianGroup> abelian_groups_up_to(std::int64_t max_order);

}  // namespace abelat
