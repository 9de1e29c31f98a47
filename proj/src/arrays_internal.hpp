#pragma once

#include <vector>

#include "abelat/basis_builder.hpp"

namespace abelat::detail {

// Rows of an array whose labels are elements of an ambient group that the
// block embeds into. Products of subgroups with trivial intersection use the
// same bookkeeping as external products, so the builder assembles everything
// directly inside the target group.
struct SubArray {
  std::vector<ElementId> labels;
  IntMatrix m;
};

// Requires the two label sets to generate subgroups meeting only in 0.
SubArray combine_in(const FiniteAbelianGroup& ambient, const SubArray& a, const SubArray& b);

// z generates a cyclic subgroup of order m meeting the base subgroup only in
// 0. Throws kHypothesisViolation when the base lacks the required element.
SubArray attach_in(const FiniteAbelianGroup& ambient, std::int64_t m, ElementId z,
                   const SubArray& base);

// Lemma-style operand gate: common squared norm 4, |det M| = order, basis.
void require_product_operand(const AdmissibleArray& arr, const char* role);

}  // namespace abelat::detail
