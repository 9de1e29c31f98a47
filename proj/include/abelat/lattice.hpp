#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "abelat/exact_linalg.hpp"
#include "abelat/groups.hpp"

namespace abelat {

// Coordinate c < n carries the nonzero element g_{c+1}; coordinate n is the
// balancing slot and carries the zero element.
inline std::size_t coordinate_of(ElementId nonzero) {
  return static_cast<std::size_t>(nonzero - 1);
}
inline ElementId weight_of(const FiniteAbelianGroup& g, std::size_t coord) {
  return static_cast<std::int64_t>(coord) == g.n() ? 0 : static_cast<ElementId>(coord + 1);
}

// An integer vector of length n + 1 with zero coordinate sum (a point of A_n).
struct LatticeVector {
  std::vector<std::int64_t> coords;

  std::int64_t norm_sq() const;
  friend bool operator==(const LatticeVector&, const LatticeVector&) = default;
  friend auto operator<=>(const LatticeVector&, const LatticeVector&) = default;
};

// sum_{i} x_i g_i over the first n coordinates.
ElementId group_sum(const FiniteAbelianGroup& g, std::span<const std::int64_t> x);

// x has length n + 1: zero sum and vanishing group sum. A length-n x is
// completed with the balancing coordinate first. Any other length throws.
bool membership(const FiniteAbelianGroup& g, std::span<const std::int64_t> x);
bool membership(const FiniteAbelianGroup& g, const std::vector<Integer>& x);

// Completes a length-n column with its balancing coordinate.
std::vector<std::int64_t> complete(std::span<const std::int64_t> x);

// (n+1) x n integer matrix whose columns form a basis of L(G). Construction
// validates membership of every column and det(BᵀB) = |G|^3, throwing
// kVerificationFailed otherwise.
class LatticeBasis {
 public:
  LatticeBasis(FiniteAbelianGroup group, IntMatrix matrix);

  const FiniteAbelianGroup& group() const { return group_; }
  const IntMatrix& matrix() const { return matrix_; }
  std::vector<std::int64_t> column(std::size_t c) const;

 private:
  FiniteAbelianGroup group_;
  IntMatrix matrix_;
};

// Generator columns m_i (e_{gen_i} - e_last) first, in factor order, then one
// column per non-generator nonzero element in canonical order.
LatticeBasis canonical_basis(const FiniteAbelianGroup& g);

// For each column of canonical_basis(g), the element whose coordinate it
// pivots on. Used by canonical_coordinates.
std::vector<ElementId> canonical_basis_pivots(const FiniteAbelianGroup& g);

// Integer coefficients of x in terms of canonical_basis(g). Throws
// kInvalidArgument if x is not in L(G).
std::vector<Integer> canonical_coordinates(const FiniteAbelianGroup& g,
                                           std::span<const std::int64_t> x);

struct DetIdentity {
  Integer det_cubed;  // det(BᵀB) for the canonical basis
  bool holds;         // det_cubed == |G|^3
};
DetIdentity verify_det_identity(const FiniteAbelianGroup& g);

// e_i - e_{n+1}, i = 1..n: a basis of A_n with Gram determinant n + 1.
IntMatrix root_lattice_basis(std::int64_t n);

// Header line "group <spec>" followed by the matrix text format.
void write_basis(std::ostream& os, const LatticeBasis& b);
LatticeBasis read_basis(std::istream& is);

}  // namespace abelat
