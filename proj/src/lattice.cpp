#include "abelat/lattice.hpp"

#include <istream>
#include <numeric>
#include <ostream>
#include <string>

#include "abelat/error.hpp"

namespace abelat {

std::int64_t LatticeVector::norm_sq() const {
  std::int64_t s = 0;
  for (std::int64_t x : coords) s += x * x;
  return s;
}

ElementId group_sum(const FiniteAbelianGroup& g, std::span<const std::int64_t> x) {
  const std::size_t n = static_cast<std::size_t>(g.n());
  ElementId acc = 0;
  for (std::size_t c = 0; c < n && c < x.size(); ++c) {
    if (x[c] != 0) acc = g.add(acc, g.scale(x[c], weight_of(g, c)));
  }
  return acc;
}

std::vector<std::int64_t> complete(std::span<const std::int64_t> x) {
  std::vector<std::int64_t> out(x.begin(), x.end());
  out.push_back(-std::accumulate(x.begin(), x.end(), std::int64_t{0}));
  return out;
}

bool membership(const FiniteAbelianGroup& g, std::span<const std::int64_t> x) {
  const std::size_t n = static_cast<std::size_t>(g.n());
  if (x.size() == n) {
    std::vector<std::int64_t> full = complete(x);
    return membership(g, std::span<const std::int64_t>(full));
  }
  if (x.size() != n + 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "vector length " + std::to_string(x.size()) + " does not match n + 1 = " +
                    std::to_string(n + 1));
  }
  if (std::accumulate(x.begin(), x.end(), std::int64_t{0}) != 0) return false;
  return group_sum(g, x) == 0;
}

bool membership(const FiniteAbelianGroup& g, const std::vector<Integer>& x) {
  const std::size_t n = static_cast<std::size_t>(g.n());
  if (x.size() != n + 1) {
    throw Error(ErrorCode::kInvalidArgument, "vector length does not match n + 1");
  }
  Integer sum = 0;
  for (const Integer& v : x) sum += v;
  if (sgn(sum) != 0) return false;
  ElementId acc = 0;
  for (std::size_t c = 0; c < n; ++c) {
    Integer r = x[c] % g.order();  // the exponent divides |G|
    if (sgn(r) != 0) acc = g.add(acc, g.scale(r.get_si(), weight_of(g, c)));
  }
  return acc == 0;
}

LatticeBasis::LatticeBasis(FiniteAbelianGroup group, IntMatrix matrix)
    : group_(std::move(group)), matrix_(std::move(matrix)) {
  const auto n = static_cast<std::size_t>(group_.n());
  if (matrix_.rows() != n + 1 || matrix_.cols() != n) {
    throw Error(ErrorCode::kVerificationFailed,
                "basis matrix for " + group_.to_string() + " must be " +
                    std::to_string(n + 1) + "x" + std::to_string(n));
  }
  for (std::size_t c = 0; c < n; ++c) {
    if (!membership(group_, matrix_.column(c))) {
      throw Error(ErrorCode::kVerificationFailed,
                  "column " + std::to_string(c) + " is not in L(" + group_.to_string() + ")");
    }
  }
  Integer order = group_.order();
  Integer expected = order * order * order;
  Integer det = bareiss_det(gram(matrix_));
  if (det != expected) {
    throw Error(ErrorCode::kVerificationFailed,
                "Gram determinant " + det.get_str() + " != |G|^3 = " + expected.get_str());
  }
}

std::vector<std::int64_t> LatticeBasis::column(std::size_t c) const {
  std::vector<std::int64_t> v(matrix_.rows());
  for (std::size_t r = 0; r < matrix_.rows(); ++r) v[r] = matrix_(r, c).get_si();
  return v;
}

namespace {

bool is_generator(const FiniteAbelianGroup& g, ElementId id) {
  for (std::size_t f = 0; f < g.rank(); ++f)
    if (g.standard_generator(f) == id) return true;
  return false;
}

IntMatrix canonical_matrix(const FiniteAbelianGroup& g) {
  const auto n = static_cast<std::size_t>(g.n());
  IntMatrix b(n + 1, n);
  std::size_t col = 0;
  for (std::size_t f = 0; f < g.rank(); ++f) {
    const long m = static_cast<long>(g.moduli()[f]);
    b(coordinate_of(g.standard_generator(f)), col) = m;
    b(n, col) = -m;
    ++col;
  }
  for (ElementId id = 1; id < g.order(); ++id) {
    if (is_generator(g, id)) continue;
    GroupElement e = g.element(id);
    long total = 0;
    b(coordinate_of(id), col) = 1;
    for (std::size_t f = 0; f < g.rank(); ++f) {
      const long j = static_cast<long>(e.residues[f]);
      if (j) b(coordinate_of(g.standard_generator(f)), col) = -j;
      total += j;
    }
    b(n, col) = total - 1;
    ++col;
  }
  return b;
}

}  // namespace

LatticeBasis canonical_basis(const FiniteAbelianGroup& g) {
  return LatticeBasis(g, canonical_matrix(g));
}

std::vector<ElementId> canonical_basis_pivots(const FiniteAbelianGroup& g) {
  std::vector<ElementId> pivots;
  for (std::size_t f = 0; f < g.rank(); ++f) pivots.push_back(g.standard_generator(f));
  for (ElementId id = 1; id < g.order(); ++id)
    if (!is_generator(g, id)) pivots.push_back(id);
  return pivots;
}

std::vector<Integer> canonical_coordinates(const FiniteAbelianGroup& g,
                                           std::span<const std::int64_t> x) {
  if (!membership(g, x)) {
    throw Error(ErrorCode::kInvalidArgument, "vector is not in L(" + g.to_string() + ")");
  }
  const std::vector<ElementId> pivots = canonical_basis_pivots(g);
  std::vector<Integer> coef(pivots.size());
  // Non-generator columns are the only ones touching their pivot coordinate.
  std::vector<Integer> gen_acc(g.rank());
  for (std::size_t f = 0; f < g.rank(); ++f)
    gen_acc[f] = static_cast<long>(x[coordinate_of(g.standard_generator(f))]);
  for (std::size_t c = g.rank(); c < pivots.size(); ++c) {
    const long xc = static_cast<long>(x[coordinate_of(pivots[c])]);
    coef[c] = xc;
    GroupElement e = g.element(pivots[c]);
    for (std::size_t f = 0; f < g.rank(); ++f) gen_acc[f] += xc * static_cast<long>(e.residues[f]);
  }
  for (std::size_t f = 0; f < g.rank(); ++f) {
    coef[f] = gen_acc[f] / static_cast<long>(g.moduli()[f]);
  }
  return coef;
}

DetIdentity verify_det_identity(const FiniteAbelianGroup& g) {
  Integer det = bareiss_det(gram(canonical_matrix(g)));
  Integer order = g.order();
  return {det, det == order * order * order};
}

IntMatrix root_lattice_basis(std::int64_t n) {
  const auto dim = static_cast<std::size_t>(n);
  IntMatrix b(dim + 1, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    b(i, i) = 1;
    b(dim, i) = -1;
  }
  return b;
}

void write_basis(std::ostream& os, const LatticeBasis& b) {
  os << "group " << b.group().to_string() << '\n';
  write_matrix(os, b.matrix());
}

LatticeBasis read_basis(std::istream& is) {
  std::string keyword, spec;
  if (!(is >> keyword >> spec) || keyword != "group") {
    throw Error(ErrorCode::kParse, "basis file must start with 'group <spec>'");
  }
  FiniteAbelianGroup g = parse_group(spec);
  return LatticeBasis(g, read_matrix(is));
}

}  // namespace abelat
