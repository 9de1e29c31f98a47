#include <algorithm>
#include <numeric>
#include <set>

#include "abelat/basis_builder.hpp"
#include "abelat/error.hpp"
#include "arrays_internal.hpp"

namespace abelat {

AdmissibleArray::AdmissibleArray(FiniteAbelianGroup group, std::vector<ElementId> labels,
                                 IntMatrix m)
    : group_(std::move(group)), labels_(std::move(labels)), m_(std::move(m)) {
  const auto n = static_cast<std::size_t>(group_.n());
  if (labels_.size() != n || m_.rows() != n || m_.cols() != n) {
    throw Error(ErrorCode::kInvalidArgument,
                "array for " + group_.to_string() + " must have " + std::to_string(n) +
                    " labels and an n x n matrix");
  }
  std::vector<bool> seen(n + 1, false);
  for (ElementId l : labels_) {
    if (l <= 0 || l > group_.n() || seen[static_cast<std::size_t>(l)]) {
      throw Error(ErrorCode::kInvalidArgument,
                  "labels must enumerate the nonzero elements exactly once");
    }
    seen[static_cast<std::size_t>(l)] = true;
  }
  for (std::size_t c = 0; c < n; ++c) {
    ElementId acc = 0;
    for (std::size_t r = 0; r < n; ++r) {
      Integer v = m_(r, c) % group_.order();
      if (sgn(v) != 0) acc = group_.add(acc, group_.scale(v.get_si(), labels_[r]));
    }
    if (acc != 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "column " + std::to_string(c) + " is not a point of L(" +
                      group_.to_string() + ")");
    }
  }
}

IntMatrix AdmissibleArray::extended() const {
  const std::size_t n = m_.rows();
  IntMatrix ext(n + 1, n);
  for (std::size_t c = 0; c < n; ++c) {
    Integer sum = 0;
    for (std::size_t r = 0; r < n; ++r) {
      ext(r, c) = m_(r, c);
      sum += m_(r, c);
    }
    ext(n, c) = -sum;
  }
  return ext;
}

IntMatrix AdmissibleArray::canonical_matrix() const {
  const std::size_t n = m_.rows();
  IntMatrix ext = extended();
  IntMatrix out(n + 1, n);
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t row = coordinate_of(labels_[r]);
    for (std::size_t c = 0; c < n; ++c) out(row, c) = ext(r, c);
  }
  for (std::size_t c = 0; c < n; ++c) out(n, c) = ext(n, c);
  return out;
}

Integer AdmissibleArray::det_m() const { return bareiss_det(m_); }

Integer AdmissibleArray::gram_det() const { return bareiss_det(gram(extended())); }

std::int64_t AdmissibleArray::common_norm_sq() const {
  IntMatrix ext = extended();
  std::int64_t norm = -1;
  for (std::size_t c = 0; c < ext.cols(); ++c) {
    Integer s = 0;
    for (std::size_t r = 0; r < ext.rows(); ++r) s += ext(r, c) * ext(r, c);
    if (norm == -1) norm = s.get_si();
    else if (s != norm) return -1;
  }
  return norm;
}

bool AdmissibleArray::is_basis() const {
  Integer order = group_.order();
  return gram_det() == order * order * order;
}

LatticeBasis AdmissibleArray::to_basis() const { return LatticeBasis(group_, canonical_matrix()); }

AdmissibleArray make_array(const FiniteAbelianGroup& g,
                           const std::vector<std::vector<std::int64_t>>& labels, IntMatrix m) {
  std::vector<ElementId> ids;
  ids.reserve(labels.size());
  for (const auto& l : labels) ids.push_back(g.id(GroupElement{l}));
  return AdmissibleArray(g, std::move(ids), std::move(m));
}

IntMatrix toeplitz_t(std::int64_t m) {
  if (m < 2) throw Error(ErrorCode::kInvalidArgument, "toeplitz_t needs m >= 2");
  const auto n = static_cast<std::size_t>(m - 1);
  IntMatrix t(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    t(i, i) = -2;
    if (i + 1 < n) t(i, i + 1) = t(i + 1, i) = 1;
  }
  return t;
}

IntMatrix toeplitz_u(std::int64_t m) {
  if (m < 5) throw Error(ErrorCode::kInvalidArgument, "toeplitz_u needs m >= 5");
  const auto n = static_cast<std::size_t>(m - 1);
  IntMatrix u(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    u(i, i) = 1;
    if (i + 1 < n) u(i + 1, i) = 1;
  }
  for (std::size_t i = 0; i < n; ++i) u(i, n - 1) = 0;
  // (0, ..., 0, -1, -1, -1, 0)
  for (std::size_t i = n - 4; i < n - 1; ++i) u(i, n - 1) = -1;
  return u;
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kVerificationFailed, what);
}

void verify_minimal_basis_array(const AdmissibleArray& arr, std::int64_t norm_sq) {
  const std::string name = arr.group().to_string();
  Integer order = arr.group().order();
  require(abs(arr.det_m()) == order, "array for " + name + ": |det M| != |G|");
  require(arr.is_basis(), "array for " + name + ": det of Gram != |G|^3");
  require(arr.common_norm_sq() == norm_sq, "array for " + name + ": column norms are not minimal");
}

struct PrintedRow {
  std::vector<std::int64_t> label;
  std::vector<long> entries;
};

AdmissibleArray from_printed(const FiniteAbelianGroup& g, const std::vector<PrintedRow>& rows) {
  std::vector<std::vector<std::int64_t>> labels;
  IntMatrix m(rows.size(), rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    labels.push_back(rows[r].label);
    for (std::size_t c = 0; c < rows[r].entries.size(); ++c) m(r, c) = rows[r].entries[c];
  }
  return make_array(g, labels, std::move(m));
}

// The three bases of minimal vectors printed for the non-cyclic pairs,
// verbatim (labels and column order as printed).
const std::vector<PrintedRow>& printed_z2xz4() {
  static const std::vector<PrintedRow> rows = {
      {{1, 0}, { 1,  0,  0,  0,  1,  0, -1}},
      {{1, 3}, { 1,  1,  0,  0, -1,  0,  0}},
      {{0, 3}, {-1,  1,  1, -1,  0, -1,  0}},
      {{1, 2}, { 0, -1,  1,  1, -1,  0, -1}},
      {{1, 1}, { 0,  0, -1,  1,  1,  0,  0}},
      {{0, 1}, { 0,  0,  0,  0,  0,  1,  0}},
      {{0, 2}, { 0,  0,  0,  0,  0,  1,  1}},
  };
  return rows;
}

const std::vector<PrintedRow>& printed_z3xz3() {
  static const std::vector<PrintedRow> rows = {
      {{0, 1}, { 1,  0,  0,  0, -1,  0, -1,  0}},
      {{0, 2}, { 0,  1,  1,  0,  0, -1,  0,  0}},
      {{1, 0}, { 1,  0,  0,  1,  1,  1,  0,  0}},
      {{1, 1}, {-1,  0,  0,  1,  0,  0,  0,  0}},
      {{1, 2}, { 0,  0,  0,  0,  0,  0,  1, -1}},
      {{2, 0}, { 0,  1, -1,  0,  0,  0,  0,  1}},
      {{2, 1}, { 0,  0,  1, -1,  1,  0,  0,  0}},
      {{2, 2}, { 0, -1,  0,  0,  0,  1,  1,  1}},
  };
  return rows;
}

const std::vector<PrintedRow>& printed_z4xz4() {
  static const std::vector<PrintedRow> rows = {
      {{0, 1}, { 1,  1,  1,  1,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0}},
      {{0, 2}, { 0,  0,  0,  0,  1,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0}},
      {{0, 3}, { 0,  0,  0,  0,  0,  1,  1,  1,  0,  0,  0,  0,  0,  0,  0}},
      {{1, 0}, { 0, -1,  0,  0,  1, -1,  0,  0,  0,  0,  0,  0,  0,  0,  0}},
      {{1, 1}, { 0,  0,  0,  0,  0,  1,  0,  0,  0,  0,  0,  0,  0,  0,  0}},
      {{1, 2}, { 1,  0,  0,  0, -1,  0,  0,  0,  0,  0,  0, -1,  0, -1,  0}},
      {{1, 3}, {-1,  1,  0,  0,  0,  0,  0,  0,  1,  1,  1,  0, -1,  0,  0}},
      {{2, 0}, { 0,  0,  0, -1,  0,  0,  0,  0,  0,  0,  0,  1,  1,  0,  0}},
      {{2, 1}, { 0,  0,  0,  0,  0,  0,  0,  0,  1,  0,  0,  0,  0,  1,  0}},
      {{2, 2}, { 0,  0,  1,  0,  0,  0,  0,  0,  0,  1,  0,  0,  0,  0,  0}},
      {{2, 3}, { 0,  0, -1,  1,  0,  0,  0,  0,  0,  0,  1,  0,  0,  0, -1}},
      {{3, 0}, { 0,  0,  0,  0,  0,  0, -1,  0, -1,  0,  0,  0,  0,  0,  0}},
      {{3, 1}, { 0,  0,  0,  0,  0,  0,  1, -1,  0, -1,  0,  0,  0,  1,  1}},
      {{3, 2}, { 0,  0,  0,  0,  0,  0,  0,  1,  0,  0, -1,  1,  0,  0,  1}},
      {{3, 3}, { 0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  1,  0,  0}},
  };
  return rows;
}

AdmissibleArray to_array(const FiniteAbelianGroup& g, detail::SubArray sub) {
  return AdmissibleArray(g, std::move(sub.labels), std::move(sub.m));
}

detail::SubArray embed(const AdmissibleArray& arr, const std::vector<ElementId>& into) {
  detail::SubArray sub{{}, arr.m()};
  for (ElementId l : arr.labels()) sub.labels.push_back(into[static_cast<std::size_t>(l)]);
  return sub;
}

}  // namespace

AdmissibleArray cyclic_minimal_array(std::int64_t m) {
  if (m < 5) {
    throw Error(ErrorCode::kInvalidArgument,
                "cyclic construction needs m >= 5 (got " + std::to_string(m) + ")");
  }
  FiniteAbelianGroup g({m});
  std::vector<ElementId> labels(static_cast<std::size_t>(m - 1));
  std::iota(labels.begin(), labels.end(), ElementId{1});
  AdmissibleArray arr(g, std::move(labels), toeplitz_t(m) * toeplitz_u(m));
  Integer expected_det = (m % 2 == 1) ? Integer(m) : Integer(-m);
  require(arr.det_m() == expected_det, "det M_m != (-1)^(m-1) m");
  verify_minimal_basis_array(arr, 4);
  return arr;
}

AdmissibleArray small_group_array(const FiniteAbelianGroup& g) {
  const auto& mod = g.moduli();
  if (mod == std::vector<std::int64_t>{2}) {
    AdmissibleArray arr = make_array(g, {{1}}, IntMatrix{{-2}});
    verify_minimal_basis_array(arr, 8);
    return arr;
  }
  if (mod == std::vector<std::int64_t>{3}) {
    AdmissibleArray arr = make_array(g, {{1}, {2}}, IntMatrix{{-2, 1}, {1, -2}});
    verify_minimal_basis_array(arr, 6);
    return arr;
  }
  if (mod == std::vector<std::int64_t>{2, 2}) {
    AdmissibleArray arr = make_array(g, {{0, 1}, {1, 0}, {1, 1}},
                                     IntMatrix{{1, -1, 1}, {1, 1, -1}, {-1, 1, 1}});
    verify_minimal_basis_array(arr, 4);
    return arr;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "no small-group array for " + g.to_string() + " (only Z2, Z3, Z2xZ2)");
}

AdmissibleArray special_array(const FiniteAbelianGroup& g) {
  const auto& mod = g.moduli();
  const std::vector<PrintedRow>* rows = nullptr;
  if (mod == std::vector<std::int64_t>{2, 4}) rows = &printed_z2xz4();
  if (mod == std::vector<std::int64_t>{3, 3}) rows = &printed_z3xz3();
  if (mod == std::vector<std::int64_t>{4, 4}) rows = &printed_z4xz4();
  if (rows == nullptr) {
    throw Error(ErrorCode::kInvalidArgument,
                "no special array for " + g.to_string() + " (only Z2xZ4, Z3xZ3, Z4xZ4)");
  }
  AdmissibleArray arr = from_printed(g, *rows);
  verify_minimal_basis_array(arr, 4);
  return arr;
}

void detail::require_product_operand(const AdmissibleArray& arr, const char* role) {
  const std::string name = arr.group().to_string();
  Integer order = arr.group().order();
  if (arr.common_norm_sq() != 4) {
    throw Error(ErrorCode::kHypothesisViolation,
                std::string(role) + " array for " + name + " does not consist of vectors of squared norm 4");
  }
  if (abs(arr.det_m()) != order) {
    throw Error(ErrorCode::kHypothesisViolation,
                std::string(role) + " array for " + name + " has |det M| != |G|");
  }
  if (!arr.is_basis()) {
    throw Error(ErrorCode::kHypothesisViolation,
                std::string(role) + " array for " + name + " is not a basis");
  }
}

detail::SubArray detail::combine_in(const FiniteAbelianGroup& ambient, const SubArray& a,
                                    const SubArray& b) {
  const std::size_t n = a.labels.size();
  const std::size_t k = b.labels.size();
  const std::size_t total = n + k + n * k;
  SubArray out{{}, IntMatrix(total, total)};
  out.labels.reserve(total);
  out.labels.insert(out.labels.end(), a.labels.begin(), a.labels.end());
  out.labels.insert(out.labels.end(), b.labels.begin(), b.labels.end());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j) out.labels.push_back(ambient.add(a.labels[i], b.labels[j]));

  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) out.m(r, c) = a.m(r, c);
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = 0; c < k; ++c) out.m(n + r, n + c) = b.m(r, c);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t col = n + k + i * k + j;
      out.m(i, col) = -1;
      out.m(n + j, col) = -1;
      out.m(col, col) = 1;
    }
  return out;
}

detail::SubArray detail::attach_in(const FiniteAbelianGroup& ambient, std::int64_t m,
                                   ElementId z, const SubArray& base) {
  if (m < 2 || m > 4) {
    throw Error(ErrorCode::kInvalidArgument, "attach_small needs m in {2, 3, 4}");
  }
  const std::size_t n = base.labels.size();
  if (n < 3) {
    throw Error(ErrorCode::kHypothesisViolation, "attach_small needs a base with n >= 3");
  }

  // Reorder base rows so the elements the construction singles out come
  // where it expects them: m = 3 wants (g1, -g1, 2g1, ...), m = 4 wants
  // (g1, ..., -g1).
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto position = [&](ElementId e) -> std::size_t {
    for (std::size_t i = 0; i < n; ++i)
      if (base.labels[i] == e) return i;
    throw Error(ErrorCode::kInvalidArgument, "base labels are not closed under the group law");
  };
  if (m == 3 || m == 4) {
    const std::int64_t needed_order = m == 3 ? 4 : 3;
    std::size_t pick = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (ambient.element_order(base.labels[i]) >= needed_order) {
        pick = i;
        break;
      }
    }
    if (pick == n) {
      throw Error(ErrorCode::kHypothesisViolation,
                  m == 3 ? "attaching Z3 needs an element g with 2g not in {0, g, -g}"
                         : "attaching Z4 needs an element g with g != -g");
    }
    const ElementId g1 = base.labels[pick];
    std::vector<std::size_t> front{pick};
    std::vector<std::size_t> back;
    if (m == 3) {
      front.push_back(position(ambient.negate(g1)));
      front.push_back(position(ambient.scale(2, g1)));
    } else {
      back.push_back(position(ambient.negate(g1)));
    }
    order = front;
    for (std::size_t i = 0; i < n; ++i) {
      if (std::find(front.begin(), front.end(), i) != front.end()) continue;
      if (std::find(back.begin(), back.end(), i) != back.end()) continue;
      order.push_back(i);
    }
    order.insert(order.end(), back.begin(), back.end());
  }
  std::vector<ElementId> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = base.labels[order[i]];

  auto elem = [&](std::int64_t a, ElementId x) { return ambient.add(ambient.scale(a, z), x); };
  const std::size_t total = static_cast<std::size_t>(m) * (n + 1) - 1;
  SubArray out{{}, IntMatrix(total, total)};
  std::vector<ElementId>& labels = out.labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(g[i]);
  auto row_of = [&](ElementId e) -> std::size_t {
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == e) return i;
    throw Error(ErrorCode::kInvalidArgument, "internal: missing row label");
  };
  IntMatrix& a = out.m;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) a(r, c) = base.m(order[r], c);

  std::size_t col = n;
  // Sets entries of a column given as (label, value) pairs.
  auto put = [&](std::initializer_list<std::pair<ElementId, long>> entries) {
    for (auto [label, value] : entries) a(row_of(label), col) = value;
    ++col;
  };

  if (m == 2) {
    labels.push_back(elem(1, 0));
    for (std::size_t i = 0; i < n; ++i) labels.push_back(elem(1, g[i]));
    put({{g[0], -1}, {elem(1, 0), 1}, {elem(1, g[0]), 1}});
    put({{g[0], -1}, {elem(1, 0), -1}, {elem(1, g[0]), 1}});
    for (std::size_t k = 1; k < n; ++k) put({{g[k], -1}, {elem(1, 0), -1}, {elem(1, g[k]), 1}});
  } else if (m == 3) {
    labels.push_back(elem(1, 0));
    labels.push_back(elem(1, g[0]));
    labels.push_back(elem(2, g[0]));
    for (std::size_t k = 1; k < n; ++k) labels.push_back(elem(1, g[k]));
    labels.push_back(elem(2, 0));
    for (std::size_t k = 1; k < n; ++k) labels.push_back(elem(2, g[k]));
    put({{elem(1, 0), 1}, {elem(1, g[0]), 1}, {elem(2, g[0]), -1}});
    put({{g[2], -1}, {elem(1, g[0]), 1}, {elem(2, g[0]), 1}});
    put({{g[0], -1}, {elem(1, 0), -1}, {elem(1, g[0]), 1}});
    for (std::size_t k = 1; k < n; ++k) put({{g[k], -1}, {elem(1, 0), -1}, {elem(1, g[k]), 1}});
    put({{g[1], -1}, {elem(2, g[0]), -1}, {elem(2, 0), 1}});
    for (std::size_t k = 1; k < n; ++k) {
      const ElementId diff = ambient.add(g[k], ambient.negate(g[0]));
      put({{diff, -1}, {elem(2, g[0]), -1}, {elem(2, g[k]), 1}});
    }
  } else {
    for (std::int64_t s = 1; s <= 3; ++s) labels.push_back(elem(s, 0));
    for (std::size_t k = 0; k < n; ++k)
      for (std::int64_t s = 1; s <= 3; ++s) labels.push_back(elem(s, g[k]));
    put({{elem(1, 0), 1}, {elem(2, 0), 1}, {elem(3, 0), -1}});
    put({{elem(1, 0), -1}, {elem(2, 0), 1}, {elem(3, 0), 1}});
    put({{g[0], -1}, {g[n - 1], -1}, {elem(1, 0), 1}, {elem(3, 0), 1}});
    for (std::size_t k = 0; k < n; ++k)
      for (std::int64_t s = 1; s <= 3; ++s) put({{g[k], -1}, {elem(s, 0), -1}, {elem(s, g[k]), 1}});
  }
  if (col != total || labels.size() != total) {
    throw Error(ErrorCode::kVerificationFailed, "internal: attach_small shape mismatch");
  }
  return out;
}

AdmissibleArray combine_product(const AdmissibleArray& arr_g, const AdmissibleArray& arr_h) {
  detail::require_product_operand(arr_g, "left");
  detail::require_product_operand(arr_h, "right");
  DirectProduct k = direct_product(arr_g.group(), arr_h.group());
  AdmissibleArray out =
      to_array(k.group, detail::combine_in(k.group, embed(arr_g, k.left), embed(arr_h, k.right)));
  verify_minimal_basis_array(out, 4);
  return out;
}

AdmissibleArray attach_small(std::int64_t m, const AdmissibleArray& arr_g) {
  if (m < 2 || m > 4) {
    throw Error(ErrorCode::kInvalidArgument, "attach_small needs m in {2, 3, 4}");
  }
  detail::require_product_operand(arr_g, "base");
  DirectProduct k = direct_product(FiniteAbelianGroup({m}), arr_g.group());
  AdmissibleArray out =
      to_array(k.group, detail::attach_in(k.group, m, k.left[1], embed(arr_g, k.right)));
  verify_minimal_basis_array(out, 4);
  return out;
}

}  // namespace abelat
