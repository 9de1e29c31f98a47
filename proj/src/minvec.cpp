#include "abelat/minvec.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "abelat/error.hpp"
#include "abelat/exact_linalg.hpp"

namespace abelat {

namespace {

constexpr std::int64_t kMaxNormCeiling = 8;

void check_threshold(std::int64_t max_norm_sq) {
  if (max_norm_sq != 2 && max_norm_sq != 4 && max_norm_sq != 6 && max_norm_sq != 8) {
    throw Error(ErrorCode::kInvalidArgument,
                "max_norm_sq must be one of 2, 4, 6, 8 (got " + std::to_string(max_norm_sq) + ")");
  }
}

std::int64_t pattern_norm(const SupportPattern& p) {
  std::int64_t s = 0;
  for (auto [v, k] : p) s += v * v * k;
  return s;
}

bool is_norm4_pair_pattern(const SupportPattern& p) {
  return p.size() == 2 && p.count(1) && p.count(-1) && p.at(1) == 2 && p.at(-1) == 2;
}

// Sink receives each vector found; returning false stops the search.
using Sink = std::function<bool(const std::vector<std::int64_t>&)>;

// Places the pattern's values on increasing coordinates and keeps the
// placements whose group sum vanishes.
bool place_pattern(const FiniteAbelianGroup& g, const SupportPattern& pattern,
                   const Sink& sink) {
  const auto dim = static_cast<std::size_t>(g.n()) + 1;
  std::vector<std::pair<std::int64_t, int>> remaining(pattern.begin(), pattern.end());
  int left = 0;
  for (auto& [v, k] : remaining) left += k;
  std::vector<std::int64_t> x(dim, 0);

  std::function<bool(std::size_t, int, ElementId)> rec = [&](std::size_t c, int todo,
                                                            ElementId acc) -> bool {
    if (todo == 0) return acc != 0 || sink(x);
    if (dim - c < static_cast<std::size_t>(todo)) return true;
    if (dim - c > static_cast<std::size_t>(todo) && !rec(c + 1, todo, acc)) return false;
    const ElementId w = weight_of(g, c);
    for (auto& [v, k] : remaining) {
      if (k == 0) continue;
      --k;
      x[c] = v;
      bool go = rec(c + 1, todo - 1, g.add(acc, g.scale(v, w)));
      x[c] = 0;
      ++k;
      if (!go) return false;
    }
    return true;
  };
  return rec(0, left, 0);
}

// {1, 1, -1, -1}: two disjoint coordinate pairs with equal weight sums.
bool pair_table_norm4(const FiniteAbelianGroup& g, const Sink& sink) {
  const auto dim = static_cast<std::size_t>(g.n()) + 1;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> buckets(
      static_cast<std::size_t>(g.order()));
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = a + 1; b < dim; ++b)
      buckets[static_cast<std::size_t>(g.add(weight_of(g, a), weight_of(g, b)))].push_back({a, b});
  std::vector<std::int64_t> x(dim, 0);
  for (const auto& bucket : buckets) {
    for (const auto& p : bucket) {
      for (const auto& q : bucket) {
        if (p.first == q.first || p.first == q.second || p.second == q.first ||
            p.second == q.second) {
          continue;
        }
        x[p.first] = x[p.second] = 1;
        x[q.first] = x[q.second] = -1;
        bool go = sink(x);
        x[p.first] = x[p.second] = x[q.first] = x[q.second] = 0;
        if (!go) return false;
      }
    }
  }
  return true;
}

bool search(const FiniteAbelianGroup& g, std::int64_t max_norm_sq, std::int64_t min_norm_sq,
            const Sink& sink) {
  for (const SupportPattern& p : support_patterns(max_norm_sq)) {
    if (pattern_norm(p) < min_norm_sq) continue;
    bool go = is_norm4_pair_pattern(p) ? pair_table_norm4(g, sink) : place_pattern(g, p, sink);
    if (!go) return false;
  }
  return true;
}

}  // namespace

std::vector<SupportPattern> support_patterns(std::int64_t max_norm_sq) {
  std::vector<SupportPattern> out;
  SupportPattern cur;
  std::vector<std::int64_t> values;
  for (std::int64_t v = 1; v * v <= max_norm_sq; ++v) {
    values.push_back(v);
    values.push_back(-v);
  }
  std::sort(values.begin(), values.end());
  // multisets over `values` with bounded norm, chosen in nondecreasing index
  std::function<void(std::size_t, std::int64_t, std::int64_t)> rec =
      [&](std::size_t from, std::int64_t norm, std::int64_t sum) {
        if (!cur.empty() && sum == 0) out.push_back(cur);
        for (std::size_t i = from; i < values.size(); ++i) {
          std::int64_t v = values[i];
          if (norm + v * v > max_norm_sq) continue;
          ++cur[v];
          rec(i, norm + v * v, sum + v);
          if (--cur[v] == 0) cur.erase(v);
        }
      };
  rec(0, 0, 0);
  std::sort(out.begin(), out.end(), [](const SupportPattern& a, const SupportPattern& b) {
    std::int64_t na = pattern_norm(a), nb = pattern_norm(b);
    if (na != nb) return na < nb;
    return a < b;
  });
  return out;
}

std::vector<LatticeVector> enumerate_short_vectors(const FiniteAbelianGroup& g,
                                                   std::int64_t max_norm_sq) {
  check_threshold(max_norm_sq);
  std::vector<LatticeVector> out;
  search(g, max_norm_sq, 0, [&](const std::vector<std::int64_t>& x) {
    out.push_back({x});
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::int64_t minimum_norm_sq(const FiniteAbelianGroup& g) {
  for (std::int64_t t = 2; t <= kMaxNormCeiling; t += 2) {
    bool found = false;
    search(g, t, t, [&](const std::vector<std::int64_t>&) {
      found = true;
      return false;
    });
    if (found) return t;
  }
  // 2 * (e_{g} - e_last) with 2g = 0, or (m e_g ...) always gives norm <= 8
  throw Error(ErrorCode::kVerificationFailed,
              "no lattice vector of squared norm <= 8 in L(" + g.to_string() + ")");
}

MinimalVectorReport minimum_distance(const FiniteAbelianGroup& g) {
  MinimalVectorReport report;
  for (std::int64_t t = 4; t <= kMaxNormCeiling; t += 2) {
    std::vector<LatticeVector> found = enumerate_short_vectors(g, t);
    if (found.empty()) continue;
    report.d_squared = found.front().norm_sq();
    for (const LatticeVector& v : found) report.d_squared = std::min(report.d_squared, v.norm_sq());
    for (LatticeVector& v : found)
      if (v.norm_sq() == report.d_squared) report.vectors.push_back(std::move(v));
    break;
  }
  if (report.vectors.empty()) {
    throw Error(ErrorCode::kVerificationFailed,
                "no lattice vector of squared norm <= 8 in L(" + g.to_string() + ")");
  }
  std::vector<std::vector<std::int64_t>> cols;
  cols.reserve(report.vectors.size());
  for (const LatticeVector& v : report.vectors) cols.push_back(v.coords);
  report.rank = integer_rank(IntMatrix::from_columns(cols));
  report.well_rounded = static_cast<std::int64_t>(report.rank) == g.n();
  return report;
}

bool well_rounded(const FiniteAbelianGroup& g) { return minimum_distance(g).well_rounded; }

}  // namespace abelat
