#include "abelat/basis_builder.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "json.hpp"

#include "abelat/error.hpp"
#include "abelat/minvec.hpp"
#include "arrays_internal.hpp"
#include "rng.hpp"

namespace abelat {

namespace {

// A block array for a subgroup H of the target group, together with the
// injection H -> G given by the images of H's standard generators.
struct Block {
  AdmissibleArray array;
  std::vector<ElementId> generator_images;

  std::string spec() const { return array.group().to_string(); }
};

detail::SubArray embed_block(const FiniteAbelianGroup& ambient, const Block& block) {
  const FiniteAbelianGroup& h = block.array.group();
  detail::SubArray sub{{}, block.array.m()};
  for (ElementId label : block.array.labels()) {
    const GroupElement e = h.element(label);
    ElementId image = 0;
    for (std::size_t f = 0; f < h.rank(); ++f) {
      image = ambient.add(image, ambient.scale(e.residues[f], block.generator_images[f]));
    }
    sub.labels.push_back(image);
  }
  return sub;
}

std::string spec_of(std::vector<std::int64_t> moduli) {
  return FiniteAbelianGroup(std::move(moduli)).to_string();
}

LatticeBasis finish(const FiniteAbelianGroup& g, detail::SubArray sub) {
  AdmissibleArray arr(g, std::move(sub.labels), std::move(sub.m));
  const std::int64_t d_sq = minimum_norm_sq(g);
  if (arr.common_norm_sq() != d_sq) {
    throw Error(ErrorCode::kVerificationFailed,
                "constructed array for " + g.to_string() + " does not consist of minimal vectors");
  }
  return arr.to_basis();
}

// The constructive route. Throws kHypothesisViolation when some lemma does
// not apply; the caller then switches to the search.
LatticeBasis construct(const FiniteAbelianGroup& g, BuildTrace& trace) {
  std::map<std::int64_t, std::vector<std::size_t>> slots;
  for (std::size_t f = 0; f < g.rank(); ++f) slots[g.moduli()[f]].push_back(f);
  auto gen = [&](std::size_t slot) { return g.standard_generator(slot); };
  auto take = [&](std::int64_t m) {
    std::size_t s = slots[m].back();
    slots[m].pop_back();
    return s;
  };
  auto count = [&](std::int64_t m) { return slots.count(m) ? slots[m].size() : std::size_t{0}; };

  std::vector<Block> blocks;
  auto add_cyclic = [&](std::int64_t m, ElementId image) {
    blocks.push_back({cyclic_minimal_array(m), {image}});
    trace.steps.push_back({"cyclic-toeplitz", {spec_of({m})}});
  };
  auto add_pair = [&](std::int64_t a, std::int64_t b) {
    const FiniteAbelianGroup h({a, b});
    const bool small = a == 2 && b == 2;
    const std::size_t sa = take(a);
    const std::size_t sb = take(b);
    blocks.push_back({small ? small_group_array(h) : special_array(h), {gen(sa), gen(sb)}});
    trace.steps.push_back({small ? "small-array" : "special-array", {h.to_string()}});
  };

  for (auto& [m, list] : slots) {
    if (m < 5) continue;
    for (std::size_t s : list) add_cyclic(m, gen(s));
    list.clear();
  }
  if (count(3) % 2 == 1 && (count(2) > 0 || count(4) > 0)) {
    const std::int64_t partner = count(2) > 0 ? 2 : 4;
    const std::size_t s3 = take(3);
    const std::size_t sp = take(partner);
    trace.steps.push_back({"merge-coprime", {spec_of({partner}), spec_of({3})}});
    add_cyclic(3 * partner, g.add(gen(s3), gen(sp)));
  }
  while (count(4) >= 2) add_pair(4, 4);
  while (count(3) >= 2) add_pair(3, 3);
  if (count(4) == 1 && count(2) >= 1) add_pair(2, 4);
  while (count(2) >= 2) add_pair(2, 2);

  std::optional<std::int64_t> leftover;
  std::optional<std::size_t> leftover_slot;
  for (std::int64_t m : {2, 3, 4}) {
    if (count(m) == 1) {
      leftover = m;
      leftover_slot = take(m);
    }
  }

  if (blocks.empty()) {
    if (!leftover || *leftover == 4) {
      throw Error(ErrorCode::kNotWellRounded, "L(Z4) is not well-rounded");
    }
    trace.steps.push_back({"small-array", {g.to_string()}});
    return small_group_array(g).to_basis();
  }

  std::stable_sort(blocks.begin(), blocks.end(), [](const Block& a, const Block& b) {
    if (a.array.group().order() != b.array.group().order()) {
      return a.array.group().order() > b.array.group().order();
    }
    return a.spec() < b.spec();
  });

  detail::SubArray acc = embed_block(g, blocks.front());
  std::vector<std::int64_t> acc_moduli = blocks.front().array.group().moduli();
  for (std::size_t i = 1; i < blocks.size(); ++i) {
    detail::require_product_operand(blocks[i].array, "block");
    trace.steps.push_back({"product-lemma", {spec_of(acc_moduli), blocks[i].spec()}});
    acc = detail::combine_in(g, acc, embed_block(g, blocks[i]));
    const auto& more = blocks[i].array.group().moduli();
    acc_moduli.insert(acc_moduli.end(), more.begin(), more.end());
  }
  if (leftover) {
    trace.steps.push_back({"attach-small", {spec_of({*leftover}), spec_of(acc_moduli)}});
    acc = detail::attach_in(g, *leftover, gen(*leftover_slot), acc);
  }
  return finish(g, std::move(acc));
}

using RationalMatrix = std::vector<std::vector<Rational>>;

// Coefficients of a lattice vector with respect to the canonical basis,
// stored sparsely.
using SparseCoeffs = std::vector<std::pair<std::size_t, Integer>>;

SparseCoeffs sparse_coefficients(const FiniteAbelianGroup& g, const LatticeVector& v) {
  std::vector<Integer> dense = canonical_coordinates(g, v.coords);
  SparseCoeffs out;
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (sgn(dense[i]) != 0) out.emplace_back(i, dense[i]);
  }
  return out;
}

// Gauss-Jordan inverse over Q; returns nullopt for a singular matrix.
std::optional<RationalMatrix> invert(RationalMatrix a, Rational& det) {
  const std::size_t n = a.size();
  RationalMatrix inv(n, std::vector<Rational>(n, 0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(a[p][c]) == 0) ++p;
    if (p == n) return std::nullopt;
    if (p != c) {
      std::swap(a[p], a[c]);
      std::swap(inv[p], inv[c]);
      det = -det;
    }
    const Rational pivot = a[c][c];
    det *= pivot;
    for (std::size_t j = 0; j < n; ++j) {
      a[c][j] /= pivot;
      inv[c][j] /= pivot;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || sgn(a[r][c]) == 0) continue;
      const Rational f = a[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        if (sgn(a[c][j]) != 0) a[r][j] -= f * a[c][j];
        if (sgn(inv[c][j]) != 0) inv[r][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

}  // namespace

BuildResult build_minimal_basis(const FiniteAbelianGroup& g, std::uint64_t seed,
                                const FallbackOptions& options) {
  if (g.moduli() == std::vector<std::int64_t>{4}) {
    throw Error(ErrorCode::kNotWellRounded,
                "L(Z4) is not well-rounded: its minimal vectors span a proper subspace");
  }
  BuildTrace trace;
  trace.seed = seed;
  try {
    LatticeBasis basis = construct(g, trace);
    return {std::move(basis), std::move(trace)};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kHypothesisViolation) throw;
    trace.steps.push_back({"fallback-greedy", {g.to_string(), e.what()}});
    trace.fallback_used = true;
    LatticeBasis basis = fallback_greedy_basis(g, seed, options);
    return {std::move(basis), std::move(trace)};
  }
}

LatticeBasis fallback_greedy_basis(const FiniteAbelianGroup& g, std::uint64_t seed,
                                   const FallbackOptions& options) {
  if (options.restarts < 1 || options.swap_factor < 1) {
    throw Error(ErrorCode::kInvalidArgument, "restarts and swap factor must be positive");
  }
  const MinimalVectorReport report = minimum_distance(g);
  if (!report.well_rounded) {
    throw Error(ErrorCode::kNotWellRounded, "L(" + g.to_string() + ") is not well-rounded");
  }
  const auto n = static_cast<std::size_t>(g.n());
  const std::vector<LatticeVector>& s = report.vectors;
  std::vector<SparseCoeffs> coeffs;
  coeffs.reserve(s.size());
  for (const auto& v : s) coeffs.push_back(sparse_coefficients(g, v));

  detail::Rng rng(seed);
  const std::uint64_t steps = static_cast<std::uint64_t>(options.swap_factor) * n * n;

  for (int restart = 0; restart < options.restarts; ++restart) {
    std::vector<std::size_t> order(s.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    rng.shuffle(order);

    // Grow an independent set by elimination against the rows kept so far.
    std::vector<std::size_t> chosen;
    std::vector<std::pair<std::size_t, std::vector<Rational>>> echelon;
    for (std::size_t idx : order) {
      std::vector<Rational> v(n, 0);
      for (const auto& [i, x] : coeffs[idx]) v[i] = x;
      for (const auto& [pivot, row] : echelon) {
        if (sgn(v[pivot]) == 0) continue;
        const Rational f = v[pivot] / row[pivot];
        for (std::size_t j = 0; j < n; ++j) {
          if (sgn(row[j]) != 0) v[j] -= f * row[j];
        }
      }
      auto nz = std::find_if(v.begin(), v.end(), [](const Rational& x) { return sgn(x) != 0; });
      if (nz == v.end()) continue;
      echelon.emplace_back(static_cast<std::size_t>(nz - v.begin()), std::move(v));
      chosen.push_back(idx);
      if (chosen.size() == n) break;
    }
    if (chosen.size() < n) {
      throw Error(ErrorCode::kVerificationFailed, "minimal vectors do not span");
    }

    RationalMatrix c(n, std::vector<Rational>(n, 0));
    for (std::size_t col = 0; col < n; ++col) {
      for (const auto& [i, x] : coeffs[chosen[col]]) c[i][col] = x;
    }
    Rational det;
    std::optional<RationalMatrix> inv = invert(std::move(c), det);
    if (!inv) throw Error(ErrorCode::kVerificationFailed, "internal: dependent start set");
    RationalMatrix& ci = *inv;

    std::vector<Rational> y(n);
    for (std::uint64_t step = 0; step < steps && abs(det) != 1; ++step) {
      const std::size_t idx = static_cast<std::size_t>(rng.index(s.size()));
      for (std::size_t r = 0; r < n; ++r) {
        y[r] = 0;
        for (const auto& [i, x] : coeffs[idx]) {
          if (sgn(ci[r][i]) != 0) y[r] += ci[r][i] * x;
        }
      }
      // A swap at column i multiplies the index by |y_i|.
      std::optional<std::size_t> best;
      std::vector<std::size_t> plateau;
      std::size_t support = 0;
      for (std::size_t r = 0; r < n; ++r) {
        if (sgn(y[r]) == 0) continue;
        ++support;
        const Rational a = abs(y[r]);
        if (a < 1 && (!best || a < abs(y[*best]))) best = r;
        if (a == 1) plateau.push_back(r);
      }
      std::optional<std::size_t> swap_at = best;
      if (!swap_at && support > 1 && !plateau.empty() && rng.index(2) == 0) {
        swap_at = plateau[static_cast<std::size_t>(rng.index(plateau.size()))];
      }
      if (!swap_at) continue;
      const std::size_t p = *swap_at;
      const Rational yp = y[p];
      for (std::size_t j = 0; j < n; ++j) ci[p][j] /= yp;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == p || sgn(y[r]) == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (sgn(ci[p][j]) != 0) ci[r][j] -= y[r] * ci[p][j];
        }
      }
      det *= yp;
      chosen[p] = idx;
    }
    if (abs(det) != 1) continue;

    IntMatrix b(n + 1, n);
    for (std::size_t col = 0; col < n; ++col) {
      const auto& v = s[chosen[col]].coords;
      for (std::size_t r = 0; r <= n; ++r) b(r, col) = static_cast<long>(v[r]);
    }
    return LatticeBasis(g, std::move(b));
  }
  throw Error(ErrorCode::kBudgetExhausted,
              "no basis of minimal vectors found for " + g.to_string() + " within " +
                  std::to_string(options.restarts) + " restarts (seed " + std::to_string(seed) +
                  ")");
}

std::string trace_to_json(const BuildTrace& trace) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& step : trace.steps) {
    steps.push_back({{"tag", step.tag}, {"operands", step.operands}});
  }
  nlohmann::json j = {
      {"steps", steps}, {"fallback_used", trace.fallback_used}, {"seed", trace.seed}};
  return j.dump(2);
}

}  // namespace abelat
