#include "abelat/automorphism.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

#include "abelat/error.hpp"
#include "abelat/lattice.hpp"

namespace abelat {

bool PermutationSet::contains_identity() const {
  Permutation id(static_cast<std::size_t>(n));
  std::iota(id.begin(), id.end(), std::int64_t{1});
  return perms.count(id) == 1;
}

bool PermutationSet::is_group() const {
  if (!contains_identity()) return false;
  for (const auto& a : perms) {
    if (perms.count(inverse(a)) == 0) return false;
    for (const auto& b : perms) {
      if (perms.count(compose(a, b)) == 0) return false;
    }
  }
  return true;
}

Permutation compose(const Permutation& a, const Permutation& b) {
  Permutation out(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = a[static_cast<std::size_t>(b[i] - 1)];
  return out;
}

Permutation inverse(const Permutation& p) {
  Permutation out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    out[static_cast<std::size_t>(p[i] - 1)] = static_cast<std::int64_t>(i + 1);
  }
  return out;
}

std::string cycle_notation(const Permutation& p) {
  std::ostringstream os;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == static_cast<std::int64_t>(i + 1)) continue;
    os << '(';
    std::size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      if (!first) os << ' ';
      os << j + 1;
      first = false;
      j = static_cast<std::size_t>(p[j] - 1);
    }
    os << ')';
  }
  const std::string s = os.str();
  return s.empty() ? "()" : s;
}

PermutationSet enumerate_group_automorphisms(const FiniteAbelianGroup& g,
                                             std::int64_t order_cap) {
  if (g.order() > order_cap) {
    throw Error(ErrorCode::kCapExceeded, "|G| = " + std::to_string(g.order()) +
                                             " exceeds the automorphism cap " +
                                             std::to_string(order_cap));
  }
  const std::size_t k = g.rank();
  const auto order = static_cast<std::size_t>(g.order());
  PermutationSet out;
  out.n = g.n();

  // The subgroup spanned by the first f generators is carried along with
  // its images, so injectivity is checked level by level.
  std::vector<ElementId> src{0};
  std::vector<ElementId> dst{0};

  auto recurse = [&](auto&& self, std::size_t f, const std::vector<ElementId>& s,
                     const std::vector<ElementId>& d) -> void {
    if (f == k) {
      Permutation p(static_cast<std::size_t>(g.n()));
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != 0) p[static_cast<std::size_t>(s[i] - 1)] = d[i];
      }
      if (out.perms.size() >= kMaxPermutations) {
        throw Error(ErrorCode::kCapExceeded, "Aut(" + g.to_string() + ") is too large to list");
      }
      out.perms.insert(std::move(p));
      return;
    }
    const std::int64_t m = g.moduli()[f];
    const ElementId gen = g.standard_generator(f);
    for (ElementId h = 1; h < static_cast<ElementId>(order); ++h) {
      if (g.element_order(h) != m) continue;
      std::vector<ElementId> s2;
      std::vector<ElementId> d2;
      s2.reserve(s.size() * static_cast<std::size_t>(m));
      d2.reserve(s2.capacity());
      std::vector<bool> hit(order, false);
      bool injective = true;
      for (std::int64_t r = 0; r < m && injective; ++r) {
        const ElementId sr = g.scale(r, gen);
        const ElementId dr = g.scale(r, h);
        for (std::size_t i = 0; i < s.size(); ++i) {
          const ElementId img = g.add(d[i], dr);
          if (hit[static_cast<std::size_t>(img)]) {
            injective = false;
            break;
          }
          hit[static_cast<std::size_t>(img)] = true;
          s2.push_back(g.add(s[i], sr));
          d2.push_back(img);
        }
      }
      if (!injective) continue;
      self(self, f + 1, s2, d2);
    }
  };
  recurse(recurse, 0, src, dst);
  return out;
}

PermutationSet lattice_coordinate_stabilizer(const FiniteAbelianGroup& g, std::int64_t n_cap) {
  if (g.n() > n_cap) {
    throw Error(ErrorCode::kCapExceeded, "n = " + std::to_string(g.n()) +
                                             " exceeds the stabilizer cap " +
                                             std::to_string(n_cap));
  }
  const auto n = static_cast<std::size_t>(g.n());
  const LatticeBasis basis = canonical_basis(g);
  const IntMatrix& b = basis.matrix();

  // Each column becomes checkable once every index in its support (outside
  // the balancing slot) has an image; assign supports of early columns first.
  std::vector<std::size_t> assign_order;
  std::vector<bool> placed(n, false);
  std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> supports(b.cols());
  for (std::size_t c = 0; c < b.cols(); ++c) {
    for (std::size_t r = 0; r < n; ++r) {
      if (sgn(b(r, c)) == 0) continue;
      supports[c].emplace_back(r, b(r, c).get_si());
      if (!placed[r]) {
        placed[r] = true;
        assign_order.push_back(r);
      }
    }
  }
  for (std::size_t r = 0; r < n; ++r)
    if (!placed[r]) assign_order.push_back(r);
  std::vector<std::size_t> rank_of(n);
  for (std::size_t i = 0; i < n; ++i) rank_of[assign_order[i]] = i;
  // checks[d] = columns whose support is complete after depth d.
  std::vector<std::vector<std::size_t>> checks(n);
  for (std::size_t c = 0; c < b.cols(); ++c) {
    std::size_t last = 0;
    for (const auto& [r, v] : supports[c]) last = std::max(last, rank_of[r]);
    checks[last].push_back(c);
  }

  PermutationSet out;
  out.n = g.n();
  Permutation sigma(n, 0);
  std::vector<bool> used(n + 1, false);
  auto recurse = [&](auto&& self, std::size_t depth) -> void {
    if (depth == n) {
      out.perms.insert(sigma);
      return;
    }
    const std::size_t i = assign_order[depth];
    for (std::int64_t target = 1; target <= g.n(); ++target) {
      if (used[static_cast<std::size_t>(target)]) continue;
      sigma[i] = target;
      bool ok = true;
      for (std::size_t c : checks[depth]) {
        ElementId acc = 0;
        for (const auto& [r, v] : supports[c]) acc = g.add(acc, g.scale(v, sigma[r]));
        if (acc != 0) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      used[static_cast<std::size_t>(target)] = true;
      self(self, depth + 1);
      used[static_cast<std::size_t>(target)] = false;
    }
    sigma[i] = 0;
  };
  recurse(recurse, 0);
  return out;
}

std::vector<Permutation> generating_set(const PermutationSet& s) {
  std::vector<Permutation> gens;
  Permutation id(static_cast<std::size_t>(s.n));
  std::iota(id.begin(), id.end(), std::int64_t{1});
  std::set<Permutation> closure{id};
  for (const auto& p : s.perms) {
    if (closure.count(p)) continue;
    gens.push_back(p);
    std::deque<Permutation> queue(closure.begin(), closure.end());
    while (!queue.empty()) {
      Permutation x = queue.front();
      queue.pop_front();
      for (const auto& gen : gens) {
        Permutation y = compose(gen, x);
        if (closure.insert(y).second) queue.push_back(std::move(y));
      }
    }
  }
  return gens;
}

AutomorphismComparison verify_automorphism_correspondence(const FiniteAbelianGroup& g,
                                                          std::int64_t n_cap,
                                                          std::int64_t order_cap) {
  const PermutationSet aut = enumerate_group_automorphisms(g, order_cap);
  const PermutationSet stab = lattice_coordinate_stabilizer(g, n_cap);
  AutomorphismComparison out;
  out.equal = aut.perms == stab.perms;
  out.order = aut.perms.size();
  out.generators = generating_set(aut);
  return out;
}

}  // namespace abelat
