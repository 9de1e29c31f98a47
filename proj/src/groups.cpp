#include "abelat/groups.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <limits>
#include <numeric>

#include "abelat/error.hpp"

namespace abelat {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return "parse_error";
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kNotWellRounded: return "not_well_rounded";
    case ErrorCode::kHypothesisViolation: return "hypothesis_violation";
    case ErrorCode::kCapExceeded: return "cap_exceeded";
    case ErrorCode::kBudgetExhausted: return "budget_exhausted";
    case ErrorCode::kVerificationFailed: return "verification_failed";
  }
  return "unknown";
}

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<std::int64_t> moduli)
    : moduli_(std::move(moduli)) {
  if (moduli_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "group needs at least one factor");
  }
  std::sort(moduli_.begin(), moduli_.end());
  for (std::int64_t m : moduli_) {
    if (m < 2) {
      throw Error(ErrorCode::kInvalidArgument,
                  "modulus " + std::to_string(m) + " < 2 (trivial factors are rejected)");
    }
    if (order_ > std::numeric_limits<std::int32_t>::max() / m) {
      throw Error(ErrorCode::kInvalidArgument, "group order too large");
    }
    order_ *= m;
  }
  place_.assign(moduli_.size(), 1);
  for (std::size_t i = moduli_.size(); i-- > 1;) {
    place_[i - 1] = place_[i] * moduli_[i];
  }
}

GroupElement FiniteAbelianGroup::element(ElementId id) const {
  GroupElement g;
  g.residues.resize(moduli_.size());
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    g.residues[i] = (id / place_[i]) % moduli_[i];
  }
  return g;
}

ElementId FiniteAbelianGroup::id(const GroupElement& g) const {
  if (g.residues.size() != moduli_.size()) {
    throw Error(ErrorCode::kInvalidArgument, "element has wrong number of residues");
  }
  ElementId code = 0;
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    std::int64_t r = g.residues[i] % moduli_[i];
    if (r < 0) r += moduli_[i];
    code += r * place_[i];
  }
  return code;
}

ElementId FiniteAbelianGroup::add(ElementId a, ElementId b) const {
  ElementId code = 0;
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    std::int64_t r = (a / place_[i]) % moduli_[i] + (b / place_[i]) % moduli_[i];
    if (r >= moduli_[i]) r -= moduli_[i];
    code += r * place_[i];
  }
  return code;
}

ElementId FiniteAbelianGroup::negate(ElementId a) const {
  ElementId code = 0;
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    std::int64_t r = (a / place_[i]) % moduli_[i];
    code += ((moduli_[i] - r) % moduli_[i]) * place_[i];
  }
  return code;
}

ElementId FiniteAbelianGroup::scale(std::int64_t k, ElementId a) const {
  ElementId code = 0;
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    std::int64_t r = (a / place_[i]) % moduli_[i];
    std::int64_t s = ((k % moduli_[i]) * r) % moduli_[i];
    if (s < 0) s += moduli_[i];
    code += s * place_[i];
  }
  return code;
}

std::int64_t FiniteAbelianGroup::element_order(ElementId a) const {
  std::int64_t result = 1;
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    std::int64_t r = (a / place_[i]) % moduli_[i];
    std::int64_t ord = moduli_[i] / std::gcd(r, moduli_[i]);
    result = std::lcm(result, ord);
  }
  return result;
}

ElementId FiniteAbelianGroup::standard_generator(std::size_t factor) const {
  return place_.at(factor);
}

std::string FiniteAbelianGroup::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    if (i) s += 'x';
    s += 'Z';
    s += std::to_string(moduli_[i]);
  }
  return s;
}

FiniteAbelianGroup parse_group(std::string_view spec) {
  std::string text;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(spec[i]);
    // U+00D7 MULTIPLICATION SIGN in UTF-8
    if (c == 0xC3 && i + 1 < spec.size() &&
        static_cast<unsigned char>(spec[i + 1]) == 0x97) {
      text += 'x';
      ++i;
      continue;
    }
    if (std::isspace(c)) continue;
    text += static_cast<char>(std::tolower(c));
  }
  if (text.empty()) throw Error(ErrorCode::kParse, "empty group spec");

  std::vector<std::int64_t> moduli;
  std::size_t pos = 0;
  while (true) {
    std::size_t end = text.find_first_of("x,", pos);
    std::string token = text.substr(pos, end == std::string::npos ? end : end - pos);
    std::string digits = (!token.empty() && token[0] == 'z') ? token.substr(1) : token;
    if (digits.empty() || digits.size() > 9 ||
        !std::all_of(digits.begin(), digits.end(),
                     [](unsigned char c) { return std::isdigit(c); })) {
      throw Error(ErrorCode::kParse, "malformed group factor '" + token +
                                         "' in spec '" + std::string(spec) + "'");
    }
    std::int64_t m = std::stoll(digits);
    if (m < 2) {
      throw Error(ErrorCode::kParse, "modulus " + std::to_string(m) +
                                         " < 2 in spec '" + std::string(spec) + "'");
    }
    moduli.push_back(m);
    if (end == std::string::npos) break;
    pos = end + 1;
  }
  return FiniteAbelianGroup(std::move(moduli));
}

std::vector<GroupElement> enumerate_elements(const FiniteAbelianGroup& g) {
  std::vector<GroupElement> out;
  out.reserve(static_cast<std::size_t>(g.order()));
  for (ElementId id = 0; id < g.order(); ++id) out.push_back(g.element(id));
  return out;
}

ElementOps element_ops(const FiniteAbelianGroup& g, const GroupElement& a,
                       const GroupElement& b) {
  ElementId ia = g.id(a);
  ElementId ib = g.id(b);
  return {g.element(g.add(ia, ib)), g.element(g.negate(ia)), g.element_order(ia)};
}

DirectProduct direct_product(const FiniteAbelianGroup& a,
                             const FiniteAbelianGroup& b) {
  // Slot assignment: stable sort of (modulus, source) keeps every factor of
  // `a` ahead of an equal factor of `b`.
  struct Slot {
    std::int64_t modulus;
    int side;
    std::size_t index;
  };
  std::vector<Slot> slots;
  for (std::size_t i = 0; i < a.rank(); ++i) slots.push_back({a.moduli()[i], 0, i});
  for (std::size_t i = 0; i < b.rank(); ++i) slots.push_back({b.moduli()[i], 1, i});
  std::stable_sort(slots.begin(), slots.end(),
                   [](const Slot& x, const Slot& y) { return x.modulus < y.modulus; });

  std::vector<std::int64_t> moduli;
  for (const Slot& s : slots) moduli.push_back(s.modulus);
  DirectProduct out{FiniteAbelianGroup(moduli), {}, {}};

  auto inject = [&](const FiniteAbelianGroup& src, int side, std::vector<ElementId>& dst) {
    dst.resize(static_cast<std::size_t>(src.order()));
    for (ElementId id = 0; id < src.order(); ++id) {
      GroupElement e = src.element(id);
      GroupElement k;
      k.residues.assign(slots.size(), 0);
      for (std::size_t s = 0; s < slots.size(); ++s) {
        if (slots[s].side == side) k.residues[s] = e.residues[slots[s].index];
      }
      dst[static_cast<std::size_t>(id)] = out.group.id(k);
    }
  };
  inject(a, 0, out.left);
  inject(b, 1, out.right);
  return out;
}

std::vector<FiniteAbelianGroup> abelian_groups_up_to(std::int64_t max_order) {
  std::vector<FiniteAbelianGroup> out;
  std::vector<std::int64_t> chain;
  // Enumerate chains m_1 | m_2 | ... | m_k with product `order`, m_1 >= 2.
  std::function<void(std::int64_t, std::int64_t)> extend = [&](std::int64_t remaining,
                                                               std::int64_t last) {
    if (remaining == 1) {
      out.emplace_back(chain);
      return;
    }
    for (std::int64_t m = 2; m <= remaining; ++m) {
      if (remaining % m != 0) continue;
      if (last != 0 && m % last != 0) continue;
      // the last factor must be divisible by m, so m * m must divide what remains
      std::int64_t rest = remaining / m;
      if (rest != 1 && rest % m != 0) continue;
      chain.push_back(m);
      extend(rest, m);
      chain.pop_back();
    }
  };
  for (std::int64_t order = 2; order <= max_order; ++order) extend(order, 0);
  return out;
}

}  // namespace abelat
