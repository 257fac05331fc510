#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "zerosum/bases.hpp"
#include "zerosum/error.hpp"
#include "zerosum/group.hpp"
#include "zerosum/sequence.hpp"

namespace zerosum {

/// G = C_m + C_{mn}, m >= 2, n >= 1.
struct RankTwoShape {
  std::int64_t m = 0;
  std::int64_t n = 0;

  static RankTwoShape of(const FiniteAbelianGroup& group) {
    if (group.rank() != 2) {
      throw PreconditionError("expected a group of rank two C_m + C_mn, got " + group.to_string());
    }
    return {group.factor(0), group.factor(1) / group.factor(0)};
  }

  std::int64_t davenport() const { return m + m * n - 1; }
};

/// e_j^{ord(e_j)-1} prod_{i=1}^{ord(e_k)} (-x_i e_j + e_k) for a basis
/// (e_1, e_2) with ord(e_2) = mn, {j, k} = {1, 2} and
/// sum x_i = -1 (mod ord(e_j)).
struct SchmidFormI {
  GroupElement e1, e2;
  int j = 1;
  std::vector<std::int64_t> multipliers;

  friend bool operator==(const SchmidFormI&, const SchmidFormI&) = default;
};

/// g_1^{sm-1} prod_{i=1}^{(n+1-s)m} (-x_i g_1 + g_2) for s in [1, n], a
/// generating set {g_1, g_2} with ord(g_2) = mn and (s = 1 or m g_1 = m g_2),
/// and non-negative x_i with sum x_i = m - 1.
struct SchmidFormII {
  std::int64_t s = 1;
  GroupElement g1, g2;
  std::vector<std::int64_t> multipliers;

  friend bool operator==(const SchmidFormII&, const SchmidFormII&) = default;
};

using SchmidForm = std::variant<SchmidFormI, SchmidFormII>;

namespace detail {

inline void schmid_fail(const std::string& why) { throw PreconditionError("invalid Schmid form: " + why); }

inline void validate_schmid(const FiniteAbelianGroup& group, const SchmidFormI& f) {
  const auto shape = RankTwoShape::of(group);
  const std::vector<GroupElement> basis{f.e1, f.e2};
  for (const auto& e : basis) group.check(e);
  if (!is_basis(group, basis)) schmid_fail("(e_1, e_2) is not a basis");
  if (group.element_order(f.e2) != shape.m * shape.n) schmid_fail("ord(e_2) must be mn");
  if (f.j != 1 && f.j != 2) schmid_fail("j must be 1 or 2");
  const auto& ej = f.j == 1 ? f.e1 : f.e2;
  const auto& ek = f.j == 1 ? f.e2 : f.e1;
  if (static_cast<std::int64_t>(f.multipliers.size()) != group.element_order(ek)) {
    schmid_fail("need ord(e_k) multipliers");
  }
  std::int64_t total = 0;
  for (std::int64_t x : f.multipliers) {
    if (x < 0) schmid_fail("multipliers must be non-negative");
    total += x;
  }
  const std::int64_t oj = group.element_order(ej);
  if (mod(total, oj) != oj - 1) schmid_fail("sum of multipliers must be -1 mod ord(e_j)");
}

inline void validate_schmid(const FiniteAbelianGroup& group, const SchmidFormII& f) {
  const auto shape = RankTwoShape::of(group);
  group.check(f.g1);
  group.check(f.g2);
  if (f.s < 1 || f.s > shape.n) schmid_fail("s must lie in [1, n]");
  const std::vector<GroupElement> pair{f.g1, f.g2};
  if (!generates(group, pair)) schmid_fail("{g_1, g_2} does not generate the group");
  if (group.element_order(f.g2) != shape.m * shape.n) schmid_fail("ord(g_2) must be mn");
  if (f.s != 1 && group.scalar_mul(shape.m, f.g1) != group.scalar_mul(shape.m, f.g2)) {
    schmid_fail("need s = 1 or m g_1 = m g_2");
  }
  if (static_cast<std::int64_t>(f.multipliers.size()) != (shape.n + 1 - f.s) * shape.m) {
    schmid_fail("need (n + 1 - s) m multipliers");
  }
  std::int64_t total = 0;
  for (std::int64_t x : f.multipliers) {
    if (x < 0) schmid_fail("multipliers must be non-negative");
    total += x;
  }
  if (total != shape.m - 1) schmid_fail("multipliers must sum to m - 1");
}

inline Sequence build_schmid(const FiniteAbelianGroup& group, const GroupElement& base, std::int64_t base_count,
                             const GroupElement& shift, const std::vector<std::int64_t>& multipliers) {
  std::vector<GroupElement> terms(static_cast<std::size_t>(base_count), base);
  for (std::int64_t x : multipliers) terms.push_back(group.add(group.scalar_mul(-x, base), shift));
  return Sequence::from_elements(group, terms);
}

}  // namespace detail

inline Sequence generate_schmid(const FiniteAbelianGroup& group, const SchmidForm& form) {
  return std::visit(
      [&](const auto& f) -> Sequence {
        detail::validate_schmid(group, f);
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, SchmidFormI>) {
          const auto& ej = f.j == 1 ? f.e1 : f.e2;
          const auto& ek = f.j == 1 ? f.e2 : f.e1;
          return detail::build_schmid(group, ej, group.element_order(ej) - 1, ek, f.multipliers);
        } else {
          const auto m = RankTwoShape::of(group).m;
          return detail::build_schmid(group, f.g1, f.s * m - 1, f.g2, f.multipliers);
        }
      },
      form);
}

namespace detail {

// Form I against a fixed basis and role choice: the remaining terms have
// unique multipliers in [0, ord(e_j)).
inline std::optional<SchmidFormI> match_form_i(const Sequence& s, const Basis& basis, int j) {
  const auto& group = s.group();
  const GroupElement& ej = basis.elements[j == 1 ? 0 : 1];
  const GroupElement& ek = basis.elements[j == 1 ? 1 : 0];
  const std::int64_t oj = basis.orders[j == 1 ? 0 : 1];
  const std::int64_t ok = basis.orders[j == 1 ? 1 : 0];
  if (s.multiplicity(ej) < oj - 1) return std::nullopt;
  Sequence rest = s.remove(Sequence(group, std::vector<ElementId>(static_cast<std::size_t>(oj - 1), group.id_of(ej))));
  if (static_cast<std::int64_t>(rest.length()) != ok) return std::nullopt;
  // h - e_k must be a multiple -x e_j of e_j.
  std::vector<std::int64_t> position(static_cast<std::size_t>(group.order()), -1);
  GroupElement walk = group.zero();
  for (std::int64_t t = 0; t < oj; ++t) {
    position[group.id_of(walk)] = t;
    walk = group.add(walk, ej);
  }
  const GroupElement minus_ek = group.neg(ek);
  std::vector<std::int64_t> xs;
  std::int64_t total = 0;
  for (ElementId id : rest.ids()) {
    const std::int64_t t = position[group.id_of(group.add(group.element_at(id), minus_ek))];
    if (t < 0) return std::nullopt;
    const std::int64_t x = mod(-t, oj);
    xs.push_back(x);
    total += x;
  }
  if (mod(total, oj) != oj - 1) return std::nullopt;
  return SchmidFormI{basis.elements[0], basis.elements[1], j, std::move(xs)};
}

// Form II for fixed (s, g_1, g_2): pick multipliers in [0, m-1] per term with
// exact total m - 1, lexicographically smallest over the canonical term order.
inline std::optional<SchmidFormII> match_form_ii(const Sequence& s, std::int64_t m, std::int64_t level,
                                                 const GroupElement& g1, const GroupElement& g2) {
  const auto& group = s.group();
  const std::int64_t base_count = level * m - 1;
  if (s.multiplicity(g1) < base_count) return std::nullopt;
  Sequence rest =
      s.remove(Sequence(group, std::vector<ElementId>(static_cast<std::size_t>(base_count), group.id_of(g1))));
  // options[id] = multipliers x in [0, m-1] with -x g_1 + g_2 = element id.
  std::vector<std::vector<std::int64_t>> options(static_cast<std::size_t>(group.order()));
  for (std::int64_t x = 0; x < m; ++x) {
    options[group.id_of(group.add(group.scalar_mul(-x, g1), g2))].push_back(x);
  }
  const auto ids = rest.ids();
  const std::size_t k = ids.size();
  // feasible[i][t]: terms i..k-1 can use multipliers summing to exactly t.
  std::vector<std::vector<bool>> feasible(k + 1, std::vector<bool>(static_cast<std::size_t>(m), false));
  feasible[k][0] = true;
  for (std::size_t i = k; i-- > 0;) {
    const auto& opts = options[ids[i]];
    if (opts.empty()) return std::nullopt;
    for (std::int64_t t = 0; t < m; ++t) {
      for (std::int64_t x : opts) {
        if (x <= t && feasible[i + 1][static_cast<std::size_t>(t - x)]) {
          feasible[i][static_cast<std::size_t>(t)] = true;
          break;
        }
      }
    }
  }
  if (!feasible[0][static_cast<std::size_t>(m - 1)]) return std::nullopt;
  std::vector<std::int64_t> xs;
  std::int64_t left = m - 1;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::int64_t x : options[ids[i]]) {
      if (x <= left && feasible[i + 1][static_cast<std::size_t>(left - x)]) {
        xs.push_back(x);
        left -= x;
        break;
      }
    }
  }
  return SchmidFormII{level, g1, g2, std::move(xs)};
}

}  // namespace detail

/// Finds a parameterization of S as a form I or form II sequence. Search
/// order: form I before form II, bases and generating pairs in canonical
/// order, j = 1 before j = 2, s ascending. Returns none when S has neither
/// shape. Requires |S| = m + mn - 1.
inline std::optional<SchmidForm> match_schmid(const Sequence& s, EnumerationCeiling ceiling = {}) {
  const auto& group = s.group();
  const auto shape = RankTwoShape::of(group);
  if (static_cast<std::int64_t>(s.length()) != shape.davenport()) {
    throw PreconditionError("match_schmid needs |S| = m + mn - 1 = " + std::to_string(shape.davenport()));
  }
  const std::int64_t top = shape.m * shape.n;
  std::optional<SchmidForm> found;
  const std::vector<std::optional<std::int64_t>> constraints{std::nullopt, top};
  visit_bases(
      group, constraints,
      [&](const Basis& basis) {
        for (int j : {1, 2}) {
          if (auto f = detail::match_form_i(s, basis, j)) {
            found = std::move(*f);
            return false;
          }
        }
        return true;
      },
      ceiling);
  if (found) return found;
  for (std::int64_t level = 1; level <= shape.n && !found; ++level) {
    visit_generating_pairs(
        group, top,
        [&](const GroupElement& g1, const GroupElement& g2) {
          if (level != 1 && group.scalar_mul(shape.m, g1) != group.scalar_mul(shape.m, g2)) return true;
          if (auto f = detail::match_form_ii(s, shape.m, level, g1, g2)) {
            found = std::move(*f);
            return false;
          }
          return true;
        },
        ceiling);
  }
  return found;
}

inline std::string describe(const FiniteAbelianGroup& group, const SchmidForm& form) {
  auto list = [](const std::vector<std::int64_t>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + std::to_string(xs[i]);
    return out;
  };
  if (const auto* f = std::get_if<SchmidFormI>(&form)) {
    return "form I: e1=" + group.format(f->e1, true) + " e2=" + group.format(f->e2, true) +
           " j=" + std::to_string(f->j) + " x=" + list(f->multipliers);
  }
  const auto& f = std::get<SchmidFormII>(form);
  return "form II: s=" + std::to_string(f.s) + " g1=" + group.format(f.g1, true) + " g2=" + group.format(f.g2, true) +
         " x=" + list(f.multipliers);
}

}  // namespace zerosum
