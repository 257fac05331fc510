#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "zerosum/error.hpp"
#include "zerosum/group.hpp"

namespace zerosum {

/// Ordered basis (b_1, ..., b_r): the map (x_i) -> sum x_i b_i from
/// prod C_{ord(b_i)} onto the group is a bijection.
struct Basis {
  std::vector<GroupElement> elements;
  std::vector<std::int64_t> orders;

  friend bool operator==(const Basis&, const Basis&) = default;
};

struct EnumerationCeiling {
  std::int64_t max_group_order = 1024;
};

namespace detail {

inline void require_enumerable(const FiniteAbelianGroup& group, const EnumerationCeiling& ceiling) {
  if (group.order() > ceiling.max_group_order) {
    throw ResourceError("basis/pair enumeration ceiling exceeded: |G| = " + std::to_string(group.order()) +
                        " > max_group_order = " + std::to_string(ceiling.max_group_order));
  }
}

// Membership bitmap of a subgroup, grown one cyclic summand at a time.
class SubgroupBuilder {
 public:
  explicit SubgroupBuilder(const FiniteAbelianGroup& group) : ids_(group), member_(group.order(), false), size_(1) {
    member_[0] = true;
  }

  std::int64_t size() const noexcept { return size_; }
  bool contains(ElementId id) const { return member_[id]; }

  /// Adds <g>. Returns false (and leaves the builder untouched) when
  /// `require_direct` is set and <g> meets the current subgroup non-trivially.
  bool adjoin(ElementId g, bool require_direct) {
    // Smallest k >= 1 with k*g in the current subgroup.
    std::int64_t k = 1;
    ElementId multiple = g;
    while (!member_[multiple]) {
      multiple = ids_.add(multiple, g);
      ++k;
    }
    // k is the order of g modulo the subgroup; the intersection with <g> is
    // trivial exactly when that first multiple is 0 itself.
    if (require_direct && multiple != 0) return false;
    if (k == 1) return true;
    std::vector<ElementId> current;
    current.reserve(static_cast<std::size_t>(size_));
    for (ElementId h = 0; h < member_.size(); ++h) {
      if (member_[h]) current.push_back(h);
    }
    ElementId shift = g;
    for (std::int64_t step = 1; step < k; ++step) {
      for (ElementId h : current) member_[ids_.add(h, shift)] = true;
      shift = ids_.add(shift, g);
    }
    size_ *= k;
    return true;
  }

 private:
  IdArithmetic ids_;
  std::vector<bool> member_;
  std::int64_t size_;
};

}  // namespace detail

inline bool generates(const FiniteAbelianGroup& group, std::span<const GroupElement> elements) {
  detail::SubgroupBuilder sub(group);
  for (const auto& g : elements) sub.adjoin(group.id_of(g), false);
  return sub.size() == group.order();
}

inline bool is_basis(const FiniteAbelianGroup& group, std::span<const GroupElement> elements) {
  detail::SubgroupBuilder sub(group);
  for (const auto& g : elements) {
    if (group.is_zero(g)) return false;
    if (!sub.adjoin(group.id_of(g), true)) return false;
  }
  return sub.size() == group.order();
}

/// Visits every ordered basis of length rank(G), in lexicographic order of
/// the coordinate tuples. `order_constraints[i]`, when set, fixes ord(b_i).
/// The visitor returns false to stop early.
template <class Visitor>
void visit_bases(const FiniteAbelianGroup& group, std::span<const std::optional<std::int64_t>> order_constraints,
                 Visitor&& visit, EnumerationCeiling ceiling = {}) {
  detail::require_enumerable(group, ceiling);
  const std::size_t r = group.rank();
  if (order_constraints.size() > r) {
    throw PreconditionError("more order constraints than the rank of " + group.to_string());
  }
  std::vector<std::int64_t> orders(static_cast<std::size_t>(group.order()));
  for (ElementId id = 0; id < orders.size(); ++id) orders[id] = group.element_order(group.element_at(id));

  std::vector<ElementId> chosen;
  bool stop = false;
  auto recurse = [&](auto&& self, const detail::SubgroupBuilder& sub) -> void {
    if (stop) return;
    if (chosen.size() == r) {
      if (sub.size() != group.order()) return;
      Basis basis;
      for (ElementId id : chosen) {
        basis.elements.push_back(group.element_at(id));
        basis.orders.push_back(orders[id]);
      }
      if (!visit(basis)) stop = true;
      return;
    }
    const std::size_t pos = chosen.size();
    // 0 means unconstrained
    const std::int64_t want = pos < order_constraints.size() ? order_constraints[pos].value_or(0) : 0;
    for (ElementId id = 1; id < orders.size() && !stop; ++id) {
      if (want != 0 && orders[id] != want) continue;
      if (group.order() % (sub.size() * orders[id]) != 0) continue;
      detail::SubgroupBuilder next = sub;
      if (!next.adjoin(id, true)) continue;
      chosen.push_back(id);
      self(self, next);
      chosen.pop_back();
    }
  };
  recurse(recurse, detail::SubgroupBuilder(group));
}

inline std::vector<Basis> enumerate_bases(const FiniteAbelianGroup& group,
                                          std::span<const std::optional<std::int64_t>> order_constraints = {},
                                          EnumerationCeiling ceiling = {}) {
  std::vector<Basis> out;
  visit_bases(
      group, order_constraints,
      [&](const Basis& b) {
        out.push_back(b);
        return true;
      },
      ceiling);
  return out;
}

/// Visits every ordered pair (g_1, g_2) generating a group of rank <= 2 with
/// ord(g_2) == ord_g2, in lexicographic order of (g_1, g_2).
template <class Visitor>
void visit_generating_pairs(const FiniteAbelianGroup& group, std::int64_t ord_g2, Visitor&& visit,
                            EnumerationCeiling ceiling = {}) {
  if (group.rank() > 2) {
    throw PreconditionError("generating pairs require rank <= 2, got " + group.to_string());
  }
  detail::require_enumerable(group, ceiling);
  const auto n = static_cast<ElementId>(group.order());
  std::vector<ElementId> candidates;
  for (ElementId id = 0; id < n; ++id) {
    if (group.element_order(group.element_at(id)) == ord_g2) candidates.push_back(id);
  }
  for (ElementId g1 = 0; g1 < n; ++g1) {
    for (ElementId g2 : candidates) {
      detail::SubgroupBuilder sub(group);
      sub.adjoin(g2, false);
      sub.adjoin(g1, false);
      if (sub.size() != group.order()) continue;
      if (!visit(group.element_at(g1), group.element_at(g2))) return;
    }
  }
}

inline std::vector<std::pair<GroupElement, GroupElement>> enumerate_generating_pairs(const FiniteAbelianGroup& group,
                                                                                     std::int64_t ord_g2,
                                                                                     EnumerationCeiling ceiling = {}) {
  std::vector<std::pair<GroupElement, GroupElement>> out;
  visit_generating_pairs(
      group, ord_g2,
      [&](const GroupElement& a, const GroupElement& b) {
        out.emplace_back(a, b);
        return true;
      },
      ceiling);
  return out;
}

}  // namespace zerosum
