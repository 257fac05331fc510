#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <iterator>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "zerosum/error.hpp"
#include "zerosum/group.hpp"

namespace zerosum {

/// A finite multiset of group elements, S = prod g^{v_g(S)}.
///
/// Stored canonically as the non-decreasing list of element ids, which makes
/// lexicographic comparison of sequences of equal length the canonical
/// multiset order used by every enumeration.
class Sequence {
 public:
  explicit Sequence(FiniteAbelianGroup group) : group_(std::move(group)) {}

  Sequence(FiniteAbelianGroup group, std::vector<ElementId> ids) : group_(std::move(group)), ids_(std::move(ids)) {
    for (ElementId id : ids_) {
      if (static_cast<std::int64_t>(id) >= group_.order()) {
        throw DimensionError("element id out of range for " + group_.to_string());
      }
    }
    std::sort(ids_.begin(), ids_.end());
  }

  static Sequence from_elements(const FiniteAbelianGroup& group, std::span<const GroupElement> elements) {
    std::vector<ElementId> ids;
    ids.reserve(elements.size());
    for (const auto& g : elements) ids.push_back(group.id_of(g));
    return Sequence(group, std::move(ids));
  }

  /// Parses `[(a,b)^k (c,d) ...]`: whitespace-separated element literals with
  /// optional `^multiplicity`.
  static Sequence parse(const FiniteAbelianGroup& group, std::string_view literal) {
    std::string text = detail::trim(literal);
    if (text.size() < 2 || text.front() != '[' || text.back() != ']') {
      throw ParseError("sequence literal must be enclosed in [ ]: '" + text + "'");
    }
    std::string_view body = std::string_view(text).substr(1, text.size() - 2);
    std::vector<ElementId> ids;
    std::size_t pos = 0;
    while (pos < body.size()) {
      if (std::isspace(static_cast<unsigned char>(body[pos]))) {
        ++pos;
        continue;
      }
      std::size_t end = pos;
      if (body[pos] == '(') {
        end = body.find(')', pos);
        if (end == std::string_view::npos) throw ParseError("unbalanced '(' in sequence literal '" + text + "'");
        ++end;
      } else {
        while (end < body.size() && !std::isspace(static_cast<unsigned char>(body[end])) && body[end] != '^') ++end;
      }
      GroupElement g = group.parse_element(body.substr(pos, end - pos));
      std::int64_t count = 1;
      pos = end;
      if (pos < body.size() && body[pos] == '^') {
        std::size_t stop = pos + 1;
        while (stop < body.size() && !std::isspace(static_cast<unsigned char>(body[stop]))) ++stop;
        count = detail::parse_int(body.substr(pos + 1, stop - pos - 1), "multiplicity");
        if (count < 1) throw ParseError("multiplicity must be >= 1 in '" + text + "'");
        pos = stop;
      }
      ids.insert(ids.end(), static_cast<std::size_t>(count), group.id_of(g));
    }
    return Sequence(group, std::move(ids));
  }

  const FiniteAbelianGroup& group() const noexcept { return group_; }
  std::span<const ElementId> ids() const noexcept { return ids_; }
  std::size_t length() const noexcept { return ids_.size(); }
  bool empty() const noexcept { return ids_.empty(); }

  GroupElement element(std::size_t i) const { return group_.element_at(ids_.at(i)); }

  std::int64_t multiplicity(ElementId id) const {
    auto [lo, hi] = std::equal_range(ids_.begin(), ids_.end(), id);
    return hi - lo;
  }

  std::int64_t multiplicity(const GroupElement& g) const { return multiplicity(group_.id_of(g)); }

  /// Distinct elements with their multiplicities, in id order.
  std::vector<std::pair<ElementId, std::int64_t>> runs() const {
    std::vector<std::pair<ElementId, std::int64_t>> out;
    for (ElementId id : ids_) {
      if (!out.empty() && out.back().first == id) {
        ++out.back().second;
      } else {
        out.emplace_back(id, 1);
      }
    }
    return out;
  }

  std::vector<GroupElement> support() const {
    std::vector<GroupElement> out;
    for (const auto& [id, count] : runs()) out.push_back(group_.element_at(id));
    return out;
  }

  std::int64_t max_multiplicity() const {
    std::int64_t best = 0;
    for (const auto& [id, count] : runs()) best = std::max(best, count);
    return best;
  }

  bool support_within(const Sequence& other) const {
    for (const auto& [id, count] : runs()) {
      if (other.multiplicity(id) == 0) return false;
    }
    return true;
  }

  /// True when this sequence is a sub-multiset of `other`.
  bool divides(const Sequence& other) const {
    return std::includes(other.ids_.begin(), other.ids_.end(), ids_.begin(), ids_.end());
  }

  Sequence concat(const Sequence& other) const {
    require_same_group(other);
    std::vector<ElementId> merged;
    merged.reserve(ids_.size() + other.ids_.size());
    std::merge(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(), std::back_inserter(merged));
    return Sequence(group_, std::move(merged), Canonical{});
  }

  Sequence with(const GroupElement& g, std::int64_t count = 1) const {
    std::vector<ElementId> ids = ids_;
    ids.insert(ids.end(), static_cast<std::size_t>(count), group_.id_of(g));
    return Sequence(group_, std::move(ids));
  }

  /// S T^{-1} for a subsequence T | S.
  Sequence remove(const Sequence& sub) const {
    require_same_group(sub);
    if (!sub.divides(*this)) throw PreconditionError("sequence " + sub.to_string() + " does not divide " + to_string());
    std::vector<ElementId> rest;
    std::set_difference(ids_.begin(), ids_.end(), sub.ids_.begin(), sub.ids_.end(), std::back_inserter(rest));
    return Sequence(group_, std::move(rest), Canonical{});
  }

  /// Canonical text form: runs in id order, `^k` for multiplicities > 1.
  std::string to_string() const {
    std::string out = "[";
    bool first = true;
    for (const auto& [id, count] : runs()) {
      if (!first) out += ' ';
      first = false;
      out += group_.format(group_.element_at(id));
      if (count > 1) out += '^' + std::to_string(count);
    }
    return out + "]";
  }

  friend bool operator==(const Sequence& a, const Sequence& b) { return a.group_ == b.group_ && a.ids_ == b.ids_; }

  friend std::strong_ordering operator<=>(const Sequence& a, const Sequence& b) {
    if (a.ids_.size() != b.ids_.size()) return a.ids_.size() <=> b.ids_.size();
    return std::lexicographical_compare_three_way(a.ids_.begin(), a.ids_.end(), b.ids_.begin(), b.ids_.end());
  }

 private:
  struct Canonical {};
  Sequence(FiniteAbelianGroup group, std::vector<ElementId> ids, Canonical)
      : group_(std::move(group)), ids_(std::move(ids)) {}

  void require_same_group(const Sequence& other) const {
    if (!(group_ == other.group_)) {
      throw DimensionError("sequences over " + group_.to_string() + " and " + other.group_.to_string());
    }
  }

  FiniteAbelianGroup group_;
  std::vector<ElementId> ids_;
};

/// sigma(S): the sum of all terms, with multiplicity.
inline GroupElement sigma(const Sequence& s) {
  const auto& g = s.group();
  GroupElement total = g.zero();
  for (const auto& [id, count] : s.runs()) total = g.add(total, g.scalar_mul(count, g.element_at(id)));
  return total;
}

}  // namespace zerosum
