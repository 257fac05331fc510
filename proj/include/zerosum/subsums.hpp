#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "zerosum/detail/bits.hpp"
#include "zerosum/error.hpp"
#include "zerosum/group.hpp"

namespace zerosum {

/// Dense addition table over element ids, for the inner loops of searches.
class AdditionTable {
 public:
  static constexpr std::int64_t kMaxOrder = 4096;

  explicit AdditionTable(const FiniteAbelianGroup& group) : n_(static_cast<ElementId>(group.order())) {
    if (group.order() > kMaxOrder) {
      throw ResourceError("exhaustive search over " + group.to_string() + " exceeds the supported order " +
                          std::to_string(kMaxOrder));
    }
    IdArithmetic ids(group);
    table_.resize(static_cast<std::size_t>(n_) * n_);
    neg_.resize(n_);
    for (ElementId a = 0; a < n_; ++a) {
      neg_[a] = ids.neg(a);
      for (ElementId b = 0; b < n_; ++b) table_[static_cast<std::size_t>(a) * n_ + b] = ids.add(a, b);
    }
  }

  ElementId order() const noexcept { return n_; }
  ElementId add(ElementId a, ElementId b) const { return table_[static_cast<std::size_t>(a) * n_ + b]; }
  ElementId neg(ElementId a) const { return neg_[a]; }

  /// h -> h + g, indexed by h.
  std::span<const ElementId> translation(ElementId g) const {
    return std::span<const ElementId>(table_).subspan(static_cast<std::size_t>(g) * n_, n_);
  }

 private:
  ElementId n_;
  std::vector<ElementId> table_;
  std::vector<ElementId> neg_;
};

/// How subsequence lengths are bucketed while tracking subsums.
///   capped(K): one class per length 1..K, longer subsequences are dropped;
///   cyclic(M): one class per residue of the length modulo M.
struct SubsumLayout {
  enum class Mode { capped, cyclic };
  Mode mode = Mode::capped;
  std::size_t classes = 1;

  static SubsumLayout capped(std::size_t max_length) { return {Mode::capped, max_length}; }
  static SubsumLayout cyclic(std::size_t modulus) { return {Mode::cyclic, modulus}; }
};

/// The set of sums of non-empty subsequences of a prefix, bucketed by length
/// class. Extending by one element is O(classes * |G|).
class SubsumTable {
 public:
  SubsumTable(const AdditionTable& table, SubsumLayout layout)
      : add_(&table), layout_(layout), words_(detail::words_for(table.order())) {
    if (layout.classes == 0) throw PreconditionError("subsum layout needs at least one length class");
    bits_.assign(layout.classes * words_, 0);
  }

  const SubsumLayout& layout() const noexcept { return layout_; }

  /// Class index of subsequence length `len`, or -1 when it is not tracked.
  std::ptrdiff_t class_of(std::size_t len) const {
    if (layout_.mode == SubsumLayout::Mode::cyclic) return static_cast<std::ptrdiff_t>(len % layout_.classes);
    if (len == 0 || len > layout_.classes) return -1;
    return static_cast<std::ptrdiff_t>(len - 1);
  }

  /// *this = parent extended by g.
  void assign_extended(const SubsumTable& parent, ElementId g) {
    const auto shift = add_->translation(g);
    bits_ = parent.bits_;
    const std::size_t k = layout_.classes;
    // Source class for each destination: the class of (length - 1).
    for (std::size_t c = 0; c < k; ++c) {
      std::ptrdiff_t src;
      if (layout_.mode == SubsumLayout::Mode::cyclic) {
        src = static_cast<std::ptrdiff_t>((c + k - 1) % k);
      } else {
        src = static_cast<std::ptrdiff_t>(c) - 1;  // length c+1 comes from length c
      }
      auto dst = mutable_row(c);
      if (src >= 0) {
        detail::for_each_bit(parent.row(static_cast<std::size_t>(src)),
                             [&](std::size_t h) { detail::set_bit(dst, shift[h]); });
      }
      if (c == static_cast<std::size_t>(class_of(1))) detail::set_bit(dst, g);
    }
  }

  bool zero_in(std::size_t cls) const { return detail::test_bit(row(cls), 0); }

  bool zero_anywhere() const {
    for (std::size_t c = 0; c < layout_.classes; ++c) {
      if (zero_in(c)) return true;
    }
    return false;
  }

  bool contains(std::size_t cls, ElementId sum) const { return detail::test_bit(row(cls), sum); }

  std::span<const detail::Word> row(std::size_t cls) const {
    return std::span<const detail::Word>(bits_).subspan(cls * words_, words_);
  }

 private:
  std::span<detail::Word> mutable_row(std::size_t cls) { return std::span<detail::Word>(bits_).subspan(cls * words_, words_); }

  const AdditionTable* add_;
  SubsumLayout layout_;
  std::size_t words_;
  std::vector<detail::Word> bits_;
};

}  // namespace zerosum
