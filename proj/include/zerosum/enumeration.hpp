#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "zerosum/error.hpp"
#include "zerosum/group.hpp"
#include "zerosum/profile.hpp"
#include "zerosum/search.hpp"
#include "zerosum/sequence.hpp"
#include "zerosum/subsums.hpp"

namespace zerosum {

/// Predicates an enumeration keeps; all set predicates must hold.
struct SequenceFilter {
  bool zero_sumfree = false;
  bool minimal_zero_sum = false;
  std::optional<std::int64_t> normal_davenport;  // keep sequences normal for this D
};

struct EnumerationSpec {
  FiniteAbelianGroup group;
  std::size_t length = 0;
  SequenceFilter filter{};
  std::uint64_t ceiling = 100'000'000;
};

namespace detail {

inline ElementId prefix_sum(const AdditionTable& table, std::span<const ElementId> prefix) {
  ElementId s = 0;
  for (ElementId g : prefix) s = table.add(s, g);
  return s;
}

// Applies a SequenceFilter to canonical prefixes of a fixed target length,
// reporting accepted ids to `emit(ids, sums)`. `sums` is null for leaves
// completed by the forced last term of a minimal zero-sum sequence. The
// normal filter needs a capped(L) layout, see filter_layout.
template <class Emit>
class FilterShard {
 public:
  FilterShard(const AdditionTable& table, std::size_t length, SequenceFilter filter, Emit emit)
      : table_(&table), length_(length), filter_(filter), emit_(std::move(emit)) {}

  Step visit(std::span<const ElementId> prefix, const SubsumTable& sums) {
    const std::size_t depth = prefix.size();
    if (filter_.zero_sumfree && sums.zero_anywhere()) return Step::prune;
    if (filter_.normal_davenport) {
      const auto bound = static_cast<std::int64_t>(length_) - *filter_.normal_davenport + 1;
      for (std::size_t len = std::max<std::int64_t>(bound + 1, 1); len <= depth; ++len) {
        if (sums.zero_in(static_cast<std::size_t>(sums.class_of(len)))) return Step::prune;
      }
    }
    if (filter_.minimal_zero_sum) {
      if (depth < length_ && sums.zero_anywhere()) return Step::prune;
      if (length_ >= 2 && depth == length_ - 1) {
        // The last term is forced: it must cancel the prefix.
        const ElementId last = table_->neg(prefix_sum(*table_, prefix));
        if (last < prefix.back()) return Step::prune;
        forced_.assign(prefix.begin(), prefix.end());
        forced_.push_back(last);
        if (accept_leaf(forced_)) emit_(std::span<const ElementId>(forced_), nullptr);
        return Step::prune;
      }
    }
    if (depth == length_) {
      if (filter_.minimal_zero_sum) {
        // length 1: only the identity
        if (!sums.zero_in(static_cast<std::size_t>(sums.class_of(depth)))) return Step::prune;
      }
      if (filter_.normal_davenport && !sums.zero_anywhere()) {
        throw InconsistentDavenportError("a sequence of length " + std::to_string(length_) +
                                         " has no zero-sum subsequence, contradicting D = " +
                                         std::to_string(*filter_.normal_davenport));
      }
      emit_(prefix, &sums);
    }
    return Step::descend;
  }

 private:
  bool accept_leaf(std::span<const ElementId> ids) const {
    if (!filter_.zero_sumfree && !filter_.normal_davenport) return true;
    // sigma(S) = 0 means S is itself zero-sum (length |S| >= 2 > bound when normal filters apply)
    if (filter_.zero_sumfree) return false;
    const auto bound = static_cast<std::int64_t>(length_) - *filter_.normal_davenport + 1;
    return static_cast<std::int64_t>(ids.size()) <= bound;
  }

  const AdditionTable* table_;
  std::size_t length_;
  SequenceFilter filter_;
  Emit emit_;
  std::vector<ElementId> forced_;
};

inline SubsumLayout filter_layout(const SequenceFilter& filter, std::size_t length, bool need_lengths) {
  if (need_lengths || filter.normal_davenport) return SubsumLayout::capped(length);
  return SubsumLayout::cyclic(1);
}

inline void validate(const EnumerationSpec& spec) {
  if (spec.ceiling == 0) throw PreconditionError("enumeration ceiling must be positive");
  if (spec.filter.normal_davenport && static_cast<std::int64_t>(spec.length) < *spec.filter.normal_davenport) {
    throw PreconditionError("normal filter needs length >= D");
  }
}

inline bool empty_sequence_passes(const SequenceFilter& filter) {
  return !filter.minimal_zero_sum && !filter.normal_davenport;
}

}  // namespace detail

/// Visits each multiset of the given length exactly once, in canonical order,
/// applying the filters with prefix pruning. Single-threaded so that the
/// visitor sees sequences in order; `visit` returns nothing.
template <class Visitor>
std::uint64_t enumerate_sequences(const EnumerationSpec& spec, Visitor&& visit) {
  detail::validate(spec);
  if (spec.length == 0) {
    if (detail::empty_sequence_passes(spec.filter)) visit(Sequence(spec.group));
    return 0;
  }
  AdditionTable table(spec.group);
  auto emit = [&](std::span<const ElementId> ids, const SubsumTable*) {
    visit(Sequence(spec.group, std::vector<ElementId>(ids.begin(), ids.end())));
  };
  SearchOptions options;
  options.node_ceiling = spec.ceiling;
  auto shards = run_search(
      table, detail::filter_layout(spec.filter, spec.length, false), spec.length,
      [&](ElementId) { return detail::FilterShard<decltype(emit)>(table, spec.length, spec.filter, emit); }, options);
  std::uint64_t nodes = 0;
  for (const auto& s : shards) nodes += s.nodes;
  return nodes;
}

inline std::vector<Sequence> collect_sequences(const EnumerationSpec& spec) {
  std::vector<Sequence> out;
  enumerate_sequences(spec, [&](Sequence s) { out.push_back(std::move(s)); });
  return out;
}

/// Number of multisets passing the filters; parallel over first elements.
inline std::uint64_t count_sequences(const EnumerationSpec& spec, SearchOptions options = {}) {
  detail::validate(spec);
  if (spec.length == 0) return detail::empty_sequence_passes(spec.filter) ? 1 : 0;
  AdditionTable table(spec.group);
  options.node_ceiling = spec.ceiling;
  using Emit = std::function<void(std::span<const ElementId>, const SubsumTable*)>;
  struct CountingShard {
    std::shared_ptr<std::uint64_t> count;
    detail::FilterShard<Emit> inner;
    Step visit(std::span<const ElementId> p, const SubsumTable& s) { return inner.visit(p, s); }
  };
  auto shards = run_search(
      table, detail::filter_layout(spec.filter, spec.length, false), spec.length,
      [&](ElementId) {
        auto count = std::make_shared<std::uint64_t>(0);
        return CountingShard{count, detail::FilterShard<Emit>(table, spec.length, spec.filter,
                                                              [count](std::span<const ElementId>, const SubsumTable*) {
                                                                ++*count;
                                                              })};
      },
      options);
  std::uint64_t total = 0;
  for (const auto& s : shards) total += *s.shard.count;
  return total;
}

/// An exactly computed zero-sum invariant with an extremal witness: a
/// sequence of length value - 1 that avoids the defining zero-sum property.
struct InvariantResult {
  std::string name;  // davenport | s_mN | eta
  FiniteAbelianGroup group;
  std::int64_t value = 0;
  std::optional<std::int64_t> ell;
  Sequence witness;
  std::uint64_t nodes = 0;
  std::uint64_t millis = 0;
};

namespace detail {

// Longest canonical sequence whose subsum table never shows 0 in a forbidden
// length class. Prefix-closed property, so pruning is exact.
struct LongestAvoiding {
  std::size_t max_depth = 0;
  std::vector<ElementId> witness;
  std::uint64_t nodes = 0;
};

inline LongestAvoiding longest_avoiding(const FiniteAbelianGroup& group, SubsumLayout layout,
                                        const std::vector<std::size_t>& forbidden_classes,
                                        const SearchOptions& options) {
  AdditionTable table(group);
  struct Shard {
    const std::vector<std::size_t>* forbidden;
    std::size_t max_depth = 0;
    std::vector<ElementId> witness;
    Step visit(std::span<const ElementId> prefix, const SubsumTable& sums) {
      for (std::size_t c : *forbidden) {
        if (sums.zero_in(c)) return Step::prune;
      }
      if (prefix.size() > max_depth) {
        max_depth = prefix.size();
        witness.assign(prefix.begin(), prefix.end());
      }
      return Step::descend;
    }
  };
  auto shards = run_search(
      table, layout, std::nullopt, [&](ElementId) { return Shard{&forbidden_classes, 0, {}}; }, options);
  LongestAvoiding best;
  for (const auto& s : shards) {
    best.nodes += s.nodes;
    if (s.shard.max_depth > best.max_depth) {
      best.max_depth = s.shard.max_depth;
      best.witness = s.shard.witness;
    }
  }
  return best;
}

inline std::uint64_t elapsed_ms(std::chrono::steady_clock::time_point since) {
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - since).count());
}

}  // namespace detail

/// D*(G) = sum (n_i - 1) + 1 over the invariant factors.
inline std::int64_t d_star(const FiniteAbelianGroup& group) {
  std::int64_t total = 1;
  for (std::int64_t n : group.invariant_factors()) total += n - 1;
  return total;
}

/// Davenport constant by exhaustive extension of zero-sumfree sequences.
inline InvariantResult davenport(const FiniteAbelianGroup& group, const SearchOptions& options = {}) {
  const auto start = std::chrono::steady_clock::now();
  auto found = detail::longest_avoiding(group, SubsumLayout::cyclic(1), {0}, options);
  Sequence witness(group, found.witness);
  if (!is_zero_sumfree(witness)) {
    throw SoundnessAlarm("davenport witness " + witness.to_string() + " is not zero-sumfree");
  }
  return InvariantResult{"davenport",        group, static_cast<std::int64_t>(found.max_depth) + 1, std::nullopt,
                         std::move(witness), found.nodes, detail::elapsed_ms(start)};
}

/// s_{mN}(G), m = exp(G): the least t forcing a non-empty zero-sum
/// subsequence whose length is divisible by m.
inline InvariantResult s_mN(const FiniteAbelianGroup& group, const SearchOptions& options = {}) {
  const auto start = std::chrono::steady_clock::now();
  const auto m = static_cast<std::size_t>(group.exponent());
  auto found = detail::longest_avoiding(group, SubsumLayout::cyclic(m), {0}, options);
  Sequence witness(group, found.witness);
  for (std::int64_t len : zero_sum_profile(witness).lengths) {
    if (len % group.exponent() == 0) {
      throw SoundnessAlarm("s_mN witness " + witness.to_string() + " has a zero-sum of length " +
                           std::to_string(len));
    }
  }
  return InvariantResult{"s_mN",        group, static_cast<std::int64_t>(found.max_depth) + 1, std::nullopt, witness,
                         found.nodes, detail::elapsed_ms(start)};
}

/// eta_{l m}(G): the least t forcing a non-empty zero-sum subsequence of
/// length at most ell * exp(G).
inline InvariantResult eta(const FiniteAbelianGroup& group, std::int64_t ell, const SearchOptions& options = {}) {
  if (ell < 1) throw PreconditionError("eta needs ell >= 1, got " + std::to_string(ell));
  const auto start = std::chrono::steady_clock::now();
  const auto cap = static_cast<std::size_t>(ell * group.exponent());
  std::vector<std::size_t> forbidden(cap);
  for (std::size_t c = 0; c < cap; ++c) forbidden[c] = c;
  auto found = detail::longest_avoiding(group, SubsumLayout::capped(cap), forbidden, options);
  Sequence witness(group, found.witness);
  auto profile = zero_sum_profile(witness);
  if (!profile.empty() && profile.min_length() <= static_cast<std::int64_t>(cap)) {
    throw SoundnessAlarm("eta witness " + witness.to_string() + " has a zero-sum of length " +
                         std::to_string(profile.min_length()));
  }
  return InvariantResult{"eta",   group, static_cast<std::int64_t>(found.max_depth) + 1, ell, witness, found.nodes,
                         detail::elapsed_ms(start)};
}

}  // namespace zerosum
