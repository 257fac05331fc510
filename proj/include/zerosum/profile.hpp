#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zerosum/detail/bits.hpp"
#include "zerosum/error.hpp"
#include "zerosum/group.hpp"
#include "zerosum/sequence.hpp"

namespace zerosum {

/// The lengths L in [1, |S|] for which S has a zero-sum subsequence of length
/// exactly L, with one witness per length.
struct ZeroSumProfile {
  std::vector<std::int64_t> lengths;  // ascending
  std::map<std::int64_t, Sequence> witnesses;

  bool empty() const noexcept { return lengths.empty(); }
  bool has_length(std::int64_t L) const { return std::binary_search(lengths.begin(), lengths.end(), L); }
  std::int64_t min_length() const { return lengths.front(); }
  std::int64_t max_length() const { return lengths.back(); }
};

struct DpLimits {
  // Bound on |G| * |S|^2, the elementary step count of the profile DP.
  std::uint64_t step_ceiling = 100'000'000;
};

namespace detail {

// Reachability of (length, sum) pairs over suffixes of the run list:
// layer j holds what runs j..k-1 can produce. Layer k is {(0, 0)}.
class SuffixReach {
 public:
  SuffixReach(const Sequence& s, const IdArithmetic& ids) : ids_(ids), runs_(s.runs()) {
    n_ = ids.order();
    words_ = words_for(n_);
    max_len_ = s.length();
    layers_.assign(runs_.size() + 1, std::vector<Word>((max_len_ + 1) * words_, 0));
    set_bit(row(runs_.size(), 0), 0);
    for (std::size_t j = runs_.size(); j-- > 0;) {
      const auto [g, count] = runs_[j];
      ElementId shift = 0;  // t * g
      for (std::int64_t t = 0; t <= count; ++t) {
        const std::vector<ElementId> perm = t == 0 ? std::vector<ElementId>{} : ids_.translation(shift);
        for (std::size_t len = 0; len + static_cast<std::size_t>(t) <= max_len_; ++len) {
          auto src = row(j + 1, len);
          auto dst = row(j, len + static_cast<std::size_t>(t));
          if (t == 0) {
            for (std::size_t w = 0; w < words_; ++w) dst[w] |= src[w];
          } else {
            for_each_bit(std::span<const Word>(src), [&](std::size_t h) {
              set_bit(dst, perm[h]);
            });
          }
        }
        shift = ids_.add(shift, g);
      }
    }
  }

  bool reachable(std::size_t layer, std::size_t len, ElementId sum) const {
    if (len > max_len_) return false;
    return test_bit(crow(layer, len), sum);
  }

  // Lexicographically smallest sorted id list of the given length and sum:
  // take as many copies of each smaller element as still admit a completion.
  std::vector<ElementId> witness(std::size_t len, ElementId target) const {
    std::vector<ElementId> out;
    for (std::size_t j = 0; j < runs_.size(); ++j) {
      const auto [g, count] = runs_[j];
      const std::int64_t cap = std::min<std::int64_t>(count, static_cast<std::int64_t>(len));
      for (std::int64_t t = cap; t >= 0; --t) {
        ElementId rest = ids_.add(target, ids_.neg(ids_.scalar_mul(t, g)));
        if (reachable(j + 1, len - static_cast<std::size_t>(t), rest)) {
          out.insert(out.end(), static_cast<std::size_t>(t), g);
          len -= static_cast<std::size_t>(t);
          target = rest;
          break;
        }
      }
    }
    return out;
  }

 private:
  std::span<Word> row(std::size_t layer, std::size_t len) {
    return std::span<Word>(layers_[layer]).subspan(len * words_, words_);
  }
  std::span<const Word> crow(std::size_t layer, std::size_t len) const {
    return std::span<const Word>(layers_[layer]).subspan(len * words_, words_);
  }

  const IdArithmetic& ids_;
  std::vector<std::pair<ElementId, std::int64_t>> runs_;
  std::size_t n_ = 0, words_ = 0, max_len_ = 0;
  std::vector<std::vector<Word>> layers_;
};

}  // namespace detail

/// Exact length spectrum of the non-empty zero-sum subsequences of S.
///
/// Dynamic program over (sum, length) states, one layer per distinct element.
/// The witness for each length is the lexicographically smallest sub-multiset
/// (in canonical id order) of that length summing to 0.
inline ZeroSumProfile zero_sum_profile(const Sequence& s, DpLimits limits = {}) {
  const auto& group = s.group();
  const std::uint64_t steps =
      static_cast<std::uint64_t>(group.order()) * s.length() * std::max<std::uint64_t>(s.length(), 1);
  if (steps > limits.step_ceiling) {
    throw ResourceError("profile DP ceiling exceeded: |G|*|S|^2 = " + std::to_string(steps) + " > " +
                        std::to_string(limits.step_ceiling));
  }
  IdArithmetic ids(group);
  detail::SuffixReach reach(s, ids);
  ZeroSumProfile profile;
  for (std::size_t len = 1; len <= s.length(); ++len) {
    if (reach.reachable(0, len, 0)) {
      profile.lengths.push_back(static_cast<std::int64_t>(len));
      profile.witnesses.emplace(static_cast<std::int64_t>(len), Sequence(group, reach.witness(len, 0)));
    }
  }
  return profile;
}

inline bool is_zero_sumfree(const Sequence& s, DpLimits limits = {}) { return zero_sum_profile(s, limits).empty(); }

inline bool is_zero_sum(const Sequence& s) { return !s.empty() && s.group().is_zero(sigma(s)); }

inline bool is_minimal_zero_sum(const Sequence& s, DpLimits limits = {}) {
  if (!is_zero_sum(s)) return false;
  auto profile = zero_sum_profile(s, limits);
  return profile.lengths.size() == 1 && profile.lengths.front() == static_cast<std::int64_t>(s.length());
}

inline bool is_dispersive(const Sequence& s, DpLimits limits = {}) {
  return zero_sum_profile(s, limits).lengths.size() >= 2;
}

/// Normality from an already computed profile; see is_normal.
inline bool is_normal(const Sequence& s, const ZeroSumProfile& profile, std::int64_t davenport) {
  const auto len = static_cast<std::int64_t>(s.length());
  if (len < davenport) {
    throw PreconditionError("normality needs |S| >= D: |S| = " + std::to_string(len) +
                            ", D = " + std::to_string(davenport));
  }
  if (profile.empty()) {
    throw InconsistentDavenportError("sequence " + s.to_string() + " of length >= D = " + std::to_string(davenport) +
                                     " has no zero-sum subsequence");
  }
  return profile.max_length() <= len - davenport + 1;
}

/// S is normal when |S| >= D and every zero-sum subsequence S' has
/// |S'| <= |S| - D + 1. D is supplied by the caller.
inline bool is_normal(const Sequence& s, std::int64_t davenport, DpLimits limits = {}) {
  if (static_cast<std::int64_t>(s.length()) < davenport) return is_normal(s, ZeroSumProfile{}, davenport);
  return is_normal(s, zero_sum_profile(s, limits), davenport);
}

/// S = 0^i T with exactly i zeros and T zero-sumfree.
inline bool matches_normal_form(const Sequence& s, std::int64_t i, DpLimits limits = {}) {
  if (i < 1) throw PreconditionError("normal form needs i >= 1, got " + std::to_string(i));
  const ElementId zero = 0;
  if (s.multiplicity(zero) != i) return false;
  Sequence zeros(s.group(), std::vector<ElementId>(static_cast<std::size_t>(i), zero));
  return is_zero_sumfree(s.remove(zeros), limits);
}

/// A split S = 0^k T U with T zero-sumfree, |T| = D - 1 and Supp(U) within Supp(T).
struct GaoZhuangSplit {
  std::int64_t zeros = 0;
  Sequence zero_sumfree_part;
  Sequence rest;
};

namespace detail {

template <class Visitor>
void visit_gao_zhuang_splits(const Sequence& s, std::int64_t davenport, Visitor&& visit, DpLimits limits) {
  if (!is_normal(s, davenport, limits)) {
    throw PreconditionError("sequence " + s.to_string() + " is not normal for D = " + std::to_string(davenport));
  }
  const auto& group = s.group();
  const std::int64_t zeros = s.multiplicity(ElementId{0});
  std::vector<std::pair<ElementId, std::int64_t>> runs;
  for (const auto& run : s.runs()) {
    if (run.first != 0) runs.push_back(run);
  }
  const std::int64_t want = davenport - 1;
  std::vector<std::int64_t> take(runs.size(), 0);
  bool stop = false;
  // Larger counts of smaller ids first: lexicographic order of T.
  auto recurse = [&](auto&& self, std::size_t j, std::int64_t remaining) -> void {
    if (stop) return;
    if (j == runs.size()) {
      if (remaining != 0) return;
      std::vector<ElementId> t_ids, u_ids;
      for (std::size_t k = 0; k < runs.size(); ++k) {
        if (take[k] == 0) return;  // an unused run would put a foreign element in U
        t_ids.insert(t_ids.end(), static_cast<std::size_t>(take[k]), runs[k].first);
        u_ids.insert(u_ids.end(), static_cast<std::size_t>(runs[k].second - take[k]), runs[k].first);
      }
      Sequence t(group, std::move(t_ids));
      if (!is_zero_sumfree(t, limits)) return;
      if (!visit(GaoZhuangSplit{zeros, std::move(t), Sequence(group, std::move(u_ids))})) stop = true;
      return;
    }
    for (std::int64_t c = std::min(runs[j].second, remaining); c >= 1 && !stop; --c) {
      take[j] = c;
      self(self, j + 1, remaining - c);
    }
    take[j] = 0;
  };
  recurse(recurse, 0, want);
}

}  // namespace detail

/// First split S = 0^k T U (in lexicographic order of T), or none.
/// Throws PreconditionError when S is not normal for D.
inline std::optional<GaoZhuangSplit> matches_gao_zhuang_form(const Sequence& s, std::int64_t davenport,
                                                             DpLimits limits = {}) {
  std::optional<GaoZhuangSplit> found;
  detail::visit_gao_zhuang_splits(
      s, davenport,
      [&](GaoZhuangSplit split) {
        found = std::move(split);
        return false;
      },
      limits);
  return found;
}

inline std::vector<GaoZhuangSplit> all_gao_zhuang_splits(const Sequence& s, std::int64_t davenport,
                                                         DpLimits limits = {}) {
  std::vector<GaoZhuangSplit> out;
  detail::visit_gao_zhuang_splits(
      s, davenport,
      [&](GaoZhuangSplit split) {
        out.push_back(std::move(split));
        return true;
      },
      limits);
  return out;
}

}  // namespace zerosum
