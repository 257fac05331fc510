#pragma once

// Brute-force reference implementations. They share no code with the
// library beyond the coordinate convention (one coordinate per factor,
// first coordinate most significant) so that results can be compared.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using Coords = std::vector<std::int64_t>;

struct Group {
  std::vector<std::int64_t> factors;

  std::int64_t order() const {
    std::int64_t n = 1;
    for (auto f : factors) n *= f;
    return n;
  }

  std::vector<Coords> elements() const {
    std::vector<Coords> out{Coords{}};
    for (auto f : factors) {
      std::vector<Coords> next;
      for (const auto& c : out) {
        for (std::int64_t v = 0; v < f; ++v) {
          auto d = c;
          d.push_back(v);
          next.push_back(d);
        }
      }
      out = std::move(next);
    }
    return out;
  }

  Coords zero() const { return Coords(factors.size(), 0); }

  Coords add(const Coords& a, const Coords& b) const {
    Coords c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = ((a[i] + b[i]) % factors[i] + factors[i]) % factors[i];
    return c;
  }

  bool is_zero(const Coords& a) const {
    return std::all_of(a.begin(), a.end(), [](std::int64_t v) { return v == 0; });
  }

  // Order by repeated addition.
  std::int64_t order_of(const Coords& g) const {
    Coords acc = g;
    std::int64_t k = 1;
    while (!is_zero(acc)) {
      acc = add(acc, g);
      ++k;
    }
    return k;
  }

  // Subgroup generated by a list, by closure.
  std::set<Coords> span(const std::vector<Coords>& gens) const {
    std::set<Coords> seen{zero()};
    std::vector<Coords> frontier{zero()};
    while (!frontier.empty()) {
      auto h = frontier.back();
      frontier.pop_back();
      for (const auto& g : gens) {
        auto s = add(h, g);
        if (seen.insert(s).second) frontier.push_back(s);
      }
    }
    return seen;
  }
};

// Histogram of element orders of C_{f_1} + ... + C_{f_k}, computed per
// component with lcm; a complete isomorphism invariant for finite Abelian
// groups.
inline std::map<std::int64_t, std::int64_t> order_histogram(const std::vector<std::int64_t>& factors) {
  std::map<std::int64_t, std::int64_t> hist{{1, 1}};
  for (auto f : factors) {
    std::map<std::int64_t, std::int64_t> next;
    for (auto [o, c] : hist) {
      for (std::int64_t v = 0; v < f; ++v) {
        const std::int64_t ov = f / std::gcd(f, v);
        next[std::lcm(o, ov)] += c;
      }
    }
    hist = std::move(next);
  }
  return hist;
}

// Set of lengths of non-empty zero-sum subsequences, via all 2^n subsets.
inline std::set<std::int64_t> subset_profile(const Group& g, const std::vector<Coords>& seq) {
  std::set<std::int64_t> lengths;
  const std::size_t n = seq.size();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    Coords acc = g.zero();
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> i) & 1U) acc = g.add(acc, seq[i]);
    }
    if (g.is_zero(acc)) lengths.insert(static_cast<std::int64_t>(__builtin_popcountll(mask)));
  }
  return lengths;
}

// Every multiset of `length` indices from [0, kinds), as sorted vectors,
// without any pruning.
inline void for_each_multiset(std::size_t kinds, std::size_t length,
                              const std::function<void(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (cur.size() == length) {
      visit(cur);
      return;
    }
    for (std::size_t k = from; k < kinds; ++k) {
      cur.push_back(k);
      rec(k);
      cur.pop_back();
    }
  };
  rec(0);
}

inline std::vector<Coords> pick(const std::vector<Coords>& elems, const std::vector<std::size_t>& idx) {
  std::vector<Coords> out;
  for (auto i : idx) out.push_back(elems[i]);
  return out;
}

inline bool zero_sumfree(const Group& g, const std::vector<Coords>& seq) { return subset_profile(g, seq).empty(); }

inline bool minimal_zero_sum(const Group& g, const std::vector<Coords>& seq) {
  const auto prof = subset_profile(g, seq);
  return prof.size() == 1 && *prof.begin() == static_cast<std::int64_t>(seq.size());
}

// Smallest t such that every multiset of length t has a zero-sum subsequence
// whose length passes `wanted`.
inline std::int64_t least_forcing_length(const Group& g, const std::function<bool(std::int64_t)>& wanted,
                                         std::size_t max_length = 12) {
  const auto elems = g.elements();
  for (std::size_t t = 1; t <= max_length; ++t) {
    bool all = true;
    for_each_multiset(elems.size(), t, [&](const std::vector<std::size_t>& idx) {
      if (!all) return;
      bool hit = false;
      for (auto len : subset_profile(g, pick(elems, idx))) hit = hit || wanted(len);
      all = hit;
    });
    if (all) return static_cast<std::int64_t>(t);
  }
  return -1;
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace oracle
