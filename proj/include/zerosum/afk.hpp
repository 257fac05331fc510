#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "zerosum/error.hpp"
#include "zerosum/group.hpp"
#include "zerosum/sequence.hpp"

namespace zerosum {

/// Input of the Alon-Friedland-Kalai subset theorem: a prime p, exponents
/// d_1 <= ... <= d_n, residue sets S_j (each containing 0) and m integer
/// vectors a_i = (a_{i,1}, ..., a_{i,n}).
struct AfkInstance {
  std::int64_t p = 2;
  std::vector<std::int64_t> exponents;
  std::vector<std::set<std::int64_t>> residue_sets;
  std::vector<std::vector<std::int64_t>> vectors;

  std::size_t coordinates() const noexcept { return exponents.size(); }
  std::size_t vector_count() const noexcept { return vectors.size(); }

  std::int64_t modulus(std::size_t j) const {
    std::int64_t q = 1;
    for (std::int64_t k = 0; k < exponents.at(j); ++k) q *= p;
    return q;
  }
};

/// A non-empty index set I (0-based, ascending) and residues s_j in S_j with
/// sum_{i in I} a_{i,j} = s_j (mod p^{d_j}).
struct AfkSolution {
  std::vector<std::size_t> indices;
  std::vector<std::int64_t> residues;

  friend bool operator==(const AfkSolution&, const AfkSolution&) = default;
};

enum class AfkStrategy { automatic, plain, meet_in_the_middle };

struct AfkOptions {
  std::size_t max_vectors = 24;
  AfkStrategy strategy = AfkStrategy::automatic;
  // automatic switches to meet-in-the-middle above 2^this subsets
  std::size_t plain_log2_limit = 20;
};

/// card_q(S): number of distinct elements of S modulo q.
inline std::int64_t card_mod(const std::set<std::int64_t>& s, std::int64_t q) {
  std::set<std::int64_t> residues;
  for (std::int64_t v : s) residues.insert(detail::mod(v, q));
  return static_cast<std::int64_t>(residues.size());
}

inline void validate(const AfkInstance& inst) {
  auto fail = [](const std::string& why) { throw PreconditionError("invalid AFK instance: " + why); };
  if (inst.p < 2) fail("p must be a prime");
  for (std::int64_t d = 2; d * d <= inst.p; ++d) {
    if (inst.p % d == 0) fail(std::to_string(inst.p) + " is not prime");
  }
  if (inst.exponents.empty()) fail("no coordinates");
  if (inst.residue_sets.size() != inst.exponents.size()) fail("one residue set per coordinate required");
  for (std::size_t j = 0; j < inst.exponents.size(); ++j) {
    if (inst.exponents[j] < 1) fail("exponents must be positive");
    if (j && inst.exponents[j] < inst.exponents[j - 1]) fail("exponents must be non-decreasing");
    if (!inst.residue_sets[j].contains(0)) fail("every residue set must contain 0");
  }
  for (const auto& v : inst.vectors) {
    if (v.size() != inst.exponents.size()) fail("vector length differs from coordinate count");
  }
}

/// Right-hand side sum_j (p^{d_j} - card_p(S_j)) + 1 of the hypothesis, with
/// card taken modulo p exactly as the theorem states it.
inline std::int64_t afk_bound(const AfkInstance& inst) {
  validate(inst);
  std::int64_t total = 1;
  for (std::size_t j = 0; j < inst.coordinates(); ++j) total += inst.modulus(j) - card_mod(inst.residue_sets[j], inst.p);
  return total;
}

/// m >= sum_j (p^{d_j} - card_p(S_j)) + 1.
inline bool afk_hypothesis_holds(const AfkInstance& inst) {
  return static_cast<std::int64_t>(inst.vector_count()) >= afk_bound(inst);
}

/// True when card_p(S_j) and card_{p^{d_j}}(S_j) differ for some j, i.e. the
/// two readings of the hypothesis give different bounds.
inline bool afk_card_readings_differ(const AfkInstance& inst) {
  validate(inst);
  for (std::size_t j = 0; j < inst.coordinates(); ++j) {
    if (card_mod(inst.residue_sets[j], inst.p) != card_mod(inst.residue_sets[j], inst.modulus(j))) return true;
  }
  return false;
}

namespace detail {

struct AfkTargets {
  std::vector<std::int64_t> moduli;
  // allowed[j][r]: residue r mod p^{d_j} is hit by some element of S_j, with
  // that element recorded (the smallest such) in witness[j][r].
  std::vector<std::vector<std::optional<std::int64_t>>> witness;

  explicit AfkTargets(const AfkInstance& inst) {
    for (std::size_t j = 0; j < inst.coordinates(); ++j) {
      const std::int64_t q = inst.modulus(j);
      moduli.push_back(q);
      std::vector<std::optional<std::int64_t>> w(static_cast<std::size_t>(q));
      for (std::int64_t s : inst.residue_sets[j]) {  // ascending, so the first hit is the smallest
        auto& slot = w[static_cast<std::size_t>(mod(s, q))];
        if (!slot) slot = s;
      }
      witness.push_back(std::move(w));
    }
  }

  bool accepts(const std::vector<std::int64_t>& sums) const {
    for (std::size_t j = 0; j < sums.size(); ++j) {
      if (!witness[j][static_cast<std::size_t>(sums[j])]) return false;
    }
    return true;
  }

  std::vector<std::int64_t> residues_for(const std::vector<std::int64_t>& sums) const {
    std::vector<std::int64_t> out;
    for (std::size_t j = 0; j < sums.size(); ++j) out.push_back(*witness[j][static_cast<std::size_t>(sums[j])]);
    return out;
  }
};

inline std::vector<std::vector<std::int64_t>> reduced_vectors(const AfkInstance& inst) {
  std::vector<std::vector<std::int64_t>> out;
  for (const auto& v : inst.vectors) {
    std::vector<std::int64_t> r(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) r[j] = mod(v[j], inst.modulus(j));
    out.push_back(std::move(r));
  }
  return out;
}

// Subsets by increasing size, lexicographic within a size: the first hit is
// the answer.
inline std::optional<AfkSolution> afk_plain(const AfkInstance& inst) {
  const AfkTargets targets(inst);
  const auto vecs = reduced_vectors(inst);
  const std::size_t m = vecs.size(), n = inst.coordinates();
  std::vector<std::size_t> pick;
  std::vector<std::vector<std::int64_t>> partial{std::vector<std::int64_t>(n, 0)};
  std::optional<AfkSolution> found;
  auto recurse = [&](auto&& self, std::size_t start, std::size_t remaining) -> bool {
    if (remaining == 0) {
      if (!targets.accepts(partial.back())) return false;
      found = AfkSolution{pick, targets.residues_for(partial.back())};
      return true;
    }
    for (std::size_t i = start; i + remaining <= m; ++i) {
      std::vector<std::int64_t> next = partial.back();
      for (std::size_t j = 0; j < n; ++j) {
        next[j] += vecs[i][j];
        if (next[j] >= targets.moduli[j]) next[j] -= targets.moduli[j];
      }
      pick.push_back(i);
      partial.push_back(std::move(next));
      const bool done = self(self, i + 1, remaining - 1);
      partial.pop_back();
      pick.pop_back();
      if (done) return true;
    }
    return false;
  };
  for (std::size_t size = 1; size <= m; ++size) {
    if (recurse(recurse, 0, size)) return found;
  }
  return std::nullopt;
}

inline std::vector<std::size_t> mask_indices(std::uint64_t mask, std::size_t offset) {
  std::vector<std::size_t> out;
  while (mask) {
    out.push_back(offset + static_cast<std::size_t>(std::countr_zero(mask)));
    mask &= mask - 1;
  }
  return out;
}

// Lexicographic order of the ascending index lists of two equal-size masks.
inline bool mask_lex_less(std::uint64_t a, std::uint64_t b) {
  // The first differing element decides: the mask owning the lowest bit of
  // a ^ b contains the smaller index there.
  const std::uint64_t diff = a ^ b;
  if (!diff) return false;
  return (a & (diff & -diff)) != 0;
}

// Split the vectors into halves, tabulate right-half subset sums by residue
// vector (best subset per size), and join against every left subset and
// every admissible target vector.
inline std::optional<AfkSolution> afk_meet_in_the_middle(const AfkInstance& inst) {
  const AfkTargets targets(inst);
  const auto vecs = reduced_vectors(inst);
  const std::size_t m = vecs.size(), n = inst.coordinates();
  const std::size_t left = m / 2, right = m - left;

  auto key_of = [&](const std::vector<std::int64_t>& r) {
    std::uint64_t key = 0;
    for (std::size_t j = 0; j < n; ++j) key = key * static_cast<std::uint64_t>(targets.moduli[j]) + r[j];
    return key;
  };
  auto sums_of = [&](std::uint64_t mask, std::size_t offset) {
    std::vector<std::int64_t> s(n, 0);
    for (std::size_t i : mask_indices(mask, 0)) {
      for (std::size_t j = 0; j < n; ++j) s[j] = (s[j] + vecs[offset + i][j]) % targets.moduli[j];
    }
    return s;
  };

  // best[key][size] = lexicographically smallest right mask of that size.
  std::unordered_map<std::uint64_t, std::vector<std::optional<std::uint64_t>>> best;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << right); ++mask) {
    auto& slots = best[key_of(sums_of(mask, left))];
    if (slots.empty()) slots.resize(right + 1);
    auto& slot = slots[static_cast<std::size_t>(std::popcount(mask))];
    if (!slot || mask_lex_less(mask, *slot)) slot = mask;
  }

  // Admissible target residue vectors.
  std::vector<std::vector<std::int64_t>> goals{{}};
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<std::int64_t>> next;
    for (const auto& g : goals) {
      for (std::int64_t r = 0; r < targets.moduli[j]; ++r) {
        if (!targets.witness[j][static_cast<std::size_t>(r)]) continue;
        auto h = g;
        h.push_back(r);
        next.push_back(std::move(h));
      }
    }
    goals = std::move(next);
  }

  std::optional<std::vector<std::size_t>> champion;
  auto consider = [&](std::vector<std::size_t> candidate) {
    if (candidate.empty()) return;
    if (!champion || candidate.size() < champion->size() ||
        (candidate.size() == champion->size() && candidate < *champion)) {
      champion = std::move(candidate);
    }
  };
  for (std::uint64_t lmask = 0; lmask < (std::uint64_t{1} << left); ++lmask) {
    const auto lsum = sums_of(lmask, 0);
    const auto lidx = mask_indices(lmask, 0);
    for (const auto& goal : goals) {
      std::vector<std::int64_t> need(n);
      for (std::size_t j = 0; j < n; ++j) need[j] = mod(goal[j] - lsum[j], targets.moduli[j]);
      auto it = best.find(key_of(need));
      if (it == best.end()) continue;
      for (const auto& slot : it->second) {
        if (!slot) continue;
        auto candidate = lidx;
        auto ridx = mask_indices(*slot, left);
        candidate.insert(candidate.end(), ridx.begin(), ridx.end());
        consider(std::move(candidate));
      }
    }
  }
  if (!champion) return std::nullopt;
  std::vector<std::int64_t> sums(n, 0);
  for (std::size_t i : *champion) {
    for (std::size_t j = 0; j < n; ++j) sums[j] = (sums[j] + vecs[i][j]) % targets.moduli[j];
  }
  return AfkSolution{*champion, targets.residues_for(sums)};
}

}  // namespace detail

/// Searches for the non-empty index set promised by the theorem: the
/// smallest-size solution, lexicographically first among those. Both
/// strategies return the same answer.
inline std::optional<AfkSolution> afk_find_subset(const AfkInstance& inst, AfkOptions options = {}) {
  validate(inst);
  const std::size_t m = inst.vector_count();
  if (m > options.max_vectors) {
    throw ResourceError("AFK subset search ceiling exceeded: m = " + std::to_string(m) + " > " +
                        std::to_string(options.max_vectors));
  }
  AfkStrategy strategy = options.strategy;
  if (strategy == AfkStrategy::automatic) {
    strategy = m > options.plain_log2_limit ? AfkStrategy::meet_in_the_middle : AfkStrategy::plain;
  }
  return strategy == AfkStrategy::plain ? detail::afk_plain(inst) : detail::afk_meet_in_the_middle(inst);
}

/// Checks a claimed solution against the instance.
inline bool afk_solution_valid(const AfkInstance& inst, const AfkSolution& sol) {
  if (sol.indices.empty() || sol.residues.size() != inst.coordinates()) return false;
  for (std::size_t j = 0; j < inst.coordinates(); ++j) {
    if (!inst.residue_sets[j].contains(sol.residues[j])) return false;
    std::int64_t total = 0;
    for (std::size_t i : sol.indices) {
      if (i >= inst.vector_count()) return false;
      total = detail::mod(total + inst.vectors[i][j], inst.modulus(j));
    }
    if (total != detail::mod(sol.residues[j], inst.modulus(j))) return false;
  }
  return true;
}

/// Encodes a sequence over a p-group G = C_{p^{d_1}} + ... + C_{p^{d_r}} in
/// the standard basis, with S_j = {0}: a solution is a non-empty zero-sum
/// subsequence. With m = D*(G) the hypothesis holds with equality.
inline AfkInstance afk_instance_for_zero_sum(const Sequence& s) {
  const auto& group = s.group();
  const auto p = group.prime();
  if (!p) throw PreconditionError(group.to_string() + " is not a p-group");
  AfkInstance inst;
  inst.p = *p;
  for (std::int64_t n : group.invariant_factors()) {
    std::int64_t d = 0;
    for (std::int64_t q = 1; q < n; q *= *p) ++d;
    inst.exponents.push_back(d);
    inst.residue_sets.push_back({0});
  }
  for (std::size_t i = 0; i < s.length(); ++i) inst.vectors.push_back(s.element(i).coords);
  return inst;
}

/// Adds the length coordinate: d_{r+1} = 1, a_{i,r+1} = 1 and S_{r+1} the
/// complement of A in [0, p-1]. A solution is a non-empty zero-sum
/// subsequence whose length avoids every residue of A modulo p.
inline AfkInstance afk_instance_for_residue_avoidance(const Sequence& s, const std::set<std::int64_t>& avoided) {
  AfkInstance inst = afk_instance_for_zero_sum(s);
  inst.exponents.push_back(1);
  std::set<std::int64_t> allowed;
  for (std::int64_t r = 0; r < inst.p; ++r) {
    if (!avoided.contains(r)) allowed.insert(r);
  }
  inst.residue_sets.push_back(std::move(allowed));
  for (auto& v : inst.vectors) v.push_back(1);
  return inst;
}

/// A random instance satisfying the hypothesis, with m <= max_m. Exponents
/// and residue sets are drawn so the bound stays within reach.
inline AfkInstance random_afk_instance(std::mt19937_64& rng, std::int64_t p, std::size_t coordinates,
                                       std::size_t max_m) {
  auto uniform = [&](std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
  };
  while (true) {
    AfkInstance inst;
    inst.p = p;
    std::int64_t d = 1;
    for (std::size_t j = 0; j < coordinates; ++j) {
      if (uniform(0, 3) == 0) ++d;
      inst.exponents.push_back(d);
    }
    for (std::size_t j = 0; j < coordinates; ++j) {
      const std::int64_t q = inst.modulus(j);
      std::set<std::int64_t> s{0};
      const std::int64_t extra = uniform(0, q - 1);
      for (std::int64_t k = 0; k < extra; ++k) s.insert(uniform(-2 * q, 2 * q));
      inst.residue_sets.push_back(std::move(s));
    }
    const std::int64_t bound = afk_bound(inst);
    if (bound > static_cast<std::int64_t>(max_m)) continue;
    const auto m = static_cast<std::size_t>(uniform(bound, static_cast<std::int64_t>(max_m)));
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<std::int64_t> v;
      for (std::size_t j = 0; j < coordinates; ++j) v.push_back(uniform(-50, 50));
      inst.vectors.push_back(std::move(v));
    }
    return inst;
  }
}

}  // namespace zerosum
