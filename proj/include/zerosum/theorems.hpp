#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "zerosum/bases.hpp"
#include "zerosum/enumeration.hpp"
#include "zerosum/error.hpp"
#include "zerosum/group.hpp"
#include "zerosum/profile.hpp"
#include "zerosum/report.hpp"
#include "zerosum/schmid.hpp"
#include "zerosum/search.hpp"
#include "zerosum/sequence.hpp"
#include "zerosum/subsums.hpp"

namespace zerosum {

struct SweepOptions {
  SearchOptions search{};
  // Use this value for D(G) instead of computing it by search.
  std::optional<std::int64_t> davenport;
  std::size_t max_counterexamples = 100;
  // Record wall time in reports; off by default so reports are byte-stable.
  bool timing = false;
};

using ResidueSet = std::set<std::int64_t>;

/// All k-subsets of [1, q-1] in lexicographic order.
inline std::vector<ResidueSet> residue_subsets(std::int64_t q, std::int64_t k) {
  std::vector<ResidueSet> out;
  std::vector<std::int64_t> pick;
  auto rec = [&](auto&& self, std::int64_t from) -> void {
    if (static_cast<std::int64_t>(pick.size()) == k) {
      out.emplace_back(pick.begin(), pick.end());
      return;
    }
    for (std::int64_t v = from; v <= q - 1; ++v) {
      pick.push_back(v);
      self(self, v + 1);
      pick.pop_back();
    }
  };
  if (k >= 0) rec(rec, 1);
  return out;
}

inline std::string residue_text(const ResidueSet& a) {
  std::string out = "{";
  for (auto it = a.begin(); it != a.end(); ++it) out += (it == a.begin() ? "" : ",") + std::to_string(*it);
  return out + "}";
}

namespace detail {

// Per-shard accumulator; merged in shard order.
struct SweepLog {
  std::vector<Counterexample> counterexamples;
  std::uint64_t failures = 0;
  std::uint64_t examined = 0;
  std::map<std::string, std::uint64_t> tallies;
  std::size_t limit = 100;

  void fail(Sequence s, std::string clause) {
    ++failures;
    if (counterexamples.size() < limit) counterexamples.push_back({std::move(s), std::move(clause)});
  }

  void merge(const SweepLog& other) {
    for (const auto& c : other.counterexamples) {
      if (counterexamples.size() < limit) counterexamples.push_back(c);
    }
    failures += other.failures;
    examined += other.examined;
    for (const auto& [k, v] : other.tallies) tallies[k] += v;
  }
};

struct GridOutcome {
  SweepLog log;
  std::uint64_t covered = 0;
  std::uint64_t nodes = 0;
};

using LeafCheck = std::function<void(std::span<const ElementId>, const SubsumTable*, SweepLog&)>;

// Runs `check` on every multiset of the given length passing `filter`.
// `covered` counts the whole grid, pruned prefixes included.
inline GridOutcome sweep_grid(const FiniteAbelianGroup& group, std::size_t length, const SequenceFilter& filter,
                              bool need_lengths, const SweepOptions& options, const LeafCheck& check) {
  using Emit = std::function<void(std::span<const ElementId>, const SubsumTable*)>;
  struct Shard {
    std::shared_ptr<SweepLog> log;
    FilterShard<Emit> inner;
    Step visit(std::span<const ElementId> p, const SubsumTable& s) { return inner.visit(p, s); }
  };
  GridOutcome out;
  out.log.limit = options.max_counterexamples;
  if (length == 0) throw PreconditionError("sweeps need a positive sequence length");
  AdditionTable table(group);
  auto shards = run_search(
      table, filter_layout(filter, length, need_lengths), length,
      [&](ElementId) {
        auto log = std::make_shared<SweepLog>();
        log->limit = options.max_counterexamples;
        Emit emit = [log, &check](std::span<const ElementId> ids, const SubsumTable* sums) {
          ++log->examined;
          check(ids, sums, *log);
        };
        return Shard{log, FilterShard<Emit>(table, length, filter, std::move(emit))};
      },
      options.search);
  for (const auto& s : shards) {
    out.log.merge(*s.shard.log);
    out.covered += s.covered;
    out.nodes += s.nodes;
  }
  return out;
}

// Zero-sum lengths of the full sequence, read off a capped(L) subsum table.
inline std::vector<std::int64_t> lengths_from(const SubsumTable& sums, std::size_t length) {
  std::vector<std::int64_t> out;
  for (std::size_t len = 1; len <= length; ++len) {
    if (sums.zero_in(static_cast<std::size_t>(sums.class_of(len)))) out.push_back(static_cast<std::int64_t>(len));
  }
  return out;
}

inline bool avoids_all(std::int64_t len, std::int64_t modulus, const ResidueSet& a) {
  return !a.contains(len % modulus);
}

inline Sequence sequence_of(const FiniteAbelianGroup& group, std::span<const ElementId> ids) {
  return Sequence(group, std::vector<ElementId>(ids.begin(), ids.end()));
}

inline std::int64_t resolve_davenport(const FiniteAbelianGroup& group, const SweepOptions& options) {
  if (options.davenport) return *options.davenport;
  return davenport(group, options.search).value;
}

class Stopwatch {
 public:
  std::uint64_t millis(bool timing) const {
    if (!timing) return 0;
    return static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_).count());
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline VerificationReport make_report(std::string statement, std::string kind, const FiniteAbelianGroup& group) {
  return VerificationReport{std::move(statement), std::move(kind), group, nlohmann::json::object(), {}, 0, 0, 0, 0,
                            nlohmann::json::object()};
}

inline void absorb(VerificationReport& report, const GridOutcome& grid, std::size_t limit) {
  for (const auto& c : grid.log.counterexamples) {
    if (report.counterexamples.size() < limit) report.counterexamples.push_back(c);
  }
  report.counterexamples_total += grid.log.failures;
  report.instances_checked += grid.covered;
  report.nodes += grid.nodes;
  for (const auto& [k, v] : grid.log.tallies) {
    report.stats[k] = report.stats.value(k, std::uint64_t{0}) + v;
  }
}

inline std::int64_t require_prime(const FiniteAbelianGroup& group, const std::string& what) {
  const auto p = group.prime();
  if (!p) throw PreconditionError(what + " needs a p-group, got " + group.to_string());
  return *p;
}

inline void require_range(std::int64_t v, std::int64_t lo, std::int64_t hi, const std::string& what) {
  if (v < lo || v > hi) {
    throw PreconditionError(what + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "], got " +
                            std::to_string(v));
  }
}

inline void require_residue_set(const ResidueSet& a, std::int64_t q, std::int64_t size) {
  if (static_cast<std::int64_t>(a.size()) != size) {
    throw PreconditionError("A must have exactly " + std::to_string(size) + " element(s), got " + residue_text(a));
  }
  for (std::int64_t b : a) require_range(b, 1, q - 1, "elements of A");
}

inline nlohmann::json residue_json(const std::vector<ResidueSet>& sets) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& a : sets) out.push_back(std::vector<std::int64_t>(a.begin(), a.end()));
  return out;
}

// Residue avoidance modulo q (p for p-groups, n_1 in general): every
// sequence of length D + i - 1 has a zero-sum subsequence whose length avoids
// A modulo q, for every A in `sets`.
inline VerificationReport residue_avoidance_sweep(std::string statement, std::string kind,
                                                  const FiniteAbelianGroup& group, std::int64_t q, std::int64_t i,
                                                  std::optional<ResidueSet> a, const SweepOptions& options) {
  Stopwatch clock;
  require_range(i, 1, q, "i");
  std::vector<ResidueSet> sets;
  if (a) {
    require_residue_set(*a, q, i - 1);
    sets.push_back(*a);
  } else {
    sets = residue_subsets(q, i - 1);
  }
  const std::int64_t d = resolve_davenport(group, options);
  const auto length = static_cast<std::size_t>(d + i - 1);
  auto report = make_report(std::move(statement), std::move(kind), group);
  report.params = {{"i", i}, {"A", residue_json(sets)}, {"D", d}, {"length", length}, {"modulus", q}};
  auto grid = sweep_grid(group, length, {}, true, options,
                         [&](std::span<const ElementId> ids, const SubsumTable* sums, SweepLog& log) {
                           const auto lengths = lengths_from(*sums, length);
                           for (const auto& set : sets) {
                             bool ok = false;
                             for (std::int64_t len : lengths) ok = ok || avoids_all(len, q, set);
                             if (!ok) {
                               log.fail(sequence_of(group, ids),
                                        "no zero-sum subsequence with length avoiding A=" + residue_text(set) +
                                            " mod " + std::to_string(q));
                             }
                           }
                         });
  absorb(report, grid, options.max_counterexamples);
  report.millis = clock.millis(options.timing);
  return report;
}

// Normal sequences of length D + i - 1 must be 0^i T with T zero-sumfree.
inline VerificationReport normal_structure_sweep(std::string statement, std::string kind,
                                                 const FiniteAbelianGroup& group, std::int64_t i, std::int64_t d,
                                                 const SweepOptions& options, nlohmann::json params) {
  Stopwatch clock;
  const auto length = static_cast<std::size_t>(d + i - 1);
  auto report = make_report(std::move(statement), std::move(kind), group);
  params["i"] = i;
  params["D"] = d;
  params["length"] = length;
  report.params = std::move(params);
  SequenceFilter filter;
  filter.normal_davenport = d;
  auto grid = sweep_grid(group, length, filter, false, options,
                         [&](std::span<const ElementId> ids, const SubsumTable*, SweepLog& log) {
                           ++log.tallies["normal_sequences"];
                           Sequence s = sequence_of(group, ids);
                           if (!matches_normal_form(s, i)) {
                             log.fail(std::move(s), "normal sequence is not of the form 0^" + std::to_string(i) +
                                                        " T with T zero-sumfree");
                           }
                         });
  report.stats["normal_sequences"] = 0;
  absorb(report, grid, options.max_counterexamples);
  report.millis = clock.millis(options.timing);
  return report;
}

}  // namespace detail

/// A non-empty zero-sum subsequence of S whose length avoids every residue
/// of A modulo p: the shortest one, canonical first among equal lengths.
/// Requires a p-group, |S| = D + i - 1 with i in [1, p], |A| = i - 1 and
/// A within [1, p-1]. Absence contradicts the theorem and raises a
/// SoundnessAlarm carrying the instance.
inline Sequence verify_theorem5(const Sequence& s, const ResidueSet& a, std::optional<std::int64_t> davenport_value = {}) {
  const auto& group = s.group();
  const std::int64_t p = detail::require_prime(group, "residue avoidance");
  const std::int64_t d = davenport_value ? *davenport_value : davenport(group).value;
  const std::int64_t i = static_cast<std::int64_t>(s.length()) - d + 1;
  detail::require_range(i, 1, p, "|S| - D + 1");
  detail::require_residue_set(a, p, i - 1);
  const auto profile = zero_sum_profile(s);
  for (std::int64_t len : profile.lengths) {
    if (detail::avoids_all(len, p, a)) return profile.witnesses.at(len);
  }
  throw SoundnessAlarm("no zero-sum subsequence of " + s.to_string() + " over " + group.to_string() +
                       " has length avoiding A=" + residue_text(a) + " mod " + std::to_string(p));
}

/// Every sequence of length D + i - 1 over a p-group; all (i-1)-subsets A
/// of [1, p-1] when `a` is empty.
inline VerificationReport sweep_theorem5(const FiniteAbelianGroup& group, std::int64_t i,
                                         std::optional<ResidueSet> a = {}, const SweepOptions& options = {}) {
  const std::int64_t p = detail::require_prime(group, "theorem5 sweep");
  return detail::residue_avoidance_sweep("theorem5", "theorem", group, p, i, std::move(a), options);
}

/// Normal sequences over a p-group, i in [1, p-1].
inline VerificationReport sweep_theorem3(const FiniteAbelianGroup& group, std::int64_t i,
                                         const SweepOptions& options = {}) {
  const std::int64_t p = detail::require_prime(group, "theorem3 sweep");
  detail::require_range(i, 1, p - 1, "i");
  return detail::normal_structure_sweep("theorem3", "theorem", group, i, detail::resolve_davenport(group, options),
                                        options, nlohmann::json::object());
}

/// Both dispersiveness clauses on every sequence of length D + i - 1.
inline VerificationReport sweep_corollary7(const FiniteAbelianGroup& group, std::int64_t i,
                                           const SweepOptions& options = {}) {
  detail::Stopwatch clock;
  const std::int64_t p = detail::require_prime(group, "corollary7 sweep");
  if (i < 1) throw PreconditionError("i must be at least 1");
  const std::int64_t d = detail::resolve_davenport(group, options);
  const auto length = static_cast<std::size_t>(d + i - 1);
  auto report = detail::make_report("corollary7", "theorem", group);
  report.params = {{"i", i}, {"D", d}, {"length", length}};
  auto grid = detail::sweep_grid(
      group, length, {}, true, options,
      [&](std::span<const ElementId> ids, const SubsumTable* sums, detail::SweepLog& log) {
        const auto lengths = detail::lengths_from(*sums, length);
        bool coprime = false;
        bool divisible = false;
        for (std::int64_t len : lengths) (len % p == 0 ? divisible : coprime) = true;
        if (i >= 2 && coprime) {
          ++log.tallies["clause_i_applies"];
          if (lengths.size() < 2) log.fail(detail::sequence_of(group, ids), "(i) sequence is not dispersive");
        }
        if (!divisible) {
          ++log.tallies["clause_ii_applies"];
          if (i > p - 1) {
            log.fail(detail::sequence_of(group, ids), "(ii) no zero-sum length divisible by p although i >= p");
          } else if (static_cast<std::int64_t>(lengths.size()) < i) {
            log.fail(detail::sequence_of(group, ids), "(ii) fewer than i distinct zero-sum lengths");
          }
        }
      });
  report.stats = {{"clause_i_applies", 0}, {"clause_ii_applies", 0}};
  detail::absorb(report, grid, options.max_counterexamples);
  report.millis = clock.millis(options.timing);
  return report;
}

inline FiniteAbelianGroup square_group(std::int64_t n) {
  if (n < 2) throw PreconditionError("Property B needs n >= 2, got " + std::to_string(n));
  return FiniteAbelianGroup::canonicalize({n, n});
}

/// Every minimal zero-sum sequence of length 2n - 1 over C_n + C_n has an
/// element of multiplicity at least n - 1.
inline VerificationReport property_b(std::int64_t n, const SweepOptions& options = {}) {
  detail::Stopwatch clock;
  const auto group = square_group(n);
  const auto length = static_cast<std::size_t>(2 * n - 1);
  auto report = detail::make_report("property_b", "conjecture", group);
  report.params = {{"n", n}, {"length", length}};
  SequenceFilter filter;
  filter.minimal_zero_sum = true;
  auto grid = detail::sweep_grid(group, length, filter, false, options,
                                 [&](std::span<const ElementId> ids, const SubsumTable*, detail::SweepLog& log) {
                                   ++log.tallies["minimal_zero_sum_sequences"];
                                   Sequence s = detail::sequence_of(group, ids);
                                   if (static_cast<std::int64_t>(s.max_multiplicity()) < n - 1) {
                                     log.fail(std::move(s), "no element repeated n-1 times");
                                   }
                                 });
  report.stats["minimal_zero_sum_sequences"] = 0;
  detail::absorb(report, grid, options.max_counterexamples);
  report.millis = clock.millis(options.timing);
  return report;
}

namespace detail {

inline RankTwoShape require_property_b(const FiniteAbelianGroup& group, const SweepOptions& options,
                                       VerificationReport& report) {
  const auto shape = RankTwoShape::of(group);
  const auto pb = property_b(shape.m, options);
  if (!pb.verified()) {
    throw PreconditionError("Property B does not hold for m = " + std::to_string(shape.m));
  }
  report.stats["property_b_instances"] = pb.instances_checked;
  return shape;
}

}  // namespace detail

/// Calls visit(form) on every Schmid parameterization over C_m + C_mn with
/// multipliers reduced (form I: into [0, ord(e_j)); form II: bounded by
/// m - 1) and listed as non-decreasing vectors, since the resulting sequence
/// only depends on their multiset.
template <class Visitor>
void visit_schmid_forms(const FiniteAbelianGroup& group, Visitor&& visit, EnumerationCeiling ceiling = {}) {
  const auto shape = RankTwoShape::of(group);
  const std::int64_t top = shape.m * shape.n;
  // Non-decreasing vectors of `count` values in [0, hi) whose sum passes `keep`.
  auto vectors = [](std::int64_t count, std::int64_t hi, auto keep) {
    std::vector<std::vector<std::int64_t>> out;
    std::vector<std::int64_t> cur;
    auto rec = [&](auto&& self, std::int64_t from, std::int64_t sum) -> void {
      if (static_cast<std::int64_t>(cur.size()) == count) {
        if (keep(sum)) out.push_back(cur);
        return;
      }
      for (std::int64_t x = from; x < hi; ++x) {
        cur.push_back(x);
        self(self, x, sum + x);
        cur.pop_back();
      }
    };
    rec(rec, 0, 0);
    return out;
  };
  const std::vector<std::optional<std::int64_t>> constraints{std::nullopt, top};
  for (const auto& basis : enumerate_bases(group, constraints, ceiling)) {
    for (int j : {1, 2}) {
      const std::int64_t oj = basis.orders[j == 1 ? 0 : 1];
      const std::int64_t ok = basis.orders[j == 1 ? 1 : 0];
      for (auto& xs : vectors(ok, oj, [&](std::int64_t sum) { return detail::mod(sum, oj) == oj - 1; })) {
        visit(SchmidForm{SchmidFormI{basis.elements[0], basis.elements[1], j, std::move(xs)}});
      }
    }
  }
  for (std::int64_t s = 1; s <= shape.n; ++s) {
    const auto xs_all = vectors((shape.n + 1 - s) * shape.m, shape.m,
                                [&](std::int64_t sum) { return sum == shape.m - 1; });
    for (const auto& [g1, g2] : enumerate_generating_pairs(group, top, ceiling)) {
      if (s != 1 && group.scalar_mul(shape.m, g1) != group.scalar_mul(shape.m, g2)) continue;
      for (const auto& xs : xs_all) visit(SchmidForm{SchmidFormII{s, g1, g2, xs}});
    }
  }
}

/// Forward direction: every generated form is a minimal zero-sum sequence of
/// length m + mn - 1. Converse: after Property B is confirmed for m, every
/// minimal zero-sum sequence of that length matches a form.
inline VerificationReport sweep_theorem8(const FiniteAbelianGroup& group, const SweepOptions& options = {}) {
  detail::Stopwatch clock;
  auto report = detail::make_report("theorem8", "theorem", group);
  const auto shape = detail::require_property_b(group, options, report);
  const auto length = static_cast<std::size_t>(shape.davenport());
  report.params = {{"m", shape.m}, {"n", shape.n}, {"length", length}};

  std::uint64_t generated = 0;
  std::uint64_t generation_failures = 0;
  visit_schmid_forms(group, [&](const SchmidForm& form) {
    ++generated;
    Sequence s = generate_schmid(group, form);
    if (s.length() != length || !is_minimal_zero_sum(s)) {
      ++generation_failures;
      if (report.counterexamples.size() < options.max_counterexamples) {
        report.counterexamples.push_back({s, "generated " + describe(group, form) + " is not a maximal minimal zero-sum sequence"});
      }
    }
  });
  report.counterexamples_total += generation_failures;
  report.stats["forms_generated"] = generated;

  SequenceFilter filter;
  filter.minimal_zero_sum = true;
  auto grid = detail::sweep_grid(group, length, filter, false, options,
                                 [&](std::span<const ElementId> ids, const SubsumTable*, detail::SweepLog& log) {
                                   ++log.tallies["minimal_zero_sum_sequences"];
                                   Sequence s = detail::sequence_of(group, ids);
                                   const auto form = match_schmid(s);
                                   if (!form) {
                                     log.fail(std::move(s), "matches neither Schmid form");
                                   } else {
                                     ++log.tallies[form->index() == 0 ? "matched_form_i" : "matched_form_ii"];
                                   }
                                 });
  report.stats["minimal_zero_sum_sequences"] = 0;
  report.stats["matched_form_i"] = 0;
  report.stats["matched_form_ii"] = 0;
  detail::absorb(report, grid, options.max_counterexamples);
  report.millis = clock.millis(options.timing);
  return report;
}

/// Single instance: T zero-sumfree with |T| = D - 1, U non-empty with
/// Supp(U) within Supp(T); every zero-sum subsequence of TU has length >= m.
inline VerificationReport verify_theorem12(const Sequence& t, const Sequence& u, const SweepOptions& options = {}) {
  detail::Stopwatch clock;
  const auto& group = t.group();
  if (!(u.group() == group)) throw PreconditionError("T and U live in different groups");
  auto report = detail::make_report("theorem12", "theorem", group);
  const auto shape = detail::require_property_b(group, options, report);
  if (static_cast<std::int64_t>(t.length()) != shape.davenport() - 1) {
    throw PreconditionError("T must have length D - 1 = " + std::to_string(shape.davenport() - 1));
  }
  if (!is_zero_sumfree(t)) throw PreconditionError("T must be zero-sumfree");
  if (u.empty()) throw PreconditionError("U must be non-empty");
  if (!u.support_within(t)) throw PreconditionError("Supp(U) must lie inside Supp(T)");
  report.params = {{"T", t.to_string()}, {"U", u.to_string()}, {"m", shape.m}};
  const Sequence s = t.concat(u);
  const auto profile = zero_sum_profile(s);
  report.instances_checked = 1;
  report.stats["min_zero_sum_length"] = profile.empty() ? 0 : profile.min_length();
  if (!profile.empty() && profile.min_length() < shape.m) {
    report.counterexamples.push_back({s, "zero-sum subsequence of length " + std::to_string(profile.min_length()) +
                                             " < m"});
    report.counterexamples_total = 1;
  }
  report.millis = clock.millis(options.timing);
  return report;
}

/// All pairs (T, U) with T zero-sumfree of length D - 1 and 1 <= |U| <= max_u
/// drawn from Supp(T). instances_checked counts pairs; the T grid coverage is
/// in stats.
inline VerificationReport sweep_theorem12(const FiniteAbelianGroup& group, std::int64_t max_u,
                                          const SweepOptions& options = {}) {
  detail::Stopwatch clock;
  if (max_u < 1) throw PreconditionError("max |U| must be at least 1");
  auto report = detail::make_report("theorem12", "theorem", group);
  const auto shape = detail::require_property_b(group, options, report);
  const auto length = static_cast<std::size_t>(shape.davenport() - 1);
  report.params = {{"m", shape.m}, {"n", shape.n}, {"max_u", max_u}, {"length_T", length}};
  SequenceFilter filter;
  filter.zero_sumfree = true;
  auto grid = detail::sweep_grid(
      group, length, filter, false, options,
      [&](std::span<const ElementId> ids, const SubsumTable*, detail::SweepLog& log) {
        ++log.tallies["zero_sumfree_T"];
        const Sequence t = detail::sequence_of(group, ids);
        const auto support = t.support();
        std::vector<ElementId> pick;
        auto rec = [&](auto&& self, std::size_t from) -> void {
          if (!pick.empty()) {
            ++log.tallies["pairs"];
            const Sequence s = t.concat(Sequence(group, pick));
            const auto profile = zero_sum_profile(s);
            if (!profile.empty() && profile.min_length() < shape.m) {
              log.fail(s, "U=" + Sequence(group, pick).to_string() + " gives a zero-sum of length " +
                              std::to_string(profile.min_length()) + " < m");
            }
          }
          if (static_cast<std::int64_t>(pick.size()) == max_u) return;
          for (std::size_t k = from; k < support.size(); ++k) {
            pick.push_back(group.id_of(support[k]));
            self(self, k);
            pick.pop_back();
          }
        };
        rec(rec, 0);
      });
  report.stats["zero_sumfree_T"] = 0;
  report.stats["pairs"] = 0;
  detail::absorb(report, grid, options.max_counterexamples);
  report.stats["grid_covered"] = report.instances_checked;
  report.instances_checked = report.stats["pairs"].get<std::uint64_t>();
  report.millis = clock.millis(options.timing);
  return report;
}

/// Normal sequences over C_m + C_mn, i in [1, m-1], after Property B for m.
inline VerificationReport sweep_theorem4(const FiniteAbelianGroup& group, std::int64_t i,
                                         const SweepOptions& options = {}) {
  auto probe = detail::make_report("theorem4", "theorem", group);
  const auto shape = detail::require_property_b(group, options, probe);
  detail::require_range(i, 1, shape.m - 1, "i");
  auto report = detail::normal_structure_sweep("theorem4", "theorem", group, i,
                                               detail::resolve_davenport(group, options), options,
                                               {{"m", shape.m}, {"n", shape.n}});
  report.stats["property_b_instances"] = probe.stats["property_b_instances"];
  return report;
}

/// Falsification harness for the normal-structure conjecture on any group,
/// i in [1, n_1 - 1].
inline VerificationReport sweep_conjecture1(const FiniteAbelianGroup& group, std::int64_t i,
                                            const SweepOptions& options = {}) {
  detail::require_range(i, 1, group.factor(0) - 1, "i");
  return detail::normal_structure_sweep("conjecture1", "conjecture", group, i,
                                        detail::resolve_davenport(group, options), options, nlohmann::json::object());
}

/// Residue avoidance modulo n_1 on any group, i in [1, n_1]; all A when none
/// is given.
inline VerificationReport sweep_conjecture10(const FiniteAbelianGroup& group, std::int64_t i,
                                             std::optional<ResidueSet> a = {}, const SweepOptions& options = {}) {
  return detail::residue_avoidance_sweep("conjecture10", "conjecture", group, group.factor(0), i, std::move(a),
                                         options);
}

/// Sequences of length eta_{l m}(G) + i - 1 contain a zero-sum subsequence
/// of length in [i, l m]. Every i in [1, l m] when i is not given.
inline VerificationReport sweep_conjecture11(const FiniteAbelianGroup& group, std::int64_t ell,
                                             std::optional<std::int64_t> i = {}, const SweepOptions& options = {}) {
  detail::Stopwatch clock;
  const auto eta_value = eta(group, ell, options.search).value;
  const std::int64_t cap = ell * group.exponent();
  std::vector<std::int64_t> levels;
  if (i) {
    detail::require_range(*i, 1, cap, "i");
    levels.push_back(*i);
  } else {
    for (std::int64_t k = 1; k <= cap; ++k) levels.push_back(k);
  }
  auto report = detail::make_report("conjecture11", "conjecture", group);
  report.params = {{"ell", ell}, {"eta", eta_value}, {"i", levels}};
  for (std::int64_t level : levels) {
    const auto length = static_cast<std::size_t>(eta_value + level - 1);
    auto grid = detail::sweep_grid(group, length, {}, true, options,
                                   [&](std::span<const ElementId> ids, const SubsumTable* sums,
                                       detail::SweepLog& log) {
                                     for (std::int64_t len : detail::lengths_from(*sums, length)) {
                                       if (len >= level && len <= cap) return;
                                     }
                                     log.fail(detail::sequence_of(group, ids),
                                              "i=" + std::to_string(level) + ": no zero-sum length in [" +
                                                  std::to_string(level) + ", " + std::to_string(cap) + "]");
                                   });
    detail::absorb(report, grid, options.max_counterexamples);
  }
  report.millis = clock.millis(options.timing);
  return report;
}

}  // namespace zerosum
