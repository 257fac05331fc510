#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

#include "zerosum/error.hpp"
#include "zerosum/group.hpp"
#include "zerosum/subsums.hpp"

namespace zerosum {

struct SearchOptions {
  std::uint64_t node_ceiling = 100'000'000;
  unsigned threads = 1;
  std::uint64_t progress_interval = 1'000'000;
  // Called with the running node count every progress_interval nodes, from
  // whichever worker crossed the mark.
  std::function<void(std::uint64_t)> progress;
};

/// C(n + k - 1, k): multisets of size k drawn from n kinds. Saturates at 2^64-1.
inline std::uint64_t multiset_count(std::uint64_t kinds, std::uint64_t k) {
  if (k == 0) return 1;
  if (kinds == 0) return 0;
  unsigned __int128 result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result = result * (kinds - 1 + i) / i;
    if (result > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(result);
}

enum class Step { descend, prune };

template <class Shard>
struct ShardOutcome {
  Shard shard;
  std::uint64_t nodes = 0;
  // Multisets of the target length decided inside this shard: leaves plus the
  // completions of every pruned prefix. Only meaningful for fixed lengths.
  std::uint64_t covered = 0;
};

namespace detail {

struct Aborted {};

// Runs fn(i) for i in [0, count) on up to `threads` workers. Results land in
// index order regardless of scheduling; the first exception (by index) is
// rethrown.
template <class Fn>
auto parallel_indexed(std::size_t count, unsigned threads, Fn&& fn) {
  using Result = std::invoke_result_t<Fn&, std::size_t>;
  std::vector<std::optional<Result>> results(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
      try {
        results[i].emplace(fn(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t workers = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(count, 1));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<Result> out;
  out.reserve(count);
  for (auto& r : results) out.push_back(std::move(*r));
  return out;
}

}  // namespace detail

/// Depth-first enumeration of multisets in canonical (non-decreasing id)
/// order, carrying an incremental SubsumTable.
///
/// The search is sharded by the first element; `make_shard(first)` builds the
/// per-shard visitor, whose `Step visit(std::span<const ElementId> prefix,
/// const SubsumTable& sums)` is called on every prefix of length >= 1. With a
/// fixed `length`, prefixes of that length are leaves. Shard results come
/// back in shard order, so merged outputs do not depend on `threads`.
template <class MakeShard>
auto run_search(const AdditionTable& table, SubsumLayout layout, std::optional<std::size_t> length,
                MakeShard&& make_shard, const SearchOptions& options) {
  using Shard = std::invoke_result_t<MakeShard&, ElementId>;
  const ElementId n = table.order();
  std::atomic<std::uint64_t> global_nodes{0};
  std::atomic<bool> abort{false};
  std::mutex progress_mutex;

  auto run_shard = [&](std::size_t first_index) -> ShardOutcome<Shard> {
    ShardOutcome<Shard> out{make_shard(static_cast<ElementId>(first_index)), 0, 0};
    if (length && *length == 0) return out;
    std::vector<SubsumTable> stack;
    stack.emplace_back(table, layout);
    std::vector<ElementId> prefix;

    auto count_node = [&] {
      ++out.nodes;
      const std::uint64_t total = global_nodes.fetch_add(1, std::memory_order_relaxed) + 1;
      if (abort.load(std::memory_order_relaxed)) throw detail::Aborted{};
      if (total > options.node_ceiling) {
        abort.store(true);
        throw ResourceError("search node ceiling exceeded: more than " + std::to_string(options.node_ceiling) +
                                " nodes",
                            total);
      }
      if (options.progress && options.progress_interval && total % options.progress_interval == 0) {
        std::lock_guard lock(progress_mutex);
        options.progress(total);
      }
    };

    auto recurse = [&](auto&& self, ElementId g) -> void {
      const std::size_t depth = prefix.size() + 1;
      if (stack.size() <= depth) stack.emplace_back(table, layout);
      stack[depth].assign_extended(stack[depth - 1], g);
      prefix.push_back(g);
      count_node();
      const Step step = out.shard.visit(std::span<const ElementId>(prefix), stack[depth]);
      if (length && depth == *length) {
        ++out.covered;
      } else if (step == Step::prune) {
        if (length) out.covered += multiset_count(n - g, *length - depth);
      } else {
        for (ElementId next = g; next < n; ++next) self(self, next);
      }
      prefix.pop_back();
    };
    recurse(recurse, static_cast<ElementId>(first_index));
    return out;
  };

  try {
    if (length && *length == 0) {
      // Only the empty multiset; no shard is visited.
      return std::vector<ShardOutcome<Shard>>{};
    }
    return detail::parallel_indexed(n, options.threads, run_shard);
  } catch (const detail::Aborted&) {
    throw ResourceError("search aborted", global_nodes.load());
  }
}

}  // namespace zerosum
