#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "zerosum/zerosum.hpp"

namespace testing_support {

inline oracle::Group oracle_group(const zerosum::FiniteAbelianGroup& g) { return {g.invariant_factors()}; }

inline std::vector<oracle::Coords> coords_of(const zerosum::Sequence& s) {
  std::vector<oracle::Coords> out;
  for (std::size_t i = 0; i < s.length(); ++i) out.push_back(s.element(i).coords);
  return out;
}

inline std::vector<std::int64_t> lengths_of(const std::set<std::int64_t>& s) { return {s.begin(), s.end()}; }

inline zerosum::Sequence random_sequence(std::mt19937_64& rng, const zerosum::FiniteAbelianGroup& g,
                                         std::size_t length) {
  std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(g.order() - 1));
  std::vector<zerosum::ElementId> ids(length);
  for (auto& id : ids) id = pick(rng);
  return zerosum::Sequence(g, std::move(ids));
}

// Groups of order at most 16, for randomized sweeps.
inline const std::vector<std::string>& small_groups() {
  static const std::vector<std::string> groups{"C2",   "C3",   "C4",   "C5",    "C6",    "C7",  "C8",   "C9",
                                               "C10",  "C12",  "C16",  "C2xC2", "C2xC4", "C2xC6", "C3xC3",
                                               "C2xC8", "C4xC4", "C2^3", "C2^4", "C2xC2xC4"};
  return groups;
}

}  // namespace testing_support
