#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>

namespace zerosum::detail {

using Word = std::uint64_t;

constexpr std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }

inline bool test_bit(std::span<const Word> row, std::size_t i) { return (row[i >> 6] >> (i & 63)) & 1u; }

inline void set_bit(std::span<Word> row, std::size_t i) { row[i >> 6] |= Word{1} << (i & 63); }

inline bool any_bit(std::span<const Word> row) {
  for (Word w : row) {
    if (w) return true;
  }
  return false;
}

template <class Fn>
void for_each_bit(std::span<const Word> row, Fn&& fn) {
  for (std::size_t w = 0; w < row.size(); ++w) {
    Word bits = row[w];
    while (bits) {
      fn(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
}

}  // namespace zerosum::detail
