#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

namespace coedge::bits {

using Word = std::uint64_t;

inline int words_for(int n) { return (n + 63) / 64; }

inline bool test(std::span<const Word> s, int i) { return (s[static_cast<std::size_t>(i) >> 6] >> (i & 63)) & 1U; }
inline void set(std::span<Word> s, int i) { s[static_cast<std::size_t>(i) >> 6] |= Word{1} << (i & 63); }
inline void reset(std::span<Word> s, int i) { s[static_cast<std::size_t>(i) >> 6] &= ~(Word{1} << (i & 63)); }

inline int count(std::span<const Word> s) {
  int c = 0;
  for (Word w : s) c += std::popcount(w);
  return c;
}

inline bool none(std::span<const Word> s) {
  for (Word w : s)
    if (w) return false;
  return true;
}

/// a & ~b == 0
inline bool subset_of(std::span<const Word> a, std::span<const Word> b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

template <class F>
inline void for_each(std::span<const Word> s, F&& f) {
  for (std::size_t w = 0; w < s.size(); ++w) {
    Word x = s[w];
    while (x) {
      const int b = std::countr_zero(x);
      f(static_cast<int>(w * 64) + b);
      x &= x - 1;
    }
  }
}

inline int first(std::span<const Word> s) {
  for (std::size_t w = 0; w < s.size(); ++w)
    if (s[w]) return static_cast<int>(w * 64) + std::countr_zero(s[w]);
  return -1;
}

/// Next k-subset of a 64-bit universe in increasing numeric order (Gosper).
inline std::uint64_t next_combination(std::uint64_t x) {
  const std::uint64_t c = x & (~x + 1);
  const std::uint64_t r = x + c;
  return (((r ^ x) >> 2) / c) | r;
}

inline std::uint64_t low_mask(int n) { return n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1); }

}  // namespace coedge::bits
