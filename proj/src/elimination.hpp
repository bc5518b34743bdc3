#pragma once

// Sparse Gaussian elimination with Markowitz pivoting, shared by the rational
// (fraction-free integer) and prime-field rank computations.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <tuple>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace coedge::detail {

template <class V>
using SparseRow = std::vector<std::pair<std::uint32_t, V>>;  // sorted by column

struct Overflow {};

/// Integer arithmetic on int64 that throws Overflow instead of wrapping.
struct CheckedInt {
  using Value = std::int64_t;

  static Value from_int(int x) { return x; }
  static bool is_unit(Value v) { return v == 1 || v == -1; }

  static Value mul(Value a, Value b) {
    Value r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  static Value sub(Value a, Value b) {
    Value r;
    if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  static Value gcd(Value a, Value b) { return std::gcd(a, b); }
  static Value div(Value a, Value b) { return a / b; }
  static bool is_zero(Value v) { return v == 0; }
  static bool is_one_abs(Value v) { return v == 1 || v == -1; }
};

struct BigInt {
  using Value = mpz_class;

  static Value from_int(int x) { return Value(x); }
  static bool is_unit(const Value& v) { return v == 1 || v == -1; }
  static Value mul(const Value& a, const Value& b) { return a * b; }
  static Value sub(const Value& a, const Value& b) { return a - b; }
  static Value gcd(const Value& a, const Value& b) {
    Value r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
  }
  static Value div(const Value& a, const Value& b) { return a / b; }
  static bool is_zero(const Value& v) { return sgn(v) == 0; }
  static bool is_one_abs(const Value& v) { return is_unit(v); }
};

/// target <- a * target - b * pivot with (a, b) = (pv, tv) / gcd, then the
/// row content is divided out. Scaling rows by nonzero integers preserves rank.
template <class Ar>
SparseRow<typename Ar::Value> integer_combine(const SparseRow<typename Ar::Value>& target,
                                              const SparseRow<typename Ar::Value>& pivot,
                                              const typename Ar::Value& pv, const typename Ar::Value& tv) {
  using V = typename Ar::Value;
  V a, b;
  if (Ar::is_unit(pv)) {
    a = Ar::from_int(1);
    b = Ar::mul(tv, pv);
  } else {
    V g = Ar::gcd(pv, tv);
    a = Ar::div(pv, g);
    b = Ar::div(tv, g);
  }
  SparseRow<V> out;
  out.reserve(target.size() + pivot.size());
  std::size_t i = 0, j = 0;
  const bool scale = !(a == Ar::from_int(1));
  while (i < target.size() || j < pivot.size()) {
    if (j == pivot.size() || (i < target.size() && target[i].first < pivot[j].first)) {
      out.emplace_back(target[i].first, scale ? Ar::mul(a, target[i].second) : target[i].second);
      ++i;
    } else if (i == target.size() || pivot[j].first < target[i].first) {
      out.emplace_back(pivot[j].first, Ar::sub(Ar::from_int(0), Ar::mul(b, pivot[j].second)));
      ++j;
    } else {
      V t = scale ? Ar::mul(a, target[i].second) : target[i].second;
      V r = Ar::sub(t, Ar::mul(b, pivot[j].second));
      if (!Ar::is_zero(r)) out.emplace_back(target[i].first, std::move(r));
      ++i, ++j;
    }
  }
  bool all_units = true;
  for (const auto& e : out)
    if (!Ar::is_one_abs(e.second)) {
      all_units = false;
      break;
    }
  if (!all_units && !out.empty()) {
    V g = out[0].second;
    for (std::size_t k = 1; k < out.size() && !Ar::is_one_abs(g); ++k) g = Ar::gcd(g, out[k].second);
    if (!Ar::is_one_abs(g))
      for (auto& e : out) e.second = Ar::div(e.second, g);
  }
  return out;
}

struct ModP {
  using Value = std::uint32_t;
  std::uint32_t p;

  Value inverse(Value a) const {
    // Fermat: a^(p-2).
    std::uint64_t r = 1, base = a, e = p - 2;
    while (e) {
      if (e & 1) r = r * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return static_cast<Value>(r);
  }

  SparseRow<Value> combine(const SparseRow<Value>& target, const SparseRow<Value>& pivot, Value pv, Value tv) const {
    const std::uint64_t f = static_cast<std::uint64_t>(tv) * inverse(pv) % p;
    SparseRow<Value> out;
    out.reserve(target.size() + pivot.size());
    std::size_t i = 0, j = 0;
    while (i < target.size() || j < pivot.size()) {
      if (j == pivot.size() || (i < target.size() && target[i].first < pivot[j].first)) {
        out.push_back(target[i++]);
      } else if (i == target.size() || pivot[j].first < target[i].first) {
        out.emplace_back(pivot[j].first, static_cast<Value>((p - f * pivot[j].second % p) % p));
        ++j;
      } else {
        const std::uint64_t r = (target[i].second + p - f * pivot[j].second % p) % p;
        if (r) out.emplace_back(target[i].first, static_cast<Value>(r));
        ++i, ++j;
      }
    }
    return out;
  }
};

/// Markowitz-pivoted elimination. `is_preferred` marks pivots to take first
/// (unit entries in the integer case); among those the pivot minimizes
/// (r_i - 1)(c_j - 1), ties broken by the smallest (row, column).
template <class V, class Combine, class Preferred>
std::size_t markowitz_rank(std::vector<SparseRow<V>> rows, std::size_t ncols, Combine&& combine,
                           Preferred&& is_preferred) {
  std::vector<std::uint32_t> colcount(ncols, 0);
  std::vector<std::uint32_t> live;
  for (std::uint32_t r = 0; r < rows.size(); ++r) {
    if (rows[r].empty()) continue;
    live.push_back(r);
    for (const auto& e : rows[r]) ++colcount[e.first];
  }
  std::size_t rank = 0;
  while (!live.empty()) {
    using Key = std::tuple<int, std::uint64_t, std::uint32_t, std::uint32_t>;
    Key best{2, std::numeric_limits<std::uint64_t>::max(), 0, 0};
    std::size_t best_pos = 0;
    for (std::size_t pos = 0; pos < live.size(); ++pos) {
      const std::uint32_t r = live[pos];
      const std::uint64_t rc = rows[r].size() - 1;
      for (const auto& e : rows[r]) {
        Key k{is_preferred(e.second) ? 0 : 1, rc * (colcount[e.first] - 1), r, e.first};
        if (k < best) best = k, best_pos = pos;
      }
    }
    const std::uint32_t pr = std::get<2>(best);
    const std::uint32_t pc = std::get<3>(best);
    ++rank;
    SparseRow<V> pivot = std::move(rows[pr]);
    live.erase(live.begin() + static_cast<std::ptrdiff_t>(best_pos));
    for (const auto& e : pivot) --colcount[e.first];
    auto pit = std::lower_bound(pivot.begin(), pivot.end(), pc,
                                [](const auto& e, std::uint32_t c) { return e.first < c; });
    const V pv = pit->second;

    std::size_t keep = 0;
    for (std::size_t pos = 0; pos < live.size(); ++pos) {
      const std::uint32_t r = live[pos];
      auto& row = rows[r];
      auto it = std::lower_bound(row.begin(), row.end(), pc,
                                 [](const auto& e, std::uint32_t c) { return e.first < c; });
      if (it != row.end() && it->first == pc) {
        const V tv = it->second;
        for (const auto& e : row) --colcount[e.first];
        row = combine(row, pivot, pv, tv);
        for (const auto& e : row) ++colcount[e.first];
      }
      if (!row.empty()) live[keep++] = r;
    }
    live.resize(keep);
  }
  return rank;
}

}  // namespace coedge::detail
