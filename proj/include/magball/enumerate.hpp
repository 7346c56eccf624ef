#pragma once

// Ordered enumeration helpers shared by the ball, the splitting checkers and
// the decoders. The order is always: support subsets in lexicographic order,
// then value tuples lexicographic over an ascending value list.

#include <cstdint>
#include <span>
#include <vector>

namespace magball {

/// Calls fn(span<const int>) for every w-subset of [0, n) in lexicographic
/// order. Stops early if fn returns false. Returns false iff stopped early.
template <typename Fn>
bool for_each_combination(int n, int w, Fn&& fn) {
  if (w < 0 || w > n) return true;
  std::vector<int> idx(w);
  for (int i = 0; i < w; ++i) idx[i] = i;
  while (true) {
    if (!fn(std::span<const int>(idx))) return false;
    int i = w - 1;
    while (i >= 0 && idx[i] == n - w + i) --i;
    if (i < 0) return true;
    ++idx[i];
    for (int j = i + 1; j < w; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// All w-subsets of [0, n) in lexicographic order, materialized.
std::vector<std::vector<int>> combinations(int n, int w);

/// Calls fn(span<const int> digits) for every tuple in [0, base)^len in
/// lexicographic order. Stops early if fn returns false.
template <typename Fn>
bool for_each_tuple(int base, int len, Fn&& fn) {
  std::vector<int> d(len, 0);
  if (base <= 0 && len > 0) return true;
  while (true) {
    if (!fn(std::span<const int>(d))) return false;
    int i = len - 1;
    while (i >= 0 && d[i] == base - 1) d[i--] = 0;
    if (i < 0) return true;
    ++d[i];
  }
}

/// The nonzero interval [-kminus, kplus] \ {0}, ascending.
std::vector<std::int64_t> magnitude_values(std::int64_t kplus, std::int64_t kminus);

}  // namespace magball
