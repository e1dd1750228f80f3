#pragma once

#include <cstddef>
#include <vector>

namespace invchar {

/// Calls fn(indices) for every k-subset of {0..n-1} in lexicographic order.
/// Stops early if fn returns false.
template <class Fn>
void for_each_combination(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    if (!fn(static_cast<const std::vector<std::size_t>&>(idx))) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// Calls fn(multiset) for every non-decreasing sequence of length k drawn
/// from `items`, in lexicographic order of positions.
template <class T, class Fn>
void for_each_multiset(const std::vector<T>& items, std::size_t k, Fn&& fn) {
  if (items.empty()) {
    if (k == 0) fn(std::vector<T>{});
    return;
  }
  std::vector<std::size_t> pos(k, 0);
  std::vector<T> out(k);
  for (;;) {
    for (std::size_t i = 0; i < k; ++i) out[i] = items[pos[i]];
    fn(static_cast<const std::vector<T>&>(out));
    std::size_t i = k;
    while (i > 0 && pos[i - 1] == items.size() - 1) --i;
    if (i == 0) return;
    ++pos[i - 1];
    for (std::size_t j = i; j < k; ++j) pos[j] = pos[i - 1];
  }
}

}  // namespace invchar
