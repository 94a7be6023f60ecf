#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "model.hpp"

namespace acqlin {

/// Stable LSD bucket sort of `order` (row indexes) by lexicographic key
/// tuples. key(row, comp) must lie in [0, bound). Linear in rows + bound per
/// component. When `comparison_fallback` is set, uses std::stable_sort
/// instead (debug path).
template <typename KeyFn>
void radix_sort_rows(std::vector<int32_t>& order, int comps, int32_t bound, KeyFn key,
                     EvalStats* stats, bool comparison_fallback = false) {
  if (comps == 0 || order.size() <= 1) return;
  if (comparison_fallback) {
    std::stable_sort(order.begin(), order.end(), [&](int32_t a, int32_t b) {
      for (int c = 0; c < comps; ++c) {
        int32_t ka = key(a, c), kb = key(b, c);
        if (ka != kb) return ka < kb;
      }
      return false;
    });
    if (stats) stats->step(static_cast<int64_t>(order.size()) * comps);
    return;
  }
  std::vector<int32_t> tmp(order.size());
  std::vector<int32_t> count(static_cast<size_t>(bound) + 1);
  if (stats) stats->alloc(static_cast<int64_t>(order.size()) + bound + 1);
  for (int c = comps - 1; c >= 0; --c) {
    std::fill(count.begin(), count.end(), 0);
    for (int32_t r : order) ++count[key(r, c)];
    int32_t acc = 0;
    for (auto& v : count) {
      int32_t n = v;
      v = acc;
      acc += n;
    }
    for (int32_t r : order) tmp[count[key(r, c)]++] = r;
    order.swap(tmp);
    if (stats) stats->step(static_cast<int64_t>(order.size()) * 2 + bound);
  }
  if (stats) stats->release(static_cast<int64_t>(tmp.size()) + bound + 1);
}

}  // namespace acqlin
