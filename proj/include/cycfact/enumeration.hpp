#pragma once

#include <vector>

#include "cycfact/cyclic_core.hpp"

namespace cycfact {

/// Calls fn(indices) for every k-subset of [lo, hi], ascending within each
/// subset and in lexicographic order across subsets.  k = 0 yields the empty
/// subset once.
template <class Fn>
void for_each_combination(u32 lo, u32 hi, u32 k, Fn&& fn) {
    if (k == 0) {
        const std::vector<u32> empty;
        fn(empty);
        return;
    }
    if (hi < lo || hi - lo + 1 < k) return;
    std::vector<u32> idx(k);
    for (u32 i = 0; i < k; ++i) idx[i] = lo + i;
    while (true) {
        fn(static_cast<const std::vector<u32>&>(idx));
        int i = static_cast<int>(k) - 1;
        while (i >= 0 && idx[static_cast<u32>(i)] == hi - (k - 1 - static_cast<u32>(i))) --i;
        if (i < 0) return;
        ++idx[static_cast<u32>(i)];
        for (u32 j = static_cast<u32>(i) + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace cycfact
