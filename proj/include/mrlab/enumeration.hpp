#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <vector>

namespace mrlab {

// k-subsets of {0..n-1} in lexicographic order.
template <typename Fn>
void for_each_combination(std::size_t n, std::size_t k, Fn&& fn) {
    if (k > n) return;
    std::vector<int> c(k);
    for (std::size_t i = 0; i < k; ++i) c[i] = static_cast<int>(i);
    const auto& cc = c;
    while (true) {
        fn(cc);
        // advance
        std::size_t i = k;
        while (i > 0) {
            --i;
            if (c[i] < static_cast<int>(n - k + i)) {
                ++c[i];
                for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
                break;
            }
            if (i == 0) return;
        }
        if (k == 0) return;
    }
}

// Next k-bit subset of an n-bit universe in increasing numeric order
// (Gosper's hack); returns false when exhausted.
inline bool next_bit_subset(std::uint64_t& v, std::uint64_t limit) {
    const std::uint64_t c = v & (~v + 1);
    const std::uint64_t r = v + c;
    v = (((r ^ v) >> 2) / c) | r;
    return v < limit;
}

inline std::vector<int> bits_of(std::uint64_t mask) {
    std::vector<int> out;
    for (int i = 0; mask; ++i, mask >>= 1)
        if (mask & 1) out.push_back(i);
    return out;
}

inline std::uint64_t mask_of(const std::vector<int>& set) {
    std::uint64_t m = 0;
    for (int x : set) m |= 1ull << x;
    return m;
}

// Compositions of `total` into `parts` parts, each within [lo, hi].
// `fn` returns false to stop the enumeration early.
template <typename Fn>
void for_each_composition_ordered(int total, int parts, int lo, int hi, bool descending, Fn&& fn) {
    std::vector<int> c(parts);
    const auto& cc = c;
    std::function<bool(int, int)> rec = [&](int idx, int remaining) -> bool {
        if (idx == parts) {
            if (remaining != 0) return true;
            return fn(cc);
        }
        const int rest = parts - idx - 1;
        const int top = std::min(hi, remaining - rest * lo);
        const int bot = std::max(lo, remaining - rest * hi);
        if (descending) {
            for (int v = top; v >= bot; --v) {
                c[idx] = v;
                if (!rec(idx + 1, remaining - v)) return false;
            }
        } else {
            for (int v = bot; v <= top; ++v) {
                c[idx] = v;
                if (!rec(idx + 1, remaining - v)) return false;
            }
        }
        return true;
    };
    if (parts > 0) rec(0, total);
}

// descending lexicographic order (larger leading parts first)
template <typename Fn>
void for_each_composition_desc(int total, int parts, int lo, int hi, Fn&& fn) {
    for_each_composition_ordered(total, parts, lo, hi, true, std::forward<Fn>(fn));
}

template <typename Fn>
void for_each_composition_asc(int total, int parts, int lo, int hi, Fn&& fn) {
    for_each_composition_ordered(total, parts, lo, hi, false, std::forward<Fn>(fn));
}

}  // namespace mrlab
