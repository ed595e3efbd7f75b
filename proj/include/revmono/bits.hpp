#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace revmono {

// Item subsets are masks: bit j set means item j is in the set.
using Mask = std::uint32_t;

inline int mask_count(Mask m) { return std::popcount(m); }

inline bool mask_has(Mask m, int j) { return (m >> j) & 1u; }

inline Mask full_mask(int m) { return m == 32 ? ~Mask(0) : ((Mask(1) << m) - 1); }

// Order on bundles by characteristic vector (item 0 first): at the lowest
// item where two sets differ, the set without it comes first. Empty set is
// least overall.
inline bool bundle_less(Mask a, Mask b) {
    if (a == b) return false;
    Mask d = (a ^ b) & (~(a ^ b) + 1u);
    return (a & d) == 0;
}

inline std::vector<int> mask_items(Mask m) {
    std::vector<int> out;
    for (int j = 0; m; ++j, m >>= 1)
        if (m & 1u) out.push_back(j);
    return out;
}

}  // namespace revmono
