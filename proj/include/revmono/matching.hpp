#pragma once

#include <vector>

#include "revmono/bits.hpp"
#include "revmono/errors.hpp"
#include "revmono/rational.hpp"

namespace revmono {

// Maximum-weight partial matching of buyers (rows) to items (columns).
// Buyers may stay unmatched, so the optimum is always >= 0 even with
// negative weights. Exact DP over item masks.
inline Rat max_weight_matching(const std::vector<std::vector<Rat>>& w,
                               const Caps& caps = Caps{}) {
    int n = static_cast<int>(w.size());
    int m = n ? static_cast<int>(w[0].size()) : 0;
    if (m > static_cast<int>(caps.subset_ground))
        throw CapExceeded("max_weight_matching: item mask space too large");
    std::size_t states = std::size_t(1) << m;
    std::vector<Rat> best(states, Rat(0)), next(states);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(w[i].size()) != m) throw DomainError("max_weight_matching: ragged");
        next = best;  // buyer i unmatched
        for (std::size_t mask = 0; mask < states; ++mask) {
            for (int j = 0; j < m; ++j) {
                if (mask_has(static_cast<Mask>(mask), j)) continue;
                Rat cand = best[mask] + w[i][j];
                std::size_t to = mask | (std::size_t(1) << j);
                if (cand > next[to]) next[to] = cand;
            }
        }
        best.swap(next);
    }
    Rat out = 0;
    for (auto& x : best)
        if (x > out) out = x;
    return out;
}

}  // namespace revmono
