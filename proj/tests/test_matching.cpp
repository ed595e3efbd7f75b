#include <catch2/catch_amalgamated.hpp>

#include "revmono/matching.hpp"
#include "revmono/rng.hpp"

using namespace revmono;

namespace {

// Reference: try every assignment of items to buyers (or nobody).
Rat brute_force(const std::vector<std::vector<Rat>>& w) {
    size_t n = w.size(), m = w.empty() ? 0 : w[0].size();
    std::vector<size_t> owner(m, 0);
    Rat best = 0;
    while (true) {
        std::vector<Mask> bundle(n, 0);
        for (size_t j = 0; j < m; ++j)
            if (owner[j] < n) bundle[owner[j]] |= Mask(1) << j;
        Rat total = 0;
        bool ok = true;
        for (size_t i = 0; i < n && ok; ++i) {
            if (mask_count(bundle[i]) > 1) ok = false;
            for (size_t j = 0; j < m; ++j)
                if (mask_has(bundle[i], j)) total += w[i][j];
        }
        if (ok) best = rat_max(best, total);
        size_t k = 0;
        while (k < m && owner[k] == n) {
            owner[k] = 0;
            ++k;
        }
        if (k == m) break;
        ++owner[k];
    }
    return best;
}

}  // namespace

TEST_CASE("hand-sized matchings") {
    REQUIRE(max_weight_matching({{Rat(3)}}) == 3);
    REQUIRE(max_weight_matching({{Rat(-2)}}) == 0);
    // Two buyers, two items: diagonal beats both taking item 1.
    REQUIRE(max_weight_matching({{Rat(5), Rat(4)}, {Rat(5), Rat(0)}}) == 9);
    // One buyer cannot take both items.
    REQUIRE(max_weight_matching({{Rat(5), Rat(4)}}) == 5);
}

TEST_CASE("matching agrees with brute force on random weights") {
    Rng rng(407);
    for (int trial = 0; trial < 150; ++trial) {
        size_t n = 1 + rng.next_below(3), m = 1 + rng.next_below(3);
        std::vector<std::vector<Rat>> w(n, std::vector<Rat>(m));
        for (auto& row : w)
            for (auto& x : row) x = rat(int64_t(rng.next_below(13)) - 2, 1 + rng.next_below(3));
        REQUIRE(max_weight_matching(w) == brute_force(w));
    }
}

TEST_CASE("matching respects the ground-set cap") {
    Caps caps;
    caps.subset_ground = 2;
    std::vector<std::vector<Rat>> w(1, std::vector<Rat>(3, Rat(1)));
    REQUIRE_THROWS_AS(max_weight_matching(w, caps), CapExceeded);
}
