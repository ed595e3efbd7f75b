#include <catch2/catch_amalgamated.hpp>

#include "revmono/myerson.hpp"
#include "revmono/rng.hpp"

using namespace revmono;

namespace {

DiscreteDist dist(std::initializer_list<std::pair<int, Rat>> atoms) {
    std::vector<Rat> vals, probs;
    for (auto& [v, p] : atoms) {
        vals.push_back(Rat(v));
        probs.push_back(p);
    }
    return DiscreteDist(vals, probs);
}

DiscreteDist random_dist(Rng& rng) {
    size_t k = 1 + rng.next_below(4);
    std::vector<Rat> vals, probs;
    int64_t v = rng.next_below(3);
    std::vector<uint64_t> cuts{0, 8};
    for (size_t i = 0; i + 1 < k; ++i) cuts.push_back(1 + rng.next_below(7));
    std::sort(cuts.begin(), cuts.end());
    for (size_t i = 0; i < k; ++i) {
        vals.push_back(Rat(v));
        v += 1 + rng.next_below(4);
        probs.push_back(rat(int64_t(cuts[i + 1] - cuts[i]), 8));
    }
    std::vector<Rat> v2, p2;
    for (size_t i = 0; i < k; ++i)
        if (probs[i] != 0) {
            v2.push_back(vals[i]);
            p2.push_back(probs[i]);
        }
    return DiscreteDist(v2, p2);
}

// Best expected revenue from any single posted price (candidates = support).
Rat best_posted(const DiscreteDist& d) {
    Rat best = 0;
    for (size_t k = 0; k < d.size(); ++k)
        best = rat_max(best, d.value(k) * d.pr_geq(d.value(k)));
    return best;
}

// Expected surplus of an allocation rule given as accept-indicators per atom.
Rat rule_virtual_surplus(const DiscreteDist& d, const IronedVirtuals& iv, uint32_t accept) {
    Rat s = 0;
    for (size_t k = 0; k < d.size(); ++k)
        if (accept & (1u << k)) s += d.prob(k) * iv.ironed[k];
    return s;
}

}  // namespace

TEST_CASE("point mass keeps its value") {
    auto iv = ironed_virtuals(DiscreteDist::point_mass(Rat(7)));
    REQUIRE(iv.raw == std::vector<Rat>{Rat(7)});
    REQUIRE(iv.ironed == std::vector<Rat>{Rat(7)});
}

TEST_CASE("two-point uniform example") {
    auto iv = ironed_virtuals(dist({{1, rat(1, 2)}, {2, rat(1, 2)}}));
    REQUIRE(iv.raw == std::vector<Rat>{Rat(0), Rat(2)});
    REQUIRE(iv.ironed == std::vector<Rat>{Rat(0), Rat(2)});
}

TEST_CASE("three-point example needs ironing") {
    auto iv = ironed_virtuals(dist({{0, rat(1, 4)}, {1, rat(1, 2)}, {10, rat(1, 4)}}));
    REQUIRE(iv.raw == std::vector<Rat>{Rat(-3), rat(-7, 2), Rat(10)});
    REQUIRE(iv.ironed == std::vector<Rat>{rat(-10, 3), rat(-10, 3), Rat(10)});
}

TEST_CASE("ironed values are nondecreasing in the type") {
    Rng rng(2024);
    for (int trial = 0; trial < 300; ++trial) {
        DiscreteDist d = random_dist(rng);
        auto iv = ironed_virtuals(d);
        for (size_t k = 0; k + 1 < d.size(); ++k) REQUIRE(iv.ironed[k] <= iv.ironed[k + 1]);
        // Averaging identity: total ironed mass equals total raw mass.
        Rat raw_sum = 0, ironed_sum = 0;
        for (size_t k = 0; k < d.size(); ++k) {
            raw_sum += d.prob(k) * iv.raw[k];
            ironed_sum += d.prob(k) * iv.ironed[k];
        }
        REQUIRE(raw_sum == ironed_sum);
        REQUIRE(raw_sum == d.value(0));
    }
}

TEST_CASE("positive part of ironed mass equals the best posted price") {
    Rng rng(99);
    for (int trial = 0; trial < 300; ++trial) {
        DiscreteDist d = random_dist(rng);
        auto iv = ironed_virtuals(d);
        Rat pos = 0;
        for (size_t k = 0; k < d.size(); ++k)
            if (iv.ironed[k] > 0) pos += d.prob(k) * iv.ironed[k];
        REQUIRE(pos == best_posted(d));
    }
}

TEST_CASE("monopoly price picks the smallest maximizer") {
    auto [p, r] = monopoly_price(dist({{1, rat(1, 2)}, {2, rat(1, 2)}}));
    REQUIRE(p == 1);
    REQUIRE(r == 1);
    auto [p2, r2] = monopoly_price(dist({{1, rat(1, 4)}, {2, rat(3, 4)}}));
    REQUIRE(p2 == 2);
    REQUIRE(r2 == rat(3, 2));
}

TEST_CASE("no monotone acceptance rule beats the greedy one") {
    Rng rng(4711);
    for (int trial = 0; trial < 200; ++trial) {
        DiscreteDist d = random_dist(rng);
        if (d.size() > 3) continue;
        auto iv = ironed_virtuals(d);
        uint32_t greedy = 0;
        for (size_t k = 0; k < d.size(); ++k)
            if (iv.ironed[k] > 0) greedy |= 1u << k;
        Rat best_monotone = rule_virtual_surplus(d, iv, greedy);
        for (uint32_t accept = 0; accept < (1u << d.size()); ++accept) {
            bool monotone = true;
            for (size_t k = 0; k + 1 < d.size(); ++k)
                if ((accept & (1u << k)) && !(accept & (1u << (k + 1)))) monotone = false;
            if (!monotone) continue;
            REQUIRE(rule_virtual_surplus(d, iv, accept) <= best_monotone);
        }
    }
}
