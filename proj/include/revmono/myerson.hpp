#pragma once

#include <utility>
#include <vector>

#include "revmono/errors.hpp"
#include "revmono/prob.hpp"
#include "revmono/rational.hpp"

namespace revmono {

struct IronedVirtuals {
    std::vector<Rat> support;  // ascending, mirrors the source distribution
    std::vector<Rat> probs;
    std::vector<Rat> raw;     // slope of the revenue curve between neighbors
    std::vector<Rat> ironed;  // slope of its concave envelope; nondecreasing

    const Rat& at(const Rat& value) const {
        for (std::size_t k = 0; k < support.size(); ++k)
            if (support[k] == value) return ironed[k];
        throw DomainError("IronedVirtuals: value not in support");
    }
};

// Virtual values from the sale-probability revenue curve: points
// (s_j, v_j * s_j) with s_j = Pr{V >= v_j}, plus the origin. Raw virtuals are
// chord slopes; ironed virtuals are the concave-envelope slopes, constant on
// each ironed interval and nondecreasing in the value.
inline IronedVirtuals ironed_virtuals(const DiscreteDist& d) {
    std::size_t k = d.size();
    IronedVirtuals iv;
    iv.support = d.support();
    iv.probs = d.probs();
    iv.raw.resize(k);
    iv.ironed.resize(k);

    std::vector<Rat> s(k + 1);  // s[j] = Pr{V >= v_j}, s[k] = 0
    s[k] = 0;
    for (std::size_t j = k; j-- > 0;) s[j] = s[j + 1] + d.prob(j);

    for (std::size_t j = 0; j + 1 < k; ++j)
        iv.raw[j] = d.value(j) - (d.value(j + 1) - d.value(j)) * s[j + 1] / d.prob(j);
    iv.raw[k - 1] = d.value(k - 1);

    // Revenue-curve points in ascending x: (0, 0), then j = k-1 .. 0.
    std::vector<std::pair<Rat, Rat>> pts;
    pts.emplace_back(Rat(0), Rat(0));
    for (std::size_t j = k; j-- > 0;) pts.emplace_back(s[j], d.value(j) * s[j]);

    // Upper concave hull, monotone-chain.
    std::vector<std::size_t> hull;
    for (std::size_t p = 0; p < pts.size(); ++p) {
        while (hull.size() >= 2) {
            auto& a = pts[hull[hull.size() - 2]];
            auto& b = pts[hull[hull.size() - 1]];
            auto& c = pts[p];
            // Drop b when it is on or below chord a-c.
            Rat lhs = (b.second - a.second) * (c.first - a.first);
            Rat rhs = (c.second - a.second) * (b.first - a.first);
            if (lhs <= rhs)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(p);
    }

    // Segment slope covering x-interval [s_{j+1}, s_j] is the ironed virtual
    // of value j. Point index in pts for value j is k - j.
    for (std::size_t j = 0; j < k; ++j) {
        const Rat& xl = s[j + 1];
        const Rat& xr = s[j];
        for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
            auto& a = pts[hull[h]];
            auto& b = pts[hull[h + 1]];
            if (a.first <= xl && xr <= b.first) {
                iv.ironed[j] = (b.second - a.second) / (b.first - a.first);
                break;
            }
        }
    }
    return iv;
}

// Best deterministic posted price for one buyer, one item: maximizes
// price * Pr{V >= price} over the support; smallest maximizer on ties.
inline std::pair<Rat, Rat> monopoly_price(const DiscreteDist& d) {
    Rat best_price = d.value(0), best_rev = -1;
    for (std::size_t j = 0; j < d.size(); ++j) {
        Rat rev = d.value(j) * d.pr_geq(d.value(j));
        if (rev > best_rev) {
            best_rev = rev;
            best_price = d.value(j);
        }
    }
    return {best_price, best_rev};
}

}  // namespace revmono
