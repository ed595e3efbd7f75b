#pragma once

#include <map>
#include <utility>
#include <vector>

#include "revmono/bits.hpp"
#include "revmono/errors.hpp"
#include "revmono/prob.hpp"
#include "revmono/rational.hpp"
#include "revmono/valuation.hpp"

namespace revmono {

struct RSPMConfig {
    int n = 0, m = 0;
    std::vector<std::vector<Rat>> xi;  // posted prices, >= 0
    std::vector<std::vector<Rat>> p;   // payments, 0 <= p <= xi elementwise

    RSPMConfig() = default;
    RSPMConfig(int n_, int m_, std::vector<std::vector<Rat>> xi_,
               std::vector<std::vector<Rat>> p_)
        : n(n_), m(m_), xi(std::move(xi_)), p(std::move(p_)) {
        if (static_cast<int>(xi.size()) != n || static_cast<int>(p.size()) != n)
            throw DomainError("RSPMConfig: row count");
        for (int i = 0; i < n; ++i) {
            if (static_cast<int>(xi[i].size()) != m || static_cast<int>(p[i].size()) != m)
                throw DomainError("RSPMConfig: column count");
            for (int j = 0; j < m; ++j) {
                if (xi[i][j] < 0 || p[i][j] < 0) throw DomainError("RSPMConfig: negative price");
                if (p[i][j] > xi[i][j]) throw DomainError("RSPMConfig: payment above posted price");
            }
        }
    }

    // Payment equal to the posted price (the default instantiation).
    static RSPMConfig at_posted(int n_, int m_, std::vector<std::vector<Rat>> xi_) {
        auto p_ = xi_;
        return RSPMConfig(n_, m_, std::move(xi_), std::move(p_));
    }
};

struct MechanismOutcome {
    std::vector<Mask> bundles;    // pairwise disjoint
    std::vector<Rat> entry_paid;  // per buyer
    std::vector<Rat> item_paid;   // per buyer
    Mask sold = 0;                // union of bundles

    Rat revenue() const {
        Rat r = 0;
        for (auto& x : entry_paid) r += x;
        for (auto& x : item_paid) r += x;
        return r;
    }

    Rat entry_total() const {
        Rat r = 0;
        for (auto& x : entry_paid) r += x;
        return r;
    }

    Rat item_total() const {
        Rat r = 0;
        for (auto& x : item_paid) r += x;
        return r;
    }
};

// Sequential posted prices, one item per buyer. Buyer i takes the remaining
// item maximizing value({j}) - xi_ij when that maximum is >= 0 (ties go to
// the smallest j, and a zero-utility best option is taken), paying p_ij.
inline MechanismOutcome run_rspm(const RSPMConfig& cfg, const Valuation& v,
                                 const std::vector<std::vector<Rat>>& t) {
    if (static_cast<int>(t.size()) != cfg.n) throw DomainError("run_rspm: profile rows");
    MechanismOutcome out;
    out.bundles.assign(cfg.n, 0);
    out.entry_paid.assign(cfg.n, Rat(0));
    out.item_paid.assign(cfg.n, Rat(0));
    Mask available = full_mask(cfg.m);
    for (int i = 0; i < cfg.n; ++i) {
        int pick = -1;
        Rat best_u = 0;
        for (int j = 0; j < cfg.m; ++j) {
            if (!mask_has(available, j)) continue;
            Rat u = value(v, i, t[i], Mask(1) << j) - cfg.xi[i][j];
            if (u > best_u || (u == best_u && pick < 0 && u >= 0)) {
                best_u = u;
                pick = j;
            }
        }
        if (pick >= 0) {
            out.bundles[i] = Mask(1) << pick;
            out.item_paid[i] = cfg.p[i][pick];
            out.sold |= out.bundles[i];
            available &= ~out.bundles[i];
        }
    }
    return out;
}

// Flattened row-major view of an n x m product distribution.
inline std::vector<DiscreteDist> flatten_rows(const ProductDist& F) {
    std::vector<DiscreteDist> flat;
    flat.reserve(static_cast<std::size_t>(F.n()) * F.m());
    for (int i = 0; i < F.n(); ++i)
        for (int j = 0; j < F.m(); ++j) flat.push_back(F.at(i, j));
    return flat;
}

inline std::vector<std::vector<Rat>> unflatten_profile(const std::vector<Rat>& flat, int n,
                                                       int m) {
    std::vector<std::vector<Rat>> t(n, std::vector<Rat>(m));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) t[i][j] = flat[static_cast<std::size_t>(i) * m + j];
    return t;
}

inline Rat rspm_revenue(const RSPMConfig& cfg, const Valuation& v, const ProductDist& F,
                        const Caps& caps = Caps{}) {
    std::vector<DiscreteDist> flat = flatten_rows(F);
    if (profile_count(flat) > caps.joint_support)
        throw CapExceeded("rspm_revenue: joint support exceeds cap");
    Rat total = 0;
    for (ProfileEnum e(flat); !e.done(); e.next())
        total += e.prob() * run_rspm(cfg, v, unflatten_profile(e.values(), F.n(), F.m())).revenue();
    return total;
}

// Utility-maximizing bundle at item prices Q over available set S; exhaustive
// over subsets, ties resolved to the first bundle in characteristic order.
// The empty bundle is always a candidate, so the utility is >= 0.
inline std::pair<Mask, Rat> demand_set(const Valuation& v, int i, const std::vector<Rat>& t_i,
                                       Mask S, const std::vector<Rat>& Q,
                                       const Caps& caps = Caps{}) {
    if (mask_count(S) > static_cast<int>(caps.subset_ground))
        throw CapExceeded("demand_set: available set too large");
    Mask best_bundle = 0;
    Rat best_u = 0;
    for (Mask I = S;; I = (I - 1) & S) {
        Rat u = value(v, i, t_i, I);
        for (int j = 0; j < static_cast<int>(Q.size()); ++j)
            if (mask_has(I, j)) u -= Q[j];
        if (u > best_u || (u == best_u && bundle_less(I, best_bundle))) {
            best_u = u;
            best_bundle = I;
        }
        if (I == 0) break;
    }
    return {best_bundle, best_u};
}

struct ASPEConfig {
    int n = 0, m = 0;
    std::vector<Rat> Q;                     // item prices, >= 0
    std::vector<std::map<Mask, Rat>> delta; // per buyer, per available set
    Rat q = Rat(1, 2);                      // quantile used when fees are auto-built

    ASPEConfig() = default;
    ASPEConfig(int n_, int m_, std::vector<Rat> Q_, std::vector<std::map<Mask, Rat>> delta_,
               Rat q_ = Rat(1, 2))
        : n(n_), m(m_), Q(std::move(Q_)), delta(std::move(delta_)), q(std::move(q_)) {
        if (static_cast<int>(Q.size()) != m) throw DomainError("ASPEConfig: price vector width");
        for (auto& Qj : Q)
            if (Qj < 0) throw DomainError("ASPEConfig: negative item price");
        if (static_cast<int>(delta.size()) != n) throw DomainError("ASPEConfig: fee map count");
        for (auto& mp : delta)
            for (auto& [S, d] : mp)
                if (d < 0) throw DomainError("ASPEConfig: negative entry fee");
    }

    const Rat& delta_of(int i, Mask S) const {
        auto it = delta[i].find(S);
        if (it == delta[i].end()) throw DomainError("ASPEConfig: fee not defined for set");
        return it->second;
    }
};

// Entry fees from the utility distribution: delta_i(S) is the largest support
// point d of u_i(t_i, S), t_i ~ F_i, with Pr{u >= d} >= 1 - q. Built for
// every S up front (2^m sets).
inline std::vector<std::map<Mask, Rat>> make_entry_fees(const Valuation& v, const ProductDist& F,
                                                        const std::vector<Rat>& Q, const Rat& q,
                                                        const Caps& caps = Caps{}) {
    if (q < 0 || q >= 1) throw DomainError("make_entry_fees: quantile must lie in [0, 1)");
    if (F.m() > static_cast<int>(caps.subset_ground))
        throw CapExceeded("make_entry_fees: 2^m fee tables too large");
    std::vector<std::map<Mask, Rat>> fees(F.n());
    Mask full = full_mask(F.m());
    for (int i = 0; i < F.n(); ++i) {
        std::vector<ProfileAtom> types = enumerate_profiles(F.row(i), caps);
        for (Mask S = 0; S <= full; ++S) {
            std::map<Rat, Rat> udist;  // utility -> mass
            for (auto& a : types) udist[demand_set(v, i, a.values, S, Q, caps).second] += a.prob;
            Rat tail = 0;  // Pr{u >= d}, scanning d downward
            Rat fee = 0;
            const Rat need = Rat(1) - q;
            for (auto it = udist.rbegin(); it != udist.rend(); ++it) {
                tail += it->second;
                if (tail >= need) {
                    fee = it->first;
                    break;
                }
            }
            fees[i][S] = fee;
        }
    }
    return fees;
}

// Sequential posted prices with entry fees. Buyer i sees the remaining set S,
// enters iff the demand utility covers delta_i(S), then takes the demand
// bundle and pays the fee plus item prices.
inline MechanismOutcome run_aspe(const ASPEConfig& cfg, const Valuation& v,
                                 const std::vector<std::vector<Rat>>& t,
                                 const Caps& caps = Caps{}) {
    if (static_cast<int>(t.size()) != cfg.n) throw DomainError("run_aspe: profile rows");
    MechanismOutcome out;
    out.bundles.assign(cfg.n, 0);
    out.entry_paid.assign(cfg.n, Rat(0));
    out.item_paid.assign(cfg.n, Rat(0));
    Mask available = full_mask(cfg.m);
    for (int i = 0; i < cfg.n; ++i) {
        auto [bundle, u] = demand_set(v, i, t[i], available, cfg.Q, caps);
        const Rat& fee = cfg.delta_of(i, available);
        if (u >= fee) {
            out.bundles[i] = bundle;
            out.entry_paid[i] = fee;
            for (int j = 0; j < cfg.m; ++j)
                if (mask_has(bundle, j)) out.item_paid[i] += cfg.Q[j];
            out.sold |= bundle;
            available &= ~bundle;
        }
    }
    return out;
}

struct AspeRevenue {
    Rat entry;  // expected entry fees
    Rat item;   // expected item prices
    Rat total;  // entry + item

    std::vector<Rat> pr_sold;  // Pr{ j in SOLD } per item
};

inline AspeRevenue aspe_revenue(const ASPEConfig& cfg, const Valuation& v, const ProductDist& H,
                                const Caps& caps = Caps{}) {
    std::vector<DiscreteDist> flat = flatten_rows(H);
    if (profile_count(flat) > caps.joint_support)
        throw CapExceeded("aspe_revenue: joint support exceeds cap");
    AspeRevenue r;
    r.entry = 0;
    r.item = 0;
    r.pr_sold.assign(cfg.m, Rat(0));
    for (ProfileEnum e(flat); !e.done(); e.next()) {
        MechanismOutcome out = run_aspe(cfg, v, unflatten_profile(e.values(), H.n(), H.m()), caps);
        Rat pr = e.prob();
        r.entry += pr * out.entry_total();
        r.item += pr * out.item_total();
        for (int j = 0; j < cfg.m; ++j)
            if (mask_has(out.sold, j)) r.pr_sold[j] += pr;
    }
    r.total = r.entry + r.item;
    return r;
}

// Distribution of the set each buyer finds available when reached, under
// type profiles drawn from H.
inline std::vector<SetDist> availability_dists(const ASPEConfig& cfg, const Valuation& v,
                                               const ProductDist& H, const Caps& caps = Caps{}) {
    std::vector<DiscreteDist> flat = flatten_rows(H);
    if (profile_count(flat) > caps.joint_support)
        throw CapExceeded("availability_dists: joint support exceeds cap");
    std::vector<std::map<Mask, Rat>> acc(cfg.n);
    for (ProfileEnum e(flat); !e.done(); e.next()) {
        std::vector<std::vector<Rat>> t = unflatten_profile(e.values(), H.n(), H.m());
        Rat pr = e.prob();
        Mask available = full_mask(cfg.m);
        for (int i = 0; i < cfg.n; ++i) {
            acc[i][available] += pr;
            auto [bundle, u] = demand_set(v, i, t[i], available, cfg.Q, caps);
            if (u >= cfg.delta_of(i, available)) available &= ~bundle;
        }
    }
    std::vector<SetDist> out;
    out.reserve(cfg.n);
    for (int i = 0; i < cfg.n; ++i)
        out.emplace_back(std::vector<std::pair<Mask, Rat>>(acc[i].begin(), acc[i].end()));
    return out;
}

// Digital-goods entry-fee revenue: each buyer i faces a random available set
// I ~ I_i, enters iff the demand utility at prices Q covers delta_i(I), and
// pays only the fee.
inline Rat dg_entry_fee(const Valuation& v, const ProductDist& H,
                        const std::vector<SetDist>& avail, const std::vector<Rat>& Q,
                        const std::vector<std::map<Mask, Rat>>& delta,
                        const Caps& caps = Caps{}) {
    if (static_cast<int>(avail.size()) != H.n() || static_cast<int>(delta.size()) != H.n())
        throw DomainError("dg_entry_fee: per-buyer inputs must match n");
    Rat total = 0;
    for (int i = 0; i < H.n(); ++i) {
        std::vector<ProfileAtom> types = enumerate_profiles(H.row(i), caps);
        for (auto& a : types) {
            for (auto& [S, pS] : avail[i].atoms()) {
                auto it = delta[i].find(S);
                if (it == delta[i].end()) throw DomainError("dg_entry_fee: fee missing for set");
                Rat u = demand_set(v, i, a.values, S, Q, caps).second;
                if (u >= it->second) total += a.prob * pS * it->second;
            }
        }
    }
    return total;
}

// Smallest probability, over buyers, that item j is in the buyer's available
// set.
inline Rat b_floor(const std::vector<SetDist>& avail, int j) {
    if (avail.empty()) throw DomainError("b_floor: no buyers");
    Rat best = avail[0].pr_contains(j);
    for (std::size_t i = 1; i < avail.size(); ++i) {
        Rat x = avail[i].pr_contains(j);
        if (x < best) best = x;
    }
    return best;
}

}  // namespace revmono
