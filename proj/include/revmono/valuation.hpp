#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "revmono/bits.hpp"
#include "revmono/errors.hpp"
#include "revmono/rational.hpp"
#include "revmono/simplex.hpp"

namespace revmono {

// Clause-based valuation: v_i(t_i, S) = max_k sum_{j in S} alpha[i][k][j] * t_ij.
// Additive = one all-ones clause; unit-demand = unit-vector clauses.
struct XOSValuation {
    int n = 0, m = 0;
    std::vector<std::vector<std::vector<Rat>>> clauses;  // [buyer][clause][item]

    XOSValuation() = default;
    XOSValuation(int n_, int m_, std::vector<std::vector<std::vector<Rat>>> cl)
        : n(n_), m(m_), clauses(std::move(cl)) {
        if (static_cast<int>(clauses.size()) != n) throw DomainError("XOSValuation: buyer count");
        for (auto& buyer : clauses) {
            if (buyer.empty()) throw DomainError("XOSValuation: buyer needs >= 1 clause");
            for (auto& cl_row : buyer) {
                if (static_cast<int>(cl_row.size()) != m)
                    throw DomainError("XOSValuation: clause width");
                for (auto& a : cl_row)
                    if (a < 0) throw DomainError("XOSValuation: negative multiplier");
            }
        }
    }

    static XOSValuation additive(int n_, int m_) {
        std::vector<std::vector<std::vector<Rat>>> cl(
            n_, {std::vector<Rat>(static_cast<std::size_t>(m_), Rat(1))});
        return XOSValuation(n_, m_, std::move(cl));
    }

    static XOSValuation unit_demand(int n_, int m_) {
        std::vector<std::vector<std::vector<Rat>>> cl(n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < m_; ++j) {
                std::vector<Rat> e(static_cast<std::size_t>(m_), Rat(0));
                e[j] = 1;
                cl[i].push_back(std::move(e));
            }
        return XOSValuation(n_, m_, std::move(cl));
    }
};

// Explicit per-type bundle-value table; secondary representation for
// counterexample work. rows[i] = list of (type vector, value per mask).
struct TableValuation {
    int n = 0, m = 0;
    std::vector<std::vector<std::pair<std::vector<Rat>, std::vector<Rat>>>> rows;

    TableValuation() = default;
    TableValuation(int n_, int m_,
                   std::vector<std::vector<std::pair<std::vector<Rat>, std::vector<Rat>>>> r)
        : n(n_), m(m_), rows(std::move(r)) {
        if (static_cast<int>(rows.size()) != n) throw DomainError("TableValuation: buyer count");
        std::size_t masks = std::size_t(1) << m;
        for (auto& row : rows) {
            if (row.empty()) throw DomainError("TableValuation: empty type list");
            for (auto& [t, vals] : row) {
                if (static_cast<int>(t.size()) != m) throw DomainError("TableValuation: type width");
                if (vals.size() != masks) throw DomainError("TableValuation: value table size");
                if (vals[0] != 0) throw DomainError("TableValuation: v(empty set) must be 0");
                for (auto& x : vals)
                    if (x < 0) throw DomainError("TableValuation: negative value");
            }
        }
    }
};

struct Valuation {
    std::variant<XOSValuation, TableValuation> impl;

    Valuation(XOSValuation v) : impl(std::move(v)) {}
    Valuation(TableValuation v) : impl(std::move(v)) {}

    bool is_xos() const { return std::holds_alternative<XOSValuation>(impl); }
    const XOSValuation& xos() const { return std::get<XOSValuation>(impl); }
    const TableValuation& table() const { return std::get<TableValuation>(impl); }
    int n() const { return is_xos() ? xos().n : table().n; }
    int m() const { return is_xos() ? xos().m : table().m; }
};

inline Rat clause_sum(const std::vector<Rat>& clause, const std::vector<Rat>& t, Mask S) {
    Rat s = 0;
    for (int j = 0; j < static_cast<int>(t.size()); ++j)
        if (mask_has(S, j)) s += clause[j] * t[j];
    return s;
}

inline Rat value(const Valuation& v, int i, const std::vector<Rat>& t_i, Mask S) {
    if (static_cast<int>(t_i.size()) != v.m()) throw DomainError("value: type width mismatch");
    if (v.is_xos()) {
        const auto& buyer = v.xos().clauses[i];
        Rat best = clause_sum(buyer[0], t_i, S);
        for (std::size_t k = 1; k < buyer.size(); ++k) {
            Rat s = clause_sum(buyer[k], t_i, S);
            if (s > best) best = s;
        }
        return best;
    }
    for (auto& [t, vals] : v.table().rows[i])
        if (t == t_i) return vals[S];
    throw DomainError("value: type not present in table valuation");
}

// Per-item prices from the maximizing clause (smallest index on ties).
// Entries outside S are zero. Sum over S equals the value exactly, and any
// S' subset of S has value at least the summed prices.
inline std::vector<Rat> supporting_prices(const Valuation& v, int i, const std::vector<Rat>& t_i,
                                          Mask S) {
    if (!v.is_xos()) throw NoSupportingPrices("supporting_prices: requires clause-form valuation");
    const auto& buyer = v.xos().clauses[i];
    std::size_t kstar = 0;
    Rat best = clause_sum(buyer[0], t_i, S);
    for (std::size_t k = 1; k < buyer.size(); ++k) {
        Rat s = clause_sum(buyer[k], t_i, S);
        if (s > best) {
            best = s;
            kstar = k;
        }
    }
    std::vector<Rat> p(t_i.size(), Rat(0));
    for (int j = 0; j < static_cast<int>(t_i.size()); ++j)
        if (mask_has(S, j)) p[j] = buyer[kstar][j] * t_i[j];
    return p;
}

struct StructureReport {
    bool monotone = true;
    bool subadditive = true;
    bool no_externalities = true;
    std::string first_violation;

    bool all() const { return monotone && subadditive && no_externalities; }
};

// Brute-force structure verification over an explicit per-buyer type space.
inline StructureReport check_structure(const Valuation& v,
                                       const std::vector<std::vector<std::vector<Rat>>>& types,
                                       const Caps& caps = Caps{}) {
    int m = v.m();
    if (m > static_cast<int>(caps.subset_ground))
        throw CapExceeded("check_structure: 2^m enumeration over " + std::to_string(m) + " items");
    StructureReport rep;
    Mask full = full_mask(m);
    for (int i = 0; i < v.n(); ++i) {
        for (const auto& t : types[i]) {
            for (Mask U = 0; U <= full; ++U) {
                Rat vu = value(v, i, t, U);
                for (Mask V = 0; V <= full; ++V) {
                    if (rep.monotone && (U & V) == U && vu > value(v, i, t, V)) {
                        rep.monotone = false;
                        if (rep.first_violation.empty()) rep.first_violation = "monotone";
                    }
                    if (rep.subadditive && value(v, i, t, U | V) > vu + value(v, i, t, V)) {
                        rep.subadditive = false;
                        if (rep.first_violation.empty()) rep.first_violation = "subadditive";
                    }
                }
            }
            for (const auto& t2 : types[i]) {
                for (Mask S = 0; S <= full; ++S) {
                    bool agree = true;
                    for (int j = 0; j < m && agree; ++j)
                        if (mask_has(S, j) && t[j] != t2[j]) agree = false;
                    if (agree && value(v, i, t, S) != value(v, i, t2, S)) {
                        rep.no_externalities = false;
                        if (rep.first_violation.empty()) rep.first_violation = "no_externalities";
                    }
                }
            }
        }
    }
    return rep;
}

// Smallest multiplier alpha such that every (buyer, type, S) admits prices
// p_j >= 0 with (1) every subset of S worth at least its summed prices and
// (2) the prices over S recovering value/alpha. Clause-form valuations give
// 1 directly; tables are searched per set with an exact LP.
inline Rat alpha_of(const Valuation& v, const Caps& caps = Caps{}) {
    if (v.is_xos()) return Rat(1);
    const TableValuation& tv = v.table();
    if (tv.m > static_cast<int>(caps.subset_ground))
        throw CapExceeded("alpha_of: ground set too large");
    std::vector<std::vector<std::vector<Rat>>> types(tv.n);
    for (int i = 0; i < tv.n; ++i)
        for (auto& [t, vals] : tv.rows[i]) types[i].push_back(t);
    StructureReport rep = check_structure(v, types, caps);
    if (!rep.subadditive)
        throw NoSupportingPrices("alpha_of: table valuation is not subadditive");

    Rat alpha = 1;
    Mask full = full_mask(tv.m);
    for (int i = 0; i < tv.n; ++i) {
        for (auto& [t, vals] : tv.rows[i]) {
            for (Mask S = 1; S <= full; ++S) {
                Rat vs = value(v, i, t, S);
                if (vs == 0) continue;
                LpProblem lp;
                std::vector<int> var_of(tv.m, -1);
                for (int j = 0; j < tv.m; ++j)
                    if (mask_has(S, j)) var_of[j] = lp.add_var(Rat(1));
                for (Mask Sp = 1; Sp <= full; ++Sp) {
                    if ((Sp & S) != Sp) continue;
                    std::vector<std::pair<int, Rat>> terms;
                    for (int j = 0; j < tv.m; ++j)
                        if (mask_has(Sp, j)) terms.emplace_back(var_of[j], Rat(1));
                    lp.add_row(std::move(terms), Rel::LE, value(v, i, t, Sp));
                }
                LpResult res = solve_lp(lp);
                if (res.status != LpStatus::Optimal || res.value == 0)
                    throw NoSupportingPrices("alpha_of: no supporting prices for a set");
                Rat a = vs / res.value;
                if (a > alpha) alpha = a;
            }
        }
    }
    return alpha;
}

}  // namespace revmono
