#pragma once

#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "revmono/errors.hpp"
#include "revmono/matching.hpp"
#include "revmono/mechanisms.hpp"
#include "revmono/myerson.hpp"
#include "revmono/prob.hpp"
#include "revmono/rational.hpp"
#include "revmono/simplex.hpp"
#include "revmono/valuation.hpp"

namespace revmono {

// Single-parameter outcome set: either an explicit vertex list over the
// agents, or the partial-matching polytope vertices over a rows x cols grid
// (one agent per cell).
class Environment {
  public:
    static Environment explicit_set(std::vector<std::vector<Rat>> vertices) {
        if (vertices.empty()) throw DomainError("Environment: empty vertex list");
        std::size_t n = vertices[0].size();
        bool has_zero = false;
        for (auto& a : vertices) {
            if (a.size() != n) throw DomainError("Environment: ragged vertex list");
            bool zero = true;
            for (auto& x : a) {
                if (x < 0 || x > 1) throw DomainError("Environment: coordinate outside [0,1]");
                if (x != 0) zero = false;
            }
            has_zero |= zero;
        }
        if (!has_zero) throw DomainError("Environment: all-zeros vector is required");
        Environment e;
        e.vertices_ = std::move(vertices);
        e.agents_ = static_cast<int>(n);
        return e;
    }

    static Environment matching(int rows, int cols) {
        if (rows <= 0 || cols <= 0) throw DomainError("Environment: bad matching shape");
        Environment e;
        e.rows_ = rows;
        e.cols_ = cols;
        e.agents_ = rows * cols;
        return e;
    }

    bool is_matching() const { return vertices_.empty(); }
    int agents() const { return agents_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const std::vector<std::vector<Rat>>& vertices() const { return vertices_; }

  private:
    std::vector<std::vector<Rat>> vertices_;
    int agents_ = 0, rows_ = 0, cols_ = 0;
};

// Optimal single-parameter revenue: expectation over the joint type profile
// of the best ironed-virtual surplus available in A. Matching-form A reduces
// the inner maximum to a max-weight partial matching.
inline Rat opt_single_param(const Environment& env, const std::vector<DiscreteDist>& dists,
                            const Caps& caps = Caps{}) {
    if (static_cast<int>(dists.size()) != env.agents())
        throw DomainError("opt_single_param: agent count mismatch");
    if (profile_count(dists) > caps.joint_support)
        throw CapExceeded("opt_single_param: joint support exceeds cap");
    std::vector<IronedVirtuals> iv;
    iv.reserve(dists.size());
    for (auto& d : dists) iv.push_back(ironed_virtuals(d));

    Rat total = 0;
    std::vector<Rat> phi(dists.size());
    std::vector<std::vector<Rat>> w;
    if (env.is_matching())
        w.assign(env.rows(), std::vector<Rat>(env.cols()));
    for (ProfileEnum e(dists); !e.done(); e.next()) {
        const auto& idx = e.indices();
        for (std::size_t a = 0; a < dists.size(); ++a) phi[a] = iv[a].ironed[idx[a]];
        Rat best;
        if (env.is_matching()) {
            for (int i = 0; i < env.rows(); ++i)
                for (int j = 0; j < env.cols(); ++j)
                    w[i][j] = phi[static_cast<std::size_t>(i) * env.cols() + j];
            best = max_weight_matching(w, caps);
        } else {
            bool first = true;
            for (auto& a : env.vertices()) {
                Rat s = 0;
                for (std::size_t k = 0; k < phi.size(); ++k)
                    if (a[k] != 0) s += phi[k] * a[k];
                if (first || s > best) {
                    best = s;
                    first = false;
                }
            }
        }
        total += e.prob() * best;
    }
    return total;
}

// Copies surrogate for unit-demand instances: one agent per (buyer, item)
// cell with value distribution F_ij, feasible sets = partial matchings.
inline Rat opt_copies_ud(const ProductDist& F, const Caps& caps = Caps{}) {
    return opt_single_param(Environment::matching(F.n(), F.m()), flatten_rows(F), caps);
}

namespace detail {

// Candidate item-price vectors for the one-buyer unit-demand optimum. At an
// optimal vertex every finite price is pinned either to a support value or,
// through a chain of argmax ties, to another item's pinned price plus a
// support-value difference; items may also be withheld. Enumerates all such
// anchored forests.
struct PriceCandidateEnum {
    const std::vector<DiscreteDist>* dists;
    int m;
    // option per item: anchor value index a (price = V_j[a]), withheld, or
    // chain (l, vidx, widx): price = p_l + V_j[vidx] - V_l[widx].
    struct Option {
        int kind;  // 0 anchor, 1 withheld, 2 chain
        int a = 0, l = 0, vi = 0, wi = 0;
    };
    std::vector<std::vector<Option>> options;

    explicit PriceCandidateEnum(const std::vector<DiscreteDist>& ds)
        : dists(&ds), m(static_cast<int>(ds.size())) {
        options.resize(m);
        for (int j = 0; j < m; ++j) {
            for (int a = 0; a < static_cast<int>(ds[j].size()); ++a)
                options[j].push_back({0, a, 0, 0, 0});
            options[j].push_back({1});
            for (int l = 0; l < m; ++l) {
                if (l == j) continue;
                for (int vi = 0; vi < static_cast<int>(ds[j].size()); ++vi)
                    for (int wi = 0; wi < static_cast<int>(ds[l].size()); ++wi)
                        options[j].push_back({2, 0, l, vi, wi});
            }
        }
    }

    // Resolve a choice vector into prices; false when cyclic, negative, or a
    // chain hangs off a withheld item.
    bool resolve(const std::vector<int>& choice, std::vector<Rat>& price,
                 std::vector<bool>& withheld) const {
        price.assign(m, Rat(0));
        withheld.assign(m, false);
        std::vector<int> state(m, 0);  // 0 unresolved, 1 in progress, 2 done
        for (int j = 0; j < m; ++j) {
            if (state[j] == 2) continue;
            // Follow the parent chain iteratively.
            std::vector<int> stack;
            int cur = j;
            while (true) {
                if (state[cur] == 2) break;
                if (state[cur] == 1) return false;  // cycle
                state[cur] = 1;
                stack.push_back(cur);
                const Option& o = options[cur][choice[cur]];
                if (o.kind != 2) break;
                cur = o.l;
            }
            for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
                const Option& o = options[*it][choice[*it]];
                if (o.kind == 0) {
                    price[*it] = (*dists)[*it].value(o.a);
                } else if (o.kind == 1) {
                    withheld[*it] = true;
                } else {
                    if (withheld[o.l]) return false;
                    price[*it] =
                        price[o.l] + (*dists)[*it].value(o.vi) - (*dists)[o.l].value(o.wi);
                    if (price[*it] < 0) return false;
                }
                state[*it] = 2;
            }
        }
        return true;
    }
};

// Expected revenue of item prices for one unit-demand buyer with
// seller-favorable tie-breaking: among utility-maximizing options (including
// walking away at utility 0) the highest-priced item is taken.
inline Rat ud_pricing_revenue(const std::vector<ProfileAtom>& atoms,
                              const std::vector<Rat>& price,
                              const std::vector<bool>& withheld) {
    Rat total = 0;
    for (const auto& atom : atoms) {
        const auto& t = atom.values;
        Rat best_u = 0;
        int pick = -1;
        for (std::size_t j = 0; j < t.size(); ++j) {
            if (withheld[j]) continue;
            Rat u = t[j] - price[j];
            if (u > best_u || (u == best_u && u >= 0 && (pick < 0 || price[j] > price[pick]))) {
                best_u = u;
                pick = static_cast<int>(j);
            }
        }
        if (pick >= 0) total += atom.prob * price[pick];
    }
    return total;
}

}  // namespace detail

struct DrevBracket {
    Rat lo;
    Rat hi;
    bool exact = false;  // lo == hi == the optimum (one-buyer regime)
};

// Optimal deterministic truthful revenue for unit-demand buyers with
// V_ij = t_ij. One buyer: exact by exhausting anchored price-vector
// candidates (a deterministic truthful one-buyer mechanism is item pricing).
// Multiple buyers: bracket [best sequential posted prices over a small grid,
// copies upper bound].
inline DrevBracket drev_ud(const ProductDist& F, const Caps& caps = Caps{}) {
    if (F.n() == 1) {
        const std::vector<DiscreteDist>& row = F.row(0);
        std::vector<ProfileAtom> atoms = enumerate_profiles(row, caps);
        detail::PriceCandidateEnum cand(row);
        std::vector<int> choice(cand.m, 0);
        std::vector<Rat> price;
        std::vector<bool> withheld;
        Rat best = 0;
        for (;;) {
            if (cand.resolve(choice, price, withheld)) {
                Rat rev = detail::ud_pricing_revenue(atoms, price, withheld);
                if (rev > best) best = rev;
            }
            int k = cand.m;
            while (k > 0) {
                --k;
                if (++choice[k] < static_cast<int>(cand.options[k].size())) break;
                choice[k] = 0;
                if (k == 0) return {best, best, true};
            }
        }
    }

    // Multi-buyer bracket.
    Rat hi = opt_copies_ud(F, caps);
    Valuation v = XOSValuation::unit_demand(F.n(), F.m());
    Rat lo = 0;
    std::vector<Rat> scales = {Rat(1), Rat(1, 2), Rat(3, 4)};
    for (auto& s : scales) {
        std::vector<std::vector<Rat>> xi(F.n(), std::vector<Rat>(F.m()));
        for (int i = 0; i < F.n(); ++i)
            for (int j = 0; j < F.m(); ++j) xi[i][j] = s * monopoly_price(F.at(i, j)).first;
        Rat rev = rspm_revenue(RSPMConfig::at_posted(F.n(), F.m(), xi), v, F, caps);
        if (rev > lo) lo = rev;
    }
    return {lo, hi, false};
}

enum class SolutionConcept { BicBir, DicIr };

// All deterministic assignments of disjoint bundles: outcome[o][i] = bundle
// of buyer i; every item goes to one buyer or stays unsold.
inline std::vector<std::vector<Mask>> enumerate_outcomes(int n, int m) {
    std::vector<std::vector<Mask>> outcomes;
    std::vector<int> owner(m, 0);  // 0 = unsold, 1..n = buyer
    for (;;) {
        std::vector<Mask> bundles(n, 0);
        for (int j = 0; j < m; ++j)
            if (owner[j] > 0) bundles[owner[j] - 1] |= Mask(1) << j;
        outcomes.push_back(std::move(bundles));
        int k = m;
        while (k > 0) {
            --k;
            if (++owner[k] <= n) break;
            owner[k] = 0;
            if (k == 0) return outcomes;
        }
    }
}

// Exact optimal truthful revenue by linear programming over randomized
// allocations with free payments. BIC-BIR: interim truthfulness and interim
// rationality; DIC-IR: their ex-post versions. Violated truthfulness rows
// are generated lazily.
inline Rat rev_bic_lp(const Valuation& v, const ProductDist& F, SolutionConcept mode,
                      PivotOrder order = PivotOrder::MinIndex, const Caps& caps = Caps{}) {
    int n = F.n(), m = F.m();
    std::vector<std::vector<ProfileAtom>> types(n);  // per-buyer type list
    for (int i = 0; i < n; ++i) types[i] = enumerate_profiles(F.row(i), caps);

    std::uint64_t joint = 1;
    for (int i = 0; i < n; ++i) {
        if (joint > caps.joint_support / types[i].size())
            throw CapExceeded("rev_bic_lp: joint support exceeds cap");
        joint *= types[i].size();
    }
    std::vector<std::vector<Mask>> outcomes = enumerate_outcomes(n, m);
    std::uint64_t cells = joint * outcomes.size();
    if (cells > caps.lp_cells)
        throw CapExceeded("rev_bic_lp: profiles x outcomes = " + std::to_string(cells) +
                          " exceeds LP cap " + std::to_string(caps.lp_cells));

    int J = static_cast<int>(joint), O = static_cast<int>(outcomes.size());

    // Joint profile index <-> per-buyer type indices (buyer 0 fastest).
    std::vector<int> stride(n);
    {
        int s = 1;
        for (int i = 0; i < n; ++i) {
            stride[i] = s;
            s *= static_cast<int>(types[i].size());
        }
    }
    auto type_of = [&](int t, int i) { return (t / stride[i]) % static_cast<int>(types[i].size()); };
    std::vector<Rat> joint_pr(J, Rat(1));
    for (int t = 0; t < J; ++t)
        for (int i = 0; i < n; ++i) joint_pr[t] *= types[i][type_of(t, i)].prob;

    // Value tables: val[i][type][outcome].
    std::vector<std::vector<std::vector<Rat>>> val(n);
    for (int i = 0; i < n; ++i) {
        val[i].resize(types[i].size());
        for (std::size_t s = 0; s < types[i].size(); ++s) {
            val[i][s].resize(O);
            for (int o = 0; o < O; ++o)
                val[i][s][o] = value(v, i, types[i][s].values, outcomes[o][i]);
        }
    }

    LpProblem lp;
    // pi(t, o) >= 0, then payments p(i, t) free.
    auto pi_var = [&](int t, int o) { return t * O + o; };
    auto pay_var = [&](int i, int t) { return J * O + i * J + t; };
    for (int t = 0; t < J; ++t)
        for (int o = 0; o < O; ++o) lp.add_var(Rat(0));
    for (int i = 0; i < n; ++i)
        for (int t = 0; t < J; ++t) lp.add_var(joint_pr[t], true);

    for (int t = 0; t < J; ++t) {
        std::vector<std::pair<int, Rat>> terms;
        for (int o = 0; o < O; ++o) terms.emplace_back(pi_var(t, o), Rat(1));
        lp.add_row(std::move(terms), Rel::EQ, Rat(1));
    }

    // Conditional probability of t given buyer i's type: product of others'.
    auto others_pr = [&](int t, int i) { return joint_pr[t] / types[i][type_of(t, i)].prob; };

    // Deviation utility rows. For BIC the row aggregates over others' types;
    // for DIC there is one row per full profile.
    struct IcKey {
        int i, s, r, t_minus;  // t_minus used by DIC only (full profile with own=s)
    };
    auto build_ic_row = [&](const IcKey& key, std::vector<std::pair<int, Rat>>& terms) {
        terms.clear();
        int i = key.i;
        if (mode == SolutionConcept::BicBir) {
            for (int t = 0; t < J; ++t) {
                if (type_of(t, i) != key.s) continue;
                Rat w = others_pr(t, i);
                int t_rep = t + (key.r - key.s) * stride[i];
                for (int o = 0; o < O; ++o) {
                    if (val[i][key.s][o] != 0) terms.emplace_back(pi_var(t, o), w * val[i][key.s][o]);
                    if (val[i][key.s][o] != 0)
                        terms.emplace_back(pi_var(t_rep, o), -w * val[i][key.s][o]);
                }
                terms.emplace_back(pay_var(i, t), -w);
                terms.emplace_back(pay_var(i, t_rep), w);
            }
        } else {
            int t = key.t_minus;
            int t_rep = t + (key.r - key.s) * stride[i];
            for (int o = 0; o < O; ++o) {
                if (val[i][key.s][o] != 0) {
                    terms.emplace_back(pi_var(t, o), val[i][key.s][o]);
                    terms.emplace_back(pi_var(t_rep, o), -val[i][key.s][o]);
                }
            }
            terms.emplace_back(pay_var(i, t), Rat(-1));
            terms.emplace_back(pay_var(i, t_rep), Rat(1));
        }
    };

    // Rationality rows are always present.
    for (int i = 0; i < n; ++i) {
        if (mode == SolutionConcept::BicBir) {
            for (int s = 0; s < static_cast<int>(types[i].size()); ++s) {
                std::vector<std::pair<int, Rat>> terms;
                for (int t = 0; t < J; ++t) {
                    if (type_of(t, i) != s) continue;
                    Rat w = others_pr(t, i);
                    for (int o = 0; o < O; ++o)
                        if (val[i][s][o] != 0) terms.emplace_back(pi_var(t, o), w * val[i][s][o]);
                    terms.emplace_back(pay_var(i, t), -w);
                }
                lp.add_row(std::move(terms), Rel::GE, Rat(0));
            }
        } else {
            for (int t = 0; t < J; ++t) {
                int s = type_of(t, i);
                std::vector<std::pair<int, Rat>> terms;
                for (int o = 0; o < O; ++o)
                    if (val[i][s][o] != 0) terms.emplace_back(pi_var(t, o), val[i][s][o]);
                terms.emplace_back(pay_var(i, t), Rat(-1));
                lp.add_row(std::move(terms), Rel::GE, Rat(0));
            }
        }
    }

    // Pool of truthfulness rows, generated lazily.
    std::vector<IcKey> pool;
    for (int i = 0; i < n; ++i) {
        int Ti = static_cast<int>(types[i].size());
        for (int s = 0; s < Ti; ++s)
            for (int r = 0; r < Ti; ++r) {
                if (r == s) continue;
                if (mode == SolutionConcept::BicBir) {
                    pool.push_back({i, s, r, -1});
                } else {
                    for (int t = 0; t < J; ++t)
                        if (type_of(t, i) == s) pool.push_back({i, s, r, t});
                }
            }
    }

    std::vector<bool> active(pool.size(), false);
    std::vector<std::pair<int, Rat>> terms;
    for (int round = 0;; ++round) {
        LpResult res = solve_lp(lp, order);
        if (res.status == LpStatus::InfeasibleLp) throw Infeasible("rev_bic_lp: LP infeasible");
        if (res.status == LpStatus::Unbounded)
            throw Infeasible("rev_bic_lp: LP unbounded (missing rationality rows)");
        int added = 0;
        for (std::size_t k = 0; k < pool.size(); ++k) {
            if (active[k]) continue;
            build_ic_row(pool[k], terms);
            Rat lhs = 0;
            for (auto& [var, coeff] : terms) lhs += coeff * res.x[var];
            if (lhs < 0) {
                lp.add_row(terms, Rel::GE, Rat(0));
                active[k] = true;
                ++added;
            }
        }
        if (added == 0) return res.value;
    }
}

struct ThmConstants {
    Rat lambda;
    Rat C;
};

// lambda(b, alpha) = 32a + 6(12 + 8/(1-b) + a(16/(b(1-b)) + 96/(1-b)));
// C(b) = 5/(2(1-b)) + (b+1)/(2b(1-b)).
inline ThmConstants constants(const Rat& b, const Rat& alpha) {
    if (b <= 0 || b >= 1) throw DomainError("constants: b must lie in (0,1)");
    if (alpha < 1) throw DomainError("constants: alpha must be >= 1");
    Rat omb = Rat(1) - b;
    Rat lambda =
        32 * alpha + 6 * (Rat(12) + Rat(8) / omb + alpha * (Rat(16) / (b * omb) + Rat(96) / omb));
    Rat C = Rat(5) / (2 * omb) + (b + 1) / (2 * b * omb);
    return {lambda, C};
}

}  // namespace revmono
