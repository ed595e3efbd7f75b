#pragma once

#include <deque>
#include <optional>
#include <vector>

#include "revmono/errors.hpp"
#include "revmono/prob.hpp"
#include "revmono/valuation.hpp"

namespace revmono {

namespace detail {

// Exact max-flow (shortest augmenting paths). Small graphs only.
class RatFlow {
  public:
    explicit RatFlow(int nodes) : head_(nodes, -1) {}

    void add_edge(int a, int b, const Rat& cap) {
        edges_.push_back({b, head_[a], cap});
        head_[a] = static_cast<int>(edges_.size()) - 1;
        edges_.push_back({a, head_[b], Rat(0)});
        head_[b] = static_cast<int>(edges_.size()) - 1;
    }

    Rat max_flow(int s, int t) {
        Rat total = 0;
        for (;;) {
            std::vector<int> pre(head_.size(), -1);
            std::deque<int> q{s};
            pre[s] = -2;
            while (!q.empty() && pre[t] == -1) {
                int u = q.front();
                q.pop_front();
                for (int e = head_[u]; e >= 0; e = edges_[e].next) {
                    int w = edges_[e].to;
                    if (pre[w] == -1 && edges_[e].cap > 0) {
                        pre[w] = e;
                        q.push_back(w);
                    }
                }
            }
            if (pre[t] == -1) return total;
            Rat aug = edges_[pre[t]].cap;
            for (int u = t; u != s;) {
                int e = pre[u];
                if (edges_[e].cap < aug) aug = edges_[e].cap;
                u = edges_[e ^ 1].to;
            }
            for (int u = t; u != s;) {
                int e = pre[u];
                edges_[e].cap -= aug;
                edges_[e ^ 1].cap += aug;
                u = edges_[e ^ 1].to;
            }
            total += aug;
        }
    }

    // Flow pushed along a forward edge (by insertion index among add_edge calls).
    Rat flow_on(int edge_index, const Rat& original_cap) const {
        return original_cap - edges_[2 * edge_index].cap;
    }

  private:
    struct E {
        int to, next;
        Rat cap;
    };
    std::vector<E> edges_;
    std::vector<int> head_;
};

}  // namespace detail

// Decides whether a coupling (t, t') with t ~ G_row, t' ~ F_row exists such
// that the buyer's value under t is at least that under t' on every item set.
// Complete for discrete supports: transportation feasibility over admissible
// pairs. Returns the witness coupling when one exists.
inline std::optional<TypeCoupling> v_dominates(const Valuation& v, int i,
                                               const std::vector<DiscreteDist>& F_row,
                                               const std::vector<DiscreteDist>& G_row,
                                               const Caps& caps = Caps{}) {
    int m = v.m();
    if (m > static_cast<int>(caps.subset_ground))
        throw CapExceeded("v_dominates: ground set too large for subset scan");
    std::uint64_t tf = profile_count(F_row), tg = profile_count(G_row);
    if (tf == 0 || tg == 0 || tf > caps.joint_support / (tg ? tg : 1))
        throw CapExceeded("v_dominates: joint support product exceeds cap");

    std::vector<ProfileAtom> fa = enumerate_profiles(F_row, caps);
    std::vector<ProfileAtom> ga = enumerate_profiles(G_row, caps);
    Mask full = full_mask(m);

    // Cache values per profile per mask.
    auto value_table = [&](const std::vector<ProfileAtom>& atoms) {
        std::vector<std::vector<Rat>> vt(atoms.size());
        for (std::size_t a = 0; a < atoms.size(); ++a) {
            vt[a].resize(static_cast<std::size_t>(full) + 1);
            for (Mask S = 0; S <= full; ++S) vt[a][S] = value(v, i, atoms[a].values, S);
        }
        return vt;
    };
    std::vector<std::vector<Rat>> vf = value_table(fa), vg = value_table(ga);

    int A = static_cast<int>(ga.size()), B = static_cast<int>(fa.size());
    detail::RatFlow flow(A + B + 2);
    int src = A + B, snk = A + B + 1;
    struct EdgeRef {
        int g, f, index;
    };
    std::vector<EdgeRef> pair_edges;
    int edge_count = 0;
    for (int a = 0; a < A; ++a) {
        flow.add_edge(src, a, ga[a].prob);
        ++edge_count;
    }
    for (int b = 0; b < B; ++b) {
        flow.add_edge(A + b, snk, fa[b].prob);
        ++edge_count;
    }
    for (int a = 0; a < A; ++a)
        for (int b = 0; b < B; ++b) {
            bool admissible = true;
            for (Mask S = 1; S <= full && admissible; ++S)
                if (vg[a][S] < vf[b][S]) admissible = false;
            if (admissible) {
                flow.add_edge(a, A + b, Rat(1));
                pair_edges.push_back({a, b, edge_count++});
            }
        }

    if (flow.max_flow(src, snk) != 1) return std::nullopt;

    TypeCoupling witness;
    for (auto& e : pair_edges) {
        Rat f = flow.flow_on(e.index, Rat(1));
        if (f > 0) witness.pairs.emplace_back(ga[e.g].values, fa[e.f].values, f);
    }
    return witness;
}

// Coordinatewise first-order dominance of two marginal rows.
inline bool dominates_row(const std::vector<DiscreteDist>& F_row,
                          const std::vector<DiscreteDist>& G_row) {
    if (F_row.size() != G_row.size()) throw DomainError("dominates_row: width mismatch");
    for (std::size_t j = 0; j < F_row.size(); ++j)
        if (!dominates(F_row[j], G_row[j])) return false;
    return true;
}

}  // namespace revmono
