#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "revmono/bits.hpp"
#include "revmono/errors.hpp"
#include "revmono/rational.hpp"

namespace revmono {

// Finite-support distribution over non-negative rational values.
// Invariants: support strictly ascending, all probs > 0, probs sum to 1.
class DiscreteDist {
  public:
    DiscreteDist(std::vector<Rat> support, std::vector<Rat> probs) {
        if (support.size() != probs.size() || support.empty())
            throw DomainError("DiscreteDist: support/probs length mismatch or empty");
        std::map<Rat, Rat> merged;
        for (std::size_t k = 0; k < support.size(); ++k) {
            if (support[k] < 0) throw DomainError("DiscreteDist: negative value");
            if (probs[k] < 0) throw DomainError("DiscreteDist: negative prob");
            if (probs[k] == 0) continue;
            merged[support[k]] += probs[k];
        }
        Rat total = 0;
        for (auto& [v, p] : merged) {
            support_.push_back(v);
            probs_.push_back(p);
            total += p;
        }
        if (support_.empty()) throw DomainError("DiscreteDist: all atoms have zero mass");
        if (total != 1) throw DomainError("DiscreteDist: probs sum to " + rat_to_string(total));
    }

    static DiscreteDist point_mass(const Rat& v) { return DiscreteDist({v}, {Rat(1)}); }

    std::size_t size() const { return support_.size(); }
    const std::vector<Rat>& support() const { return support_; }
    const std::vector<Rat>& probs() const { return probs_; }
    const Rat& value(std::size_t k) const { return support_[k]; }
    const Rat& prob(std::size_t k) const { return probs_[k]; }
    const Rat& min_value() const { return support_.front(); }
    const Rat& max_value() const { return support_.back(); }

    Rat expectation() const {
        Rat e = 0;
        for (std::size_t k = 0; k < size(); ++k) e += support_[k] * probs_[k];
        return e;
    }

    // Pr{V > t}
    Rat survival(const Rat& t) const {
        Rat s = 0;
        for (std::size_t k = 0; k < size(); ++k)
            if (support_[k] > t) s += probs_[k];
        return s;
    }

    // Pr{V >= t}
    Rat pr_geq(const Rat& t) const {
        Rat s = 0;
        for (std::size_t k = 0; k < size(); ++k)
            if (support_[k] >= t) s += probs_[k];
        return s;
    }

    // Pr{V <= t}
    Rat cdf(const Rat& t) const { return Rat(1) - survival(t); }

    bool operator==(const DiscreteDist& o) const {
        return support_ == o.support_ && probs_ == o.probs_;
    }

  private:
    std::vector<Rat> support_;
    std::vector<Rat> probs_;
};

// n x m matrix of independent marginals; row i is buyer i's type distribution.
class ProductDist {
  public:
    ProductDist(int n, int m, std::vector<std::vector<DiscreteDist>> entries)
        : n_(n), m_(m), entries_(std::move(entries)) {
        if (n_ <= 0 || m_ <= 0) throw DomainError("ProductDist: empty dimensions");
        if (static_cast<int>(entries_.size()) != n_) throw DomainError("ProductDist: row count");
        for (auto& row : entries_)
            if (static_cast<int>(row.size()) != m_) throw DomainError("ProductDist: column count");
    }

    int n() const { return n_; }
    int m() const { return m_; }
    const DiscreteDist& at(int i, int j) const { return entries_[i][j]; }
    const std::vector<DiscreteDist>& row(int i) const { return entries_[i]; }

    std::uint64_t joint_support_size() const {
        std::uint64_t total = 1;
        for (auto& row : entries_)
            for (auto& d : row) {
                if (total > UINT64_MAX / d.size()) return UINT64_MAX;
                total *= d.size();
            }
        return total;
    }

    bool operator==(const ProductDist& o) const {
        return n_ == o.n_ && m_ == o.m_ && entries_ == o.entries_;
    }

  private:
    int n_, m_;
    std::vector<std::vector<DiscreteDist>> entries_;
};

inline std::uint64_t profile_count(const std::vector<DiscreteDist>& dists) {
    std::uint64_t total = 1;
    for (auto& d : dists) {
        if (total > UINT64_MAX / d.size()) return UINT64_MAX;
        total *= d.size();
    }
    return total;
}

// Odometer over the joint support of independent coordinates.
class ProfileEnum {
  public:
    explicit ProfileEnum(const std::vector<DiscreteDist>& dists) : dists_(&dists) {
        idx_.assign(dists.size(), 0);
        done_ = dists.empty();
        refresh();
    }

    bool done() const { return done_; }

    void next() {
        std::size_t k = idx_.size();
        while (k > 0) {
            --k;
            if (++idx_[k] < (*dists_)[k].size()) {
                refresh();
                return;
            }
            idx_[k] = 0;
        }
        done_ = true;
    }

    const std::vector<Rat>& values() const { return values_; }
    const std::vector<std::size_t>& indices() const { return idx_; }

    Rat prob() const {
        Rat p = 1;
        for (std::size_t k = 0; k < idx_.size(); ++k) p *= (*dists_)[k].prob(idx_[k]);
        return p;
    }

  private:
    void refresh() {
        if (done_) return;
        values_.resize(idx_.size());
        for (std::size_t k = 0; k < idx_.size(); ++k) values_[k] = (*dists_)[k].value(idx_[k]);
    }

    const std::vector<DiscreteDist>* dists_;
    std::vector<std::size_t> idx_;
    std::vector<Rat> values_;
    bool done_ = false;
};

// Materialized joint support; guarded by caps.joint_support.
struct ProfileAtom {
    std::vector<Rat> values;
    Rat prob;
};

inline std::vector<ProfileAtom> enumerate_profiles(const std::vector<DiscreteDist>& dists,
                                                   const Caps& caps = Caps{}) {
    std::uint64_t count = profile_count(dists);
    if (count > caps.joint_support)
        throw CapExceeded("enumerate_profiles: joint support " + std::to_string(count) +
                          " exceeds cap " + std::to_string(caps.joint_support));
    std::vector<ProfileAtom> out;
    out.reserve(static_cast<std::size_t>(count));
    for (ProfileEnum e(dists); !e.done(); e.next()) out.push_back({e.values(), e.prob()});
    return out;
}

// Scalar coupling: atoms ((t, t'), prob).
struct Coupling {
    std::vector<std::tuple<Rat, Rat, Rat>> pairs;  // (t, t', prob)

    Rat total_mass() const {
        Rat s = 0;
        for (auto& [a, b, p] : pairs) s += p;
        return s;
    }

    DiscreteDist left_marginal() const {
        std::vector<Rat> vals, ps;
        for (auto& [a, b, p] : pairs) {
            vals.push_back(a);
            ps.push_back(p);
        }
        return DiscreteDist(vals, ps);
    }

    DiscreteDist right_marginal() const {
        std::vector<Rat> vals, ps;
        for (auto& [a, b, p] : pairs) {
            vals.push_back(b);
            ps.push_back(p);
        }
        return DiscreteDist(vals, ps);
    }
};

// Coupling over type vectors; witness format for valuation-order dominance.
struct TypeCoupling {
    std::vector<std::tuple<std::vector<Rat>, std::vector<Rat>, Rat>> pairs;  // (t, t', prob)
};

// True iff G first-order dominates F: Pr{F > t} <= Pr{G > t} at every
// threshold. Exact, no tolerance.
inline bool dominates(const DiscreteDist& F, const DiscreteDist& G) {
    std::vector<Rat> thresholds;
    thresholds.reserve(F.size() + G.size());
    thresholds.insert(thresholds.end(), F.support().begin(), F.support().end());
    thresholds.insert(thresholds.end(), G.support().begin(), G.support().end());
    std::sort(thresholds.begin(), thresholds.end());
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());
    for (const Rat& t : thresholds)
        if (F.survival(t) > G.survival(t)) return false;
    return true;
}

// Inverse-CDF coupling of (F, G); requires dominates(F, G). Every atom
// satisfies t' >= t and the marginals are exact.
inline Coupling quantile_couple(const DiscreteDist& F, const DiscreteDist& G) {
    if (!dominates(F, G))
        throw DominanceViolation("quantile_couple: first argument is not dominated by second");
    Coupling c;
    std::size_t i = 0, j = 0;
    Rat fi = F.prob(0), gj = G.prob(0);
    while (i < F.size() && j < G.size()) {
        Rat take = rat_min(fi, gj);
        c.pairs.emplace_back(F.value(i), G.value(j), take);
        fi -= take;
        gj -= take;
        if (fi == 0 && ++i < F.size()) fi = F.prob(i);
        if (gj == 0 && ++j < G.size()) gj = G.prob(j);
    }
    for (auto& [t, tp, p] : c.pairs)
        if (tp < t) throw DominanceViolation("quantile_couple: non-monotone pair");
    return c;
}

// Distribution over item subsets (masks), exact probabilities.
class SetDist {
  public:
    explicit SetDist(std::vector<std::pair<Mask, Rat>> atoms) {
        std::map<Mask, Rat> merged;
        for (auto& [s, p] : atoms) {
            if (p < 0) throw DomainError("SetDist: negative prob");
            if (p == 0) continue;
            merged[s] += p;
        }
        Rat total = 0;
        for (auto& [s, p] : merged) {
            atoms_.emplace_back(s, p);
            total += p;
        }
        if (atoms_.empty() || total != 1) throw DomainError("SetDist: probs must sum to 1");
    }

    const std::vector<std::pair<Mask, Rat>>& atoms() const { return atoms_; }

    // Pr{ j in S }
    Rat pr_contains(int j) const {
        Rat s = 0;
        for (auto& [mask, p] : atoms_)
            if (mask_has(mask, j)) s += p;
        return s;
    }

    bool operator==(const SetDist& o) const { return atoms_ == o.atoms_; }

  private:
    std::vector<std::pair<Mask, Rat>> atoms_;
};

}  // namespace revmono
