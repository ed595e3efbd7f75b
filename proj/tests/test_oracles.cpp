#include <catch2/catch_amalgamated.hpp>

#include "revmono/oracles.hpp"
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

DiscreteDist u12() { return dist({{1, rat(1, 2)}, {2, rat(1, 2)}}); }

DiscreteDist random_cell(Rng& rng, int64_t span = 5) {
    if (rng.next_below(3) == 0)
        return DiscreteDist::point_mass(Rat(int64_t(rng.next_below(uint64_t(span)))));
    int64_t lo = rng.next_below(uint64_t(span) - 1);
    int64_t hi = lo + 1 + int64_t(rng.next_below(uint64_t(span - lo - 1) + 1));
    int64_t cut = 1 + int64_t(rng.next_below(3));
    return DiscreteDist({Rat(lo), Rat(hi)}, {rat(cut, 4), rat(4 - cut, 4)});
}

DiscreteDist raise_cell(const DiscreteDist& d, Rng& rng) {
    std::vector<Rat> vals, probs;
    Rat bump = Rat(int64_t(rng.next_below(3)));
    for (size_t k = 0; k < d.size(); ++k) {
        vals.push_back(d.value(k) + (k + 1 == d.size() ? bump : Rat(0)));
        probs.push_back(d.prob(k));
    }
    return DiscreteDist(vals, probs);
}

// Expected revenue of one unit-demand buyer facing fixed item prices; the
// buyer takes a nonnegative-utility maximizer and ties favor the seller.
Rat lattice_revenue(const std::vector<ProfileAtom>& atoms, const std::vector<Rat>& price) {
    Rat total = 0;
    for (auto& a : atoms) {
        Rat best_u = 0, pay = 0;
        for (size_t j = 0; j < price.size(); ++j) {
            Rat u = a.values[j] - price[j];
            if (u > best_u || (u == best_u && price[j] > pay)) {
                if (u >= 0) {
                    best_u = u;
                    pay = price[j];
                }
            }
        }
        total += a.prob * pay;
    }
    return total;
}

}  // namespace

TEST_CASE("single-agent two-action surplus equals the posted-price optimum") {
    Environment env = Environment::explicit_set({{Rat(0)}, {Rat(1)}});
    REQUIRE(opt_single_param(env, {u12()}) == 1);
    REQUIRE(opt_single_param(env, {dist({{1, rat(1, 4)}, {2, rat(3, 4)}})}) == rat(3, 2));
}

TEST_CASE("an environment with only the zero action earns nothing") {
    Environment env = Environment::explicit_set({{Rat(0), Rat(0)}});
    REQUIRE(opt_single_param(env, {u12(), u12()}) == 0);
}

TEST_CASE("matching environments agree with their explicit vertex lists") {
    // 1 buyer, 2 items: partial matchings are 00, 10, 01.
    Environment fast = Environment::matching(1, 2);
    Environment slow =
        Environment::explicit_set({{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(0), Rat(1)}});
    Rng rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<DiscreteDist> ds{random_cell(rng), random_cell(rng)};
        REQUIRE(opt_single_param(fast, ds) == opt_single_param(slow, ds));
    }
    // 2 buyers, 1 item: at most one of them wins.
    Environment fast2 = Environment::matching(2, 1);
    Environment slow2 =
        Environment::explicit_set({{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(0), Rat(1)}});
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<DiscreteDist> ds{random_cell(rng), random_cell(rng)};
        REQUIRE(opt_single_param(fast2, ds) == opt_single_param(slow2, ds));
    }
}

TEST_CASE("single-parameter revenue never drops when one marginal rises") {
    Rng rng(77);
    Environment env = Environment::explicit_set(
        {{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(0), Rat(1)}, {Rat(1), rat(1, 2)}});
    for (int trial = 0; trial < 120; ++trial) {
        std::vector<DiscreteDist> f{random_cell(rng), random_cell(rng)};
        std::vector<DiscreteDist> g = f;
        size_t which = rng.next_below(2);
        g[which] = raise_cell(f[which], rng);
        REQUIRE(dominates(f[which], g[which]));
        REQUIRE(opt_single_param(env, g) >= opt_single_param(env, f));
    }
}

TEST_CASE("copies benchmark on the two-item uniform instance") {
    ProductDist F(1, 2, {{u12(), u12()}});
    REQUIRE(opt_copies_ud(F) == rat(3, 2));
}

TEST_CASE("one-buyer deterministic pricing brackets are exact") {
    ProductDist F1(1, 1, {{u12()}});
    auto d1 = drev_ud(F1);
    REQUIRE(d1.exact);
    REQUIRE(d1.lo == 1);
    REQUIRE(d1.lo == d1.hi);

    ProductDist F2(1, 2, {{u12(), u12()}});
    auto d2 = drev_ud(F2);
    REQUIRE(d2.exact);
    REQUIRE(d2.lo == rat(3, 2));

    ProductDist P(1, 2, {{DiscreteDist::point_mass(Rat(3)), DiscreteDist::point_mass(Rat(5))}});
    REQUIRE(drev_ud(P).lo == 5);
}

TEST_CASE("one-buyer pricing optimum matches an integer price lattice") {
    Rng rng(4242);
    Caps caps;
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<DiscreteDist> row{random_cell(rng, 6), random_cell(rng, 6)};
        ProductDist F(1, 2, {row});
        auto bracket = drev_ud(F, caps);
        REQUIRE(bracket.exact);
        auto atoms = enumerate_profiles(row, caps);
        Rat best = 0;
        for (int p0 = 0; p0 <= 13; ++p0)
            for (int p1 = 0; p1 <= 13; ++p1)
                best = rat_max(best, lattice_revenue(atoms, {Rat(p0), Rat(p1)}));
        REQUIRE(bracket.lo == best);
    }
}

TEST_CASE("multi-buyer pricing brackets stay ordered and sandwich the copies value") {
    Rng rng(555);
    for (int trial = 0; trial < 12; ++trial) {
        int n = 2, m = 1 + int(rng.next_below(2));
        std::vector<std::vector<DiscreteDist>> rows(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < m; ++j) rows[i].push_back(random_cell(rng, 4));
        ProductDist F(n, m, rows);
        auto bracket = drev_ud(F);
        Rat copies = opt_copies_ud(F);
        REQUIRE(bracket.lo <= bracket.hi);
        REQUIRE(bracket.lo <= copies);
        REQUIRE(copies <= 6 * bracket.hi);
    }
}

TEST_CASE("optimal-mechanism values on frozen instances") {
    Caps caps;
    ProductDist F2(1, 2, {{u12(), u12()}});
    ProductDist F1(1, 1, {{u12()}});
    REQUIRE(rev_bic_lp(XOSValuation::additive(1, 2), F2, SolutionConcept::BicBir,
                       PivotOrder::MinIndex, caps) == rat(9, 4));
    REQUIRE(rev_bic_lp(XOSValuation::unit_demand(1, 2), F2, SolutionConcept::BicBir,
                       PivotOrder::MinIndex, caps) == rat(3, 2));
    REQUIRE(rev_bic_lp(XOSValuation::additive(1, 1), F1, SolutionConcept::BicBir,
                       PivotOrder::MinIndex, caps) == 1);
}

TEST_CASE("a known type is fully extracted") {
    ProductDist P(1, 2, {{DiscreteDist::point_mass(Rat(3)), DiscreteDist::point_mass(Rat(5))}});
    Caps caps;
    REQUIRE(rev_bic_lp(XOSValuation::additive(1, 2), P, SolutionConcept::BicBir,
                       PivotOrder::MinIndex, caps) == 8);
}

TEST_CASE("randomized menus beat deterministic ones on the three-value instance") {
    DiscreteDist d({Rat(1), Rat(2), Rat(4)}, {rat(1, 6), rat(1, 2), rat(1, 3)});
    ProductDist F(1, 2, {{d, d}});
    Caps caps;
    Rat lp = rev_bic_lp(XOSValuation::additive(1, 2), F, SolutionConcept::BicBir,
                        PivotOrder::MinIndex, caps);
    REQUIRE(lp == rat(61, 18));
    // Best deterministic menu (prices for item 1, item 2, and the pair,
    // optimized over a lattice that provably contains the optimum).
    REQUIRE(lp > rat(10, 3));
}

TEST_CASE("dominant-strategy revenue never exceeds the Bayesian optimum") {
    Rng rng(888);
    for (int trial = 0; trial < 8; ++trial) {
        int n = 2, m = 1;
        std::vector<std::vector<DiscreteDist>> rows(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < m; ++j) rows[i].push_back(random_cell(rng, 4));
        ProductDist F(n, m, rows);
        Valuation v = XOSValuation::additive(n, m);
        Caps caps;
        Rat dic = rev_bic_lp(v, F, SolutionConcept::DicIr, PivotOrder::MinIndex, caps);
        Rat bic = rev_bic_lp(v, F, SolutionConcept::BicBir, PivotOrder::MinIndex, caps);
        REQUIRE(dic <= bic);
        REQUIRE(dic >= 0);
    }
}

TEST_CASE("both pivot orders report the same optimum") {
    Rng rng(1212);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<std::vector<DiscreteDist>> rows{{random_cell(rng, 4), random_cell(rng, 4)}};
        ProductDist F(1, 2, rows);
        Valuation v = XOSValuation::unit_demand(1, 2);
        Caps caps;
        REQUIRE(rev_bic_lp(v, F, SolutionConcept::BicBir, PivotOrder::MinIndex, caps) ==
                rev_bic_lp(v, F, SolutionConcept::BicBir, PivotOrder::MaxIndex, caps));
    }
}

TEST_CASE("unit-demand optimum is capped by four times the copies value") {
    Rng rng(99);
    for (int trial = 0; trial < 10; ++trial) {
        int n = 1 + int(rng.next_below(2)), m = 2 - int(n == 2);
        std::vector<std::vector<DiscreteDist>> rows(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < m; ++j) rows[i].push_back(random_cell(rng, 4));
        ProductDist F(n, m, rows);
        Caps caps;
        Rat rev = rev_bic_lp(XOSValuation::unit_demand(n, m), F, SolutionConcept::BicBir,
                             PivotOrder::MinIndex, caps);
        REQUIRE(rev <= 4 * opt_copies_ud(F));
    }
}

TEST_CASE("cell caps abort oversized mechanism programs") {
    Caps caps;
    caps.lp_cells = 10;
    ProductDist F(1, 2, {{u12(), u12()}});
    REQUIRE_THROWS_AS(rev_bic_lp(XOSValuation::additive(1, 2), F, SolutionConcept::BicBir,
                                 PivotOrder::MinIndex, caps),
                      CapExceeded);
}

TEST_CASE("outcome enumeration covers every assignment once") {
    auto outs = enumerate_outcomes(2, 2);
    REQUIRE(outs.size() == 9);  // (n+1)^m
    for (auto& o : outs) {
        REQUIRE(o.size() == 2);
        REQUIRE((o[0] & o[1]) == 0);
    }
    bool has_empty = false;
    for (auto& o : outs) has_empty |= (o[0] == 0 && o[1] == 0);
    REQUIRE(has_empty);
}

TEST_CASE("bound constants at the reference point") {
    ThmConstants c = constants(rat(1, 4), Rat(1));
    REQUIRE(c.lambda == 1448);
    REQUIRE(c.C == rat(20, 3));
    REQUIRE_THROWS_AS(constants(Rat(0), Rat(1)), DomainError);
    REQUIRE_THROWS_AS(constants(Rat(1), Rat(1)), DomainError);
    REQUIRE_THROWS_AS(constants(rat(1, 4), rat(1, 2)), DomainError);
}
