#include <catch2/catch_amalgamated.hpp>

#include "revmono/valuation.hpp"

using namespace revmono;

namespace {

// value tables indexed by mask over m=3: singles 1, pairs 1, triple 2.
TableValuation budget_table() {
    std::vector<Rat> vals(8);
    vals[0] = 0;
    for (Mask s = 1; s < 8; ++s) vals[s] = (mask_count(s) == 3) ? Rat(2) : Rat(1);
    return TableValuation(1, 3, {{{{Rat(1), Rat(1), Rat(1)}, vals}}});
}

}  // namespace

TEST_CASE("additive value is the plain sum") {
    Valuation v = XOSValuation::additive(1, 2);
    REQUIRE(value(v, 0, {Rat(3), Rat(5)}, 0b11) == 8);
    REQUIRE(value(v, 0, {Rat(3), Rat(5)}, 0b01) == 3);
    REQUIRE(value(v, 0, {Rat(3), Rat(5)}, 0) == 0);
}

TEST_CASE("unit-demand value is the best single item") {
    Valuation v = XOSValuation::unit_demand(1, 2);
    REQUIRE(value(v, 0, {Rat(3), Rat(5)}, 0b11) == 5);
    REQUIRE(value(v, 0, {Rat(3), Rat(5)}, 0b01) == 3);
}

TEST_CASE("clause max over a custom matrix") {
    // clauses (2,0) and (1,1): S={1,2} at t=(2,3) -> max(4, 5) = 5.
    XOSValuation x(1, 2, {{{Rat(2), Rat(0)}, {Rat(1), Rat(1)}}});
    Valuation v(x);
    REQUIRE(value(v, 0, {Rat(2), Rat(3)}, 0b11) == 5);
    REQUIRE(value(v, 0, {Rat(2), Rat(3)}, 0b01) == 4);
}

TEST_CASE("supporting prices: additive equality") {
    Valuation v = XOSValuation::additive(1, 2);
    auto p = supporting_prices(v, 0, {Rat(3), Rat(5)}, 0b11);
    REQUIRE(p[0] == 3);
    REQUIRE(p[1] == 5);
}

TEST_CASE("supporting prices: unit-demand frozen example") {
    Valuation v = XOSValuation::unit_demand(1, 2);
    auto p = supporting_prices(v, 0, {Rat(3), Rat(5)}, 0b11);
    REQUIRE(p[0] == 0);
    REQUIRE(p[1] == 5);
    // Condition (1) over all four subsets; condition (2) with equality.
    for (Mask sp = 0; sp < 4; ++sp) {
        Rat sum = 0;
        for (int j = 0; j < 2; ++j)
            if (mask_has(sp, j)) sum += p[j];
        REQUIRE(value(v, 0, {Rat(3), Rat(5)}, sp) >= sum);
    }
    REQUIRE(p[0] + p[1] == value(v, 0, {Rat(3), Rat(5)}, 0b11));
}

TEST_CASE("supporting price conditions hold on random XOS inputs") {
    for (int trial = 0; trial < 50; ++trial) {
        // deterministic pseudo-random clause matrix from the trial index
        int a = trial % 4, b = (trial / 4) % 4, c = (trial / 16) % 3;
        XOSValuation x(1, 3,
                       {{{Rat(a), Rat(b), Rat(1)},
                         {Rat(1), Rat(c), Rat(0)},
                         {Rat(0), Rat(2), Rat(b)}}});
        Valuation v(x);
        std::vector<Rat> t{Rat(trial % 5), Rat((trial + 2) % 6), Rat((trial + 4) % 7)};
        for (Mask S = 0; S < 8; ++S) {
            auto p = supporting_prices(v, 0, t, S);
            Rat total = 0;
            for (Mask sp = 0; sp <= S; ++sp) {
                if ((sp & S) != sp) continue;
                Rat sum = 0;
                for (int j = 0; j < 3; ++j)
                    if (mask_has(sp, j)) sum += p[j];
                REQUIRE(value(v, 0, t, sp) >= sum);
            }
            for (int j = 0; j < 3; ++j)
                if (mask_has(S, j)) total += p[j];
            REQUIRE(total == value(v, 0, t, S));
        }
    }
}

TEST_CASE("structure checks pass for XOS") {
    XOSValuation x(2, 2, {{{Rat(1), Rat(2)}, {Rat(3), Rat(0)}}, {{Rat(1), Rat(1)}}});
    Valuation v(x);
    std::vector<std::vector<std::vector<Rat>>> types{
        {{Rat(1), Rat(2)}, {Rat(0), Rat(5)}}, {{Rat(2), Rat(2)}, {Rat(4), Rat(1)}}};
    StructureReport rep = check_structure(v, types);
    REQUIRE(rep.monotone);
    REQUIRE(rep.subadditive);
    REQUIRE(rep.no_externalities);
}

TEST_CASE("structure checks flag a superadditive table") {
    std::vector<Rat> vals{Rat(0), Rat(1), Rat(1), Rat(5)};  // v({1,2}) > v({1})+v({2})
    TableValuation t(1, 2, {{{{Rat(1), Rat(1)}, vals}}});
    Valuation v(t);
    StructureReport rep = check_structure(v, {{{Rat(1), Rat(1)}}});
    REQUIRE_FALSE(rep.subadditive);
    REQUIRE(rep.first_violation == "subadditive");
}

TEST_CASE("structure checks flag externalities in a table") {
    // v({1}) differs across types that agree on coordinate 1.
    std::vector<Rat> v1{Rat(0), Rat(1), Rat(1), Rat(2)};
    std::vector<Rat> v2{Rat(0), Rat(2), Rat(1), Rat(2)};
    TableValuation t(1, 2,
                     {{{{Rat(1), Rat(1)}, v1}, {{Rat(1), Rat(9)}, v2}}});
    Valuation v(t);
    StructureReport rep = check_structure(v, {{{Rat(1), Rat(1)}, {Rat(1), Rat(9)}}});
    REQUIRE_FALSE(rep.no_externalities);
}

TEST_CASE("alpha is 1 for clause-form valuations") {
    REQUIRE(alpha_of(Valuation(XOSValuation::additive(2, 3))) == 1);
    REQUIRE(alpha_of(Valuation(XOSValuation::unit_demand(1, 2))) == 1);
}

TEST_CASE("alpha of the budget-style table is 4/3") {
    REQUIRE(alpha_of(Valuation(budget_table())) == rat(4, 3));
}

TEST_CASE("alpha search rejects non-subadditive tables") {
    std::vector<Rat> vals{Rat(0), Rat(1), Rat(1), Rat(5)};
    TableValuation t(1, 2, {{{{Rat(1), Rat(1)}, vals}}});
    REQUIRE_THROWS_AS(alpha_of(Valuation(t)), NoSupportingPrices);
}

TEST_CASE("table lookup requires a listed type") {
    std::vector<Rat> vals{Rat(0), Rat(1)};
    TableValuation t(1, 1, {{{{Rat(1)}, vals}}});
    Valuation v(t);
    REQUIRE(value(v, 0, {Rat(1)}, 1) == 1);
    REQUIRE_THROWS_AS(value(v, 0, {Rat(2)}, 1), DomainError);
}
