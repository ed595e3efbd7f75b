#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>

#include "revmono/io.hpp"

using namespace revmono;

namespace {

DiscreteDist dist(std::initializer_list<std::pair<Rat, Rat>> atoms) {
    std::vector<Rat> vals, probs;
    for (auto& [v, p] : atoms) {
        vals.push_back(v);
        probs.push_back(p);
    }
    return DiscreteDist(vals, probs);
}

}  // namespace

TEST_CASE("rationals survive the JSON round trip") {
    for (const Rat& r : {Rat(0), Rat(7), Rat(-3), rat(22, 7), rat(-9, 4),
                         rat_from_string("123456789123456789/987654321")}) {
        Json j = rat_to_json(r);
        REQUIRE(rat_from_json(j) == r);
        REQUIRE(j.is_array());
        REQUIRE(j.size() == 2);
    }
}

TEST_CASE("malformed rationals are rejected") {
    REQUIRE_THROWS(rat_from_json(Json::array({"1"})));
    REQUIRE_THROWS(rat_from_json(Json::array({"1", "0"})));
    REQUIRE_THROWS(rat_from_string("abc"));
    REQUIRE_THROWS(rat_from_string(""));
    REQUIRE_THROWS(rat_from_string("1/0"));
}

TEST_CASE("distributions survive the JSON round trip") {
    DiscreteDist d = dist({{rat(1, 2), rat(1, 4)}, {Rat(3), rat(3, 4)}});
    REQUIRE(dist_from_json(dist_to_json(d)) == d);
    DiscreteDist p = DiscreteDist::point_mass(rat(5, 3));
    REQUIRE(dist_from_json(dist_to_json(p)) == p);
}

TEST_CASE("product distributions survive the JSON round trip") {
    ProductDist F(2, 2,
                  {{dist({{Rat(1), rat(1, 2)}, {Rat(2), rat(1, 2)}}), DiscreteDist::point_mass(Rat(0))},
                   {DiscreteDist::point_mass(Rat(4)), dist({{Rat(0), rat(1, 4)}, {Rat(9), rat(3, 4)}})}});
    ProductDist back = product_from_json(product_to_json(F), 2, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) REQUIRE(back.at(i, j) == F.at(i, j));
}

TEST_CASE("clause valuations survive the JSON round trip") {
    XOSValuation x(2, 2, {{{Rat(1), rat(1, 2)}, {Rat(0), Rat(2)}}, {{Rat(1), Rat(1)}}});
    Valuation v(x);
    Valuation back = valuation_from_json(valuation_to_json(v), 2, 2);
    REQUIRE(back.is_xos());
    std::vector<Rat> t{Rat(3), Rat(5)};
    for (Mask S = 0; S < 4; ++S) {
        REQUIRE(value(back, 0, t, S) == value(v, 0, t, S));
        REQUIRE(value(back, 1, t, S) == value(v, 1, t, S));
    }
}

TEST_CASE("table valuations survive the JSON round trip") {
    std::vector<Rat> vals{Rat(0), Rat(1), Rat(1), rat(3, 2)};
    TableValuation t(1, 2, {{{{Rat(1), Rat(2)}, vals}, {{Rat(0), Rat(0)}, std::vector<Rat>(4, Rat(0))}}});
    Valuation v(t);
    Valuation back = valuation_from_json(valuation_to_json(v), 1, 2);
    REQUIRE_FALSE(back.is_xos());
    REQUIRE(value(back, 0, {Rat(1), Rat(2)}, 0b11) == rat(3, 2));
    REQUIRE(value(back, 0, {Rat(0), Rat(0)}, 0b01) == 0);
}

TEST_CASE("instances survive the JSON round trip and still validate") {
    ProductDist F(1, 2,
                  {{dist({{Rat(1), rat(1, 2)}, {Rat(2), rat(1, 2)}}),
                    dist({{Rat(0), rat(1, 4)}, {Rat(3), rat(3, 4)}})}});
    Instance inst(1, 2, Valuation(XOSValuation::additive(1, 2)), F);
    inst.G = gen_dominating_pair(F, rat(1, 2), 77);
    inst.relation = Relation::Coordinatewise;
    inst.b = rat(1, 4);
    inst.q = rat(1, 2);
    inst.strength = rat(1, 2);
    inst.seed = 12345678901234ull;

    Json j = instance_to_json(inst);
    Instance back = instance_from_json(j);
    REQUIRE_NOTHROW(back.validate());
    REQUIRE(back.n == 1);
    REQUIRE(back.m == 2);
    REQUIRE(back.seed == inst.seed);
    REQUIRE(back.relation == Relation::Coordinatewise);
    REQUIRE(back.b == inst.b);
    REQUIRE(back.strength == inst.strength);
    for (int jx = 0; jx < 2; ++jx) {
        REQUIRE(back.F.at(0, jx) == F.at(0, jx));
        REQUIRE(back.G->at(0, jx) == inst.G->at(0, jx));
    }
    // Serialization is deterministic byte for byte.
    REQUIRE(instance_to_json(back).dump(2) == j.dump(2));
}

TEST_CASE("an unpaired instance omits the second distribution") {
    ProductDist F(1, 1, {{DiscreteDist::point_mass(Rat(2))}});
    Instance inst(1, 1, Valuation(XOSValuation::additive(1, 1)), F);
    Json j = instance_to_json(inst);
    REQUIRE_FALSE(j.contains("G"));
    Instance back = instance_from_json(j);
    REQUIRE_FALSE(back.G.has_value());
    REQUIRE(back.relation == Relation::None);
}

TEST_CASE("reports serialize records in order") {
    Report rep;
    rep.seed = 42;
    rep.version = "0.1.0";
    rep.records.push_back(record_geq("alpha", "x >= y", rat(3, 2), Rat(1)));
    rep.records.push_back(record_inconclusive("beta", "p >= q", Rat(0), Rat(1)));

    Json j = report_to_json(rep);
    REQUIRE(j["meta"]["seed"] == "42");
    REQUIRE(j["meta"]["version"] == "0.1.0");
    REQUIRE(j["records"].size() == 2);
    REQUIRE(j["records"][0]["name"] == "alpha");
    REQUIRE(j["records"][0]["verdict"] == "pass");
    REQUIRE(j["records"][0]["lhs"] == Json::array({"3", "2"}));
    REQUIRE(j["records"][1]["verdict"] == "inconclusive");

    std::string csv = report_to_csv(rep);
    REQUIRE(csv.rfind("name,anchor,lhs,rhs,verdict,millis\n", 0) == 0);
    REQUIRE(csv.find("alpha,\"x >= y\",3/2,1,pass,0\n") != std::string::npos);
    REQUIRE(csv.find("beta,\"p >= q\",0,1,inconclusive,0\n") != std::string::npos);
}

TEST_CASE("atomic writes land complete and readable") {
    std::filesystem::path dir = std::filesystem::temp_directory_path() / "revmono_io_test";
    std::filesystem::create_directories(dir);
    std::string path = (dir / "out.json").string();
    write_file_atomic(path, "first");
    REQUIRE(read_file(path) == "first");
    write_file_atomic(path, "second version");
    REQUIRE(read_file(path) == "second version");
    REQUIRE_FALSE(std::filesystem::exists(path + ".tmp"));
    std::filesystem::remove_all(dir);
    REQUIRE_THROWS(read_file(path));
}

TEST_CASE("instance parsing rejects malformed documents") {
    REQUIRE_THROWS(instance_from_json(Json::object()));
    Json j = Json::object();
    j["n"] = 1;
    j["m"] = 1;
    REQUIRE_THROWS(instance_from_json(j));
}
