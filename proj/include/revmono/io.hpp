#pragma once

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "revmono/errors.hpp"
#include "revmono/lab.hpp"
#include "revmono/prob.hpp"
#include "revmono/rational.hpp"
#include "revmono/valuation.hpp"

namespace revmono {

using Json = nlohmann::ordered_json;

// Rationals travel as ["num", "den"] decimal strings; exactness survives I/O.
inline Json rat_to_json(const Rat& r) { return Json::array({num_string(r), den_string(r)}); }

inline Rat rat_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_string())
        throw DomainError("rational JSON must be [\"num\",\"den\"]");
    return rat_from_string(j[0].get<std::string>() + "/" + j[1].get<std::string>());
}

// Distribution atoms are [value, numerator, denominator] triples.
inline Json dist_to_json(const DiscreteDist& d) {
    Json out = Json::array();
    for (std::size_t k = 0; k < d.size(); ++k)
        out.push_back(Json::array(
            {rat_to_json(d.value(k)), num_string(d.prob(k)), den_string(d.prob(k))}));
    return out;
}

inline DiscreteDist dist_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw DomainError("distribution JSON must be a non-empty array");
    std::vector<Rat> vals, probs;
    for (auto& atom : j) {
        if (!atom.is_array() || atom.size() != 3)
            throw DomainError("distribution atom must be [value, num, den]");
        vals.push_back(rat_from_json(atom[0]));
        probs.push_back(rat_from_string(atom[1].get<std::string>() + "/" +
                                        atom[2].get<std::string>()));
    }
    return DiscreteDist(vals, probs);
}

inline Json product_to_json(const ProductDist& F) {
    Json rows = Json::array();
    for (int i = 0; i < F.n(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < F.m(); ++j) row.push_back(dist_to_json(F.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline ProductDist product_from_json(const Json& j, int n, int m) {
    if (!j.is_array() || static_cast<int>(j.size()) != n)
        throw DomainError("distribution matrix rows must match n");
    std::vector<std::vector<DiscreteDist>> rows;
    for (auto& row : j) {
        if (!row.is_array() || static_cast<int>(row.size()) != m)
            throw DomainError("distribution matrix columns must match m");
        std::vector<DiscreteDist> r;
        for (auto& cell : row) r.push_back(dist_from_json(cell));
        rows.push_back(std::move(r));
    }
    return ProductDist(n, m, std::move(rows));
}

inline Json valuation_to_json(const Valuation& v) {
    Json out;
    if (v.is_xos()) {
        out["kind"] = "xos";
        Json buyers = Json::array();
        for (auto& buyer : v.xos().clauses) {
            Json cls = Json::array();
            for (auto& clause : buyer) {
                Json row = Json::array();
                for (auto& a : clause) row.push_back(rat_to_json(a));
                cls.push_back(std::move(row));
            }
            buyers.push_back(std::move(cls));
        }
        out["clauses"] = std::move(buyers);
    } else {
        out["kind"] = "table";
        Json buyers = Json::array();
        for (auto& row : v.table().rows) {
            Json entries = Json::array();
            for (auto& [t, vals] : row) {
                Json e;
                Json tj = Json::array();
                for (auto& x : t) tj.push_back(rat_to_json(x));
                Json vj = Json::array();
                for (auto& x : vals) vj.push_back(rat_to_json(x));
                e["type"] = std::move(tj);
                e["values"] = std::move(vj);
                entries.push_back(std::move(e));
            }
            buyers.push_back(std::move(entries));
        }
        out["rows"] = std::move(buyers);
    }
    return out;
}

inline Valuation valuation_from_json(const Json& j, int n, int m) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "xos") {
        std::vector<std::vector<std::vector<Rat>>> clauses;
        for (auto& buyer : j.at("clauses")) {
            std::vector<std::vector<Rat>> cls;
            for (auto& clause : buyer) {
                std::vector<Rat> row;
                for (auto& a : clause) row.push_back(rat_from_json(a));
                cls.push_back(std::move(row));
            }
            clauses.push_back(std::move(cls));
        }
        return Valuation(XOSValuation(n, m, std::move(clauses)));
    }
    if (kind == "table") {
        std::vector<std::vector<std::pair<std::vector<Rat>, std::vector<Rat>>>> rows;
        for (auto& buyer : j.at("rows")) {
            std::vector<std::pair<std::vector<Rat>, std::vector<Rat>>> row;
            for (auto& e : buyer) {
                std::vector<Rat> t, vals;
                for (auto& x : e.at("type")) t.push_back(rat_from_json(x));
                for (auto& x : e.at("values")) vals.push_back(rat_from_json(x));
                row.emplace_back(std::move(t), std::move(vals));
            }
            rows.push_back(std::move(row));
        }
        return Valuation(TableValuation(n, m, std::move(rows)));
    }
    throw DomainError("unknown valuation kind: " + kind);
}

inline Json instance_to_json(const Instance& inst) {
    Json out;
    out["n"] = inst.n;
    out["m"] = inst.m;
    out["valuation"] = valuation_to_json(inst.v);
    out["F"] = product_to_json(inst.F);
    if (inst.G) out["G"] = product_to_json(*inst.G);
    Json params;
    params["b"] = rat_to_json(inst.b);
    params["q"] = rat_to_json(inst.q);
    params["strength"] = rat_to_json(inst.strength);
    params["seed"] = std::to_string(inst.seed);
    params["relation"] = relation_name(inst.relation);
    out["params"] = std::move(params);
    return out;
}

inline Instance instance_from_json(const Json& j) {
    int n = j.at("n").get<int>();
    int m = j.at("m").get<int>();
    if (n <= 0 || m <= 0) throw DomainError("instance: n and m must be positive");
    Valuation v = valuation_from_json(j.at("valuation"), n, m);
    ProductDist F = product_from_json(j.at("F"), n, m);
    Instance inst(n, m, std::move(v), std::move(F));
    if (j.contains("G")) inst.G = product_from_json(j.at("G"), n, m);
    const Json& params = j.at("params");
    inst.b = rat_from_json(params.at("b"));
    inst.q = rat_from_json(params.at("q"));
    if (params.contains("strength")) inst.strength = rat_from_json(params.at("strength"));
    inst.seed = std::stoull(params.at("seed").get<std::string>());
    inst.relation = relation_from_name(params.at("relation").get<std::string>());
    return inst;
}

inline Json report_to_json(const Report& rep) {
    Json out;
    out["meta"] = Json{{"seed", std::to_string(rep.seed)}, {"version", rep.version}};
    Json records = Json::array();
    for (auto& r : rep.records) {
        Json rec;
        rec["name"] = r.name;
        rec["anchor"] = r.anchor;
        rec["lhs"] = rat_to_json(r.lhs);
        rec["rhs"] = rat_to_json(r.rhs);
        rec["verdict"] = r.verdict;
        rec["millis"] = r.millis;
        records.push_back(std::move(rec));
    }
    out["records"] = std::move(records);
    return out;
}

inline std::string report_to_csv(const Report& rep) {
    std::ostringstream out;
    out << "name,anchor,lhs,rhs,verdict,millis\n";
    for (auto& r : rep.records) {
        out << r.name << ",\"" << r.anchor << "\"," << rat_to_string(r.lhs) << ","
            << rat_to_string(r.rhs) << "," << r.verdict << "," << r.millis << "\n";
    }
    return out.str();
}

// Write-then-rename so readers never observe a partial file.
inline void write_file_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DomainError("cannot open for writing: " + tmp);
        out << content;
        if (!out.good()) throw DomainError("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw DomainError("rename failed: " + path);
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("cannot open: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace revmono
