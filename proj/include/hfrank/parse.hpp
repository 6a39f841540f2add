#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include <json.hpp>

#include "model.hpp"

namespace hfrank {

// Model file format: one JSON document per knot.
//   name: string
//   generators: [{id, alexander, maslov}]
//   arrows: [{from, to, u_power}]   (order-insensitive; duplicates are errors)
//   flip: {"kind":"identity"} | {"kind":"involution","map":{id:id}}
//       | {"kind":"explicit","matrix":[[bits]]}
inline CfkModel parse_and_validate(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad JSON: ") + e.what());
    }
    CfkModel m;
    try {
        m.name = j.at("name").get<std::string>();
        std::map<std::string, std::size_t> index;
        for (const auto& g : j.at("generators")) {
            Generator gen{g.at("id").get<std::string>(), g.at("alexander").get<int>(),
                          g.at("maslov").get<int>()};
            if (index.count(gen.id))
                throw InvariantViolation(m.name + ": duplicate generator id '" + gen.id + "'");
            index[gen.id] = m.generators.size();
            m.generators.push_back(gen);
        }
        auto lookup = [&](const std::string& id) {
            auto it = index.find(id);
            if (it == index.end())
                throw InvariantViolation(m.name + ": unknown generator id '" + id + "'");
            return it->second;
        };
        if (j.contains("arrows"))
            for (const auto& a : j.at("arrows"))
                m.arrows.push_back(Arrow{lookup(a.at("from").get<std::string>()),
                                         lookup(a.at("to").get<std::string>()),
                                         a.at("u_power").get<int>()});
        detail::sort_arrows(m.arrows);
        const auto& f = j.at("flip");
        std::string kind = f.at("kind").get<std::string>();
        if (kind == "identity") {
            m.flip.kind = Flip::Kind::Identity;
        } else if (kind == "involution") {
            m.flip.kind = Flip::Kind::Involution;
            m.flip.perm.assign(m.size(), kNpos);
            for (const auto& [from, to] : f.at("map").items())
                m.flip.perm[lookup(from)] = lookup(to.get<std::string>());
            for (std::size_t i = 0; i < m.size(); ++i)
                if (m.flip.perm[i] == kNpos)
                    throw InvariantViolation(m.name + ": flip map misses generator '" +
                                             m.generators[i].id + "'");
        } else if (kind == "explicit") {
            m.flip.kind = Flip::Kind::Explicit;
            const auto& rows = f.at("matrix");
            m.flip.matrix = BitMatrix(rows.size(), m.size());
            std::size_t i = 0;
            for (const auto& row : rows) {
                if (row.size() != m.size())
                    throw ParseError(m.name + ": flip matrix row width mismatch");
                for (std::size_t k = 0; k < m.size(); ++k)
                    if (row.at(k).get<int>()) m.flip.matrix.set(i, k, true);
                ++i;
            }
        } else {
            throw ParseError(m.name + ": unknown flip kind '" + kind + "'");
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad model document: ") + e.what());
    }
    validate(m);
    return m;
}

inline CfkModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_and_validate(ss.str());
}

inline std::string serialize_model(const CfkModel& m) {
    nlohmann::ordered_json j;
    j["name"] = m.name;
    j["generators"] = nlohmann::ordered_json::array();
    for (const auto& g : m.generators)
        j["generators"].push_back({{"id", g.id}, {"alexander", g.alexander}, {"maslov", g.maslov}});
    j["arrows"] = nlohmann::ordered_json::array();
    for (const auto& a : m.arrows)
        j["arrows"].push_back({{"from", m.generators[a.from].id},
                               {"to", m.generators[a.to].id},
                               {"u_power", a.u_power}});
    switch (m.flip.kind) {
        case Flip::Kind::Identity:
            j["flip"] = {{"kind", "identity"}};
            break;
        case Flip::Kind::Involution: {
            nlohmann::ordered_json map;
            for (std::size_t i = 0; i < m.size(); ++i)
                map[m.generators[i].id] = m.generators[m.flip.perm[i]].id;
            j["flip"] = {{"kind", "involution"}, {"map", map}};
            break;
        }
        case Flip::Kind::Explicit: {
            auto rows = nlohmann::ordered_json::array();
            for (std::size_t i = 0; i < m.flip.matrix.rows(); ++i) {
                auto row = nlohmann::ordered_json::array();
                for (std::size_t k = 0; k < m.flip.matrix.cols(); ++k)
                    row.push_back(m.flip.matrix.get(i, k) ? 1 : 0);
                rows.push_back(row);
            }
            j["flip"] = {{"kind", "explicit"}, {"matrix", rows}};
            break;
        }
        case Flip::Kind::Unavailable:
            throw FlipUnavailable(m.name + ": cannot serialize lost flip data");
    }
    return j.dump(2) + "\n";
}

}  // namespace hfrank
