#pragma once

#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "cadrigid/graph.hpp"
#include "cadrigid/labeling.hpp"

namespace cadrigid::io {

using nlohmann::json;

struct GraphDocument {
    BicoloredMultigraph graph;
    FrameSignature signature;
    std::optional<TieDown> tie_down;
};

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
    return j;
}

inline Color parse_color(const json& j, const std::string& where) {
    const std::string s = j.get<std::string>();
    if (s == "red") return Color::Red;
    if (s == "black") return Color::Black;
    throw ParseError(where + ": unknown color '" + s + "'");
}

/// Graph document. Vertex indices are 1-based in the file to match the
/// usual figure numbering; internal representation is 0-based.
inline GraphDocument parse_graph(const json& j) {
    if (!j.contains("vertices")) throw ParseError("graph: missing 'vertices'");
    GraphDocument doc;
    const int n = j.at("vertices").get<int>();
    doc.signature.a = j.value("a", 1);
    doc.signature.b = j.value("b", n > 0 ? 2 : 2);
    if (doc.signature.a < 0 || doc.signature.b < 0 || doc.signature.k() < 1)
        throw ParseError("graph: bad signature");

    std::vector<Edge> edges;
    for (const auto& je : j.value("edges", json::array())) {
        Edge e;
        e.id = je.at("id").get<std::string>();
        e.tail = je.at("tail").get<int>() - 1;
        e.head = je.at("head").get<int>() - 1;
        e.color = je.contains("color") ? parse_color(je.at("color"), "edge '" + e.id + "'")
                                       : Color::Black;
        edges.push_back(e);
    }
    try {
        doc.graph = BicoloredMultigraph(n, std::move(edges));
    } catch (const GraphError& e) {
        throw ParseError(std::string("graph: ") + e.what());
    }

    if (j.contains("tie_down")) {
        const auto& jt = j.at("tie_down");
        TieDown t;
        const std::string kind = jt.at("kind").get<std::string>();
        if (kind == "standard") {
            t.kind = TieDown::Kind::Standard;
            t.vertex = jt.at("vertex").get<int>() - 1;
            if (t.vertex < 0 || t.vertex >= n) throw ParseError("tie_down: vertex out of range");
        } else if (kind == "generalized") {
            t.kind = TieDown::Kind::Generalized;
            for (const auto& jl : jt.at("loops")) {
                TieDownLoop l;
                l.id = jl.at("id").get<std::string>();
                l.vertex = jl.at("vertex").get<int>() - 1;
                l.color = jl.contains("color") ? parse_color(jl.at("color"), "loop '" + l.id + "'")
                                               : Color::Black;
                if (l.vertex < 0 || l.vertex >= n) throw ParseError("tie_down: loop vertex out of range");
                t.loops.push_back(l);
            }
        } else {
            throw ParseError("tie_down: unknown kind '" + kind + "'");
        }
        doc.tie_down = t;
    }
    return doc;
}

inline GraphDocument load_graph(const std::string& path) { return parse_graph(load_json_file(path)); }

inline json graph_to_json(const GraphDocument& doc) {
    json j;
    j["vertices"] = doc.graph.vertex_count();
    j["a"] = doc.signature.a;
    j["b"] = doc.signature.b;
    json edges = json::array();
    for (const Edge& e : doc.graph.edges())
        edges.push_back({{"id", e.id},
                         {"tail", e.tail + 1},
                         {"head", e.head + 1},
                         {"color", color_name(e.color)}});
    j["edges"] = edges;
    if (doc.tie_down) {
        json jt;
        if (doc.tie_down->kind == TieDown::Kind::Standard) {
            jt["kind"] = "standard";
            jt["vertex"] = doc.tie_down->vertex + 1;
        } else {
            jt["kind"] = "generalized";
            json loops = json::array();
            for (const auto& l : doc.tie_down->loops)
                loops.push_back({{"id", l.id}, {"vertex", l.vertex + 1}, {"color", color_name(l.color)}});
            jt["loops"] = loops;
        }
        j["tie_down"] = jt;
    }
    return j;
}

inline Rat parse_number(const json& v, const std::string& where) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rat(v.get<long>());
    throw ParseError(where + ": expected integer or rational string");
}

/// Embedding document: either raw k-vector labels (rationals as strings)
/// or bar endpoints ("bars_2d" / "bars_3d") converted to line coordinates.
inline EdgeLabeling parse_embedding(const json& j, int k) {
    EdgeLabeling lab(k);
    if (j.contains("labels")) {
        for (auto it = j.at("labels").begin(); it != j.at("labels").end(); ++it) {
            RatVec v;
            for (const auto& comp : it.value()) v.push_back(parse_number(comp, "label '" + it.key() + "'"));
            if (static_cast<int>(v.size()) != k)
                throw ParseError("label '" + it.key() + "': expected " + std::to_string(k) +
                                 " coordinates, got " + std::to_string(v.size()));
            lab.set(it.key(), std::move(v));
        }
    }
    auto parse_point = [&](const json& p, int dim, const std::string& where) {
        if (!p.is_array() || static_cast<int>(p.size()) != dim)
            throw ParseError(where + ": expected a " + std::to_string(dim) + "-coordinate point");
        RatVec v;
        for (const auto& c : p) v.push_back(parse_number(c, where));
        return v;
    };
    if (j.contains("bars_2d")) {
        if (k != 3) throw ParseError("bars_2d requires k = 3");
        for (auto it = j.at("bars_2d").begin(); it != j.at("bars_2d").end(); ++it) {
            const auto& seg = it.value();
            auto p = parse_point(seg.at(0), 2, "bar '" + it.key() + "'");
            auto q = parse_point(seg.at(1), 2, "bar '" + it.key() + "'");
            lab.set(it.key(), bar_label_2d(p, q));
        }
    }
    if (j.contains("bars_3d")) {
        if (k != 6) throw ParseError("bars_3d requires k = 6");
        for (auto it = j.at("bars_3d").begin(); it != j.at("bars_3d").end(); ++it) {
            const auto& seg = it.value();
            auto p = parse_point(seg.at(0), 3, "bar '" + it.key() + "'");
            auto q = parse_point(seg.at(1), 3, "bar '" + it.key() + "'");
            lab.set(it.key(), bar_label_3d(p, q));
        }
    }
    return lab;
}

inline EdgeLabeling load_embedding(const std::string& path, int k) {
    return parse_embedding(load_json_file(path), k);
}

}  // namespace cadrigid::io
