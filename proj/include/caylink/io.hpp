#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cayley_vector.hpp"
#include "linkage.hpp"
#include "motion.hpp"

namespace caylink {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// A realization named by its Cayley coordinate and forward type.
struct Seed {
    double lf = 0;
    ForwardType sigma;
};

struct LinkageDocument {
    int schema_version = kSchemaVersion;
    Linkage linkage;
    Edge f;
    std::vector<Seed> seeds;
};

namespace detail {

inline std::string line_col(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

[[noreturn]] inline void parse_fail(const std::string& where, const std::string& what) {
    throw Error(ErrorKind::ParseError, where + ": " + what);
}

template <class T>
T field(const json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) parse_fail(where, std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        parse_fail(where + "." + key, "wrong type");
    }
}

inline json point_json(const Point& p) { return json::array({p.x, p.y}); }

inline Point point_from(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        parse_fail(where, "expected [x, y]");
    return {j[0].get<double>(), j[1].get<double>()};
}

inline std::map<Vertex, Point> points_from(const json& j, const std::string& where) {
    if (!j.is_object()) parse_fail(where, "expected an object of vertex id -> [x, y]");
    std::map<Vertex, Point> out;
    for (auto& [k, v] : j.items()) {
        Vertex id = 0;
        try {
            std::size_t used = 0;
            id = std::stoi(k, &used);
            if (used != k.size()) throw std::invalid_argument(k);
        } catch (const std::exception&) {
            parse_fail(where, "vertex key '" + k + "' is not an integer");
        }
        out[id] = point_from(v, where + "." + k);
    }
    return out;
}

inline json points_json(const std::map<Vertex, Point>& pts) {
    json j = json::object();
    for (auto& [v, p] : pts) j[std::to_string(v)] = point_json(p);
    return j;
}

inline ForwardType sigma_from(const std::string& s, const std::string& where) {
    for (char c : s)
        if (c != '+' && c != '-' && c != '0') parse_fail(where, "forward type '" + s + "' has a character outside {+,-,0}");
    return type_from_string(s);
}

} // namespace detail

inline LinkageDocument document_from_json(const json& j) {
    if (!j.is_object()) detail::parse_fail("document", "expected a JSON object");
    LinkageDocument doc;
    doc.schema_version = detail::field<int>(j, "schemaVersion", "document");
    if (doc.schema_version != kSchemaVersion)
        detail::parse_fail("schemaVersion", "unsupported version " + std::to_string(doc.schema_version));

    if (j.contains("vertices")) {
        const auto& vs = j["vertices"];
        if (!vs.is_array()) detail::parse_fail("vertices", "expected an array");
        for (std::size_t i = 0; i < vs.size(); ++i) {
            std::string where = "vertices[" + std::to_string(i) + "]";
            Vertex id = detail::field<int>(vs[i], "id", where);
            doc.linkage.graph.add_vertex(id);
            if (vs[i].contains("label")) doc.linkage.labels[id] = detail::field<std::string>(vs[i], "label", where);
        }
    }

    if (!j.contains("edges") || !j["edges"].is_array()) detail::parse_fail("edges", "missing edge array");
    const auto& es = j["edges"];
    for (std::size_t i = 0; i < es.size(); ++i) {
        std::string where = "edges[" + std::to_string(i) + "]";
        Vertex u = detail::field<int>(es[i], "u", where);
        Vertex v = detail::field<int>(es[i], "v", where);
        double len = detail::field<double>(es[i], "length", where);
        where += " " + to_string(Edge(u, v));
        if (u == v) detail::parse_fail(where, "self-loop");
        if (!(len > 0) || !std::isfinite(len)) detail::parse_fail(where, "length must be positive, got " + format_double(len));
        if (doc.linkage.graph.has_edge(u, v)) detail::parse_fail(where, "duplicate edge");
        doc.linkage.graph.add_edge(u, v);
        doc.linkage.lengths[Edge(u, v)] = len;
    }

    auto base = detail::field<std::vector<int>>(j, "baseNonEdge", "document");
    if (base.size() != 2) detail::parse_fail("baseNonEdge", "expected two vertex ids");
    doc.f = Edge(base[0], base[1]);
    if (base[0] == base[1]) detail::parse_fail("baseNonEdge", "endpoints coincide");
    if (doc.linkage.graph.has_edge(doc.f)) detail::parse_fail("baseNonEdge", to_string(doc.f) + " is an edge");
    for (Vertex v : {doc.f.a, doc.f.b})
        if (!doc.linkage.graph.has_vertex(v)) detail::parse_fail("baseNonEdge", "vertex " + std::to_string(v) + " is unknown");

    if (j.contains("clusterPlacements")) {
        const auto& cp = j["clusterPlacements"];
        if (!cp.is_array()) detail::parse_fail("clusterPlacements", "expected an array");
        for (std::size_t i = 0; i < cp.size(); ++i) {
            std::string where = "clusterPlacements[" + std::to_string(i) + "]";
            ClusterChart c;
            c.points = detail::points_from(detail::field<json>(cp[i], "points", where), where + ".points");
            doc.linkage.placements.push_back(std::move(c));
        }
    }
    if (j.contains("realizationSeeds")) {
        const auto& rs = j["realizationSeeds"];
        if (!rs.is_array()) detail::parse_fail("realizationSeeds", "expected an array");
        for (std::size_t i = 0; i < rs.size(); ++i) {
            std::string where = "realizationSeeds[" + std::to_string(i) + "]";
            Seed s;
            s.lf = detail::field<double>(rs[i], "lf", where);
            s.sigma = detail::sigma_from(detail::field<std::string>(rs[i], "sigma", where), where + ".sigma");
            doc.seeds.push_back(std::move(s));
        }
    }
    return doc;
}

inline LinkageDocument parse_document(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::ParseError, detail::line_col(text, e.byte == 0 ? 0 : e.byte - 1) + ": malformed JSON");
    }
    return document_from_json(j);
}

inline LinkageDocument load_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, path + ": cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_document(ss.str());
    } catch (const Error& e) {
        throw Error(ErrorKind::ParseError, path + ": " + e.message());
    }
}

// Canonical form: vertices and edges ascending, optional blocks only when
// present.
inline json to_json(const LinkageDocument& doc) {
    json j;
    j["schemaVersion"] = doc.schema_version;
    json vs = json::array();
    for (Vertex v : doc.linkage.graph.vertices()) {
        json o{{"id", v}};
        if (auto it = doc.linkage.labels.find(v); it != doc.linkage.labels.end()) o["label"] = it->second;
        vs.push_back(o);
    }
    j["vertices"] = vs;
    json es = json::array();
    for (const Edge& e : doc.linkage.graph.edges()) es.push_back({{"u", e.a}, {"v", e.b}, {"length", doc.linkage.lengths.at(e)}});
    j["edges"] = es;
    j["baseNonEdge"] = {doc.f.a, doc.f.b};
    if (!doc.linkage.placements.empty()) {
        json cp = json::array();
        for (const auto& c : doc.linkage.placements) cp.push_back({{"points", detail::points_json(c.points)}});
        j["clusterPlacements"] = cp;
    }
    if (!doc.seeds.empty()) {
        json rs = json::array();
        for (const auto& s : doc.seeds) rs.push_back({{"lf", s.lf}, {"sigma", type_to_string(s.sigma)}});
        j["realizationSeeds"] = rs;
    }
    return j;
}

inline std::string serialize(const LinkageDocument& doc) { return to_json(doc).dump(2) + "\n"; }

inline LinkageDocument make_document(const Linkage& lk, const Edge& f) {
    LinkageDocument d;
    d.linkage = lk;
    d.f = f;
    return d;
}

// ---- JSON forms of results -------------------------------------------------

inline json to_json(const Interval& iv) { return json::array({iv.lo, iv.hi}); }

inline json to_json(const IntervalSet& s) {
    json a = json::array();
    for (const auto& iv : s) a.push_back(to_json(iv));
    return a;
}

inline IntervalSet interval_set_from_json(const json& j) {
    std::vector<Interval> parts;
    for (const auto& iv : j) parts.push_back({iv.at(0).get<double>(), iv.at(1).get<double>()});
    return IntervalSet(std::move(parts));
}

inline json to_json(const Realization& r, const Instance& inst) {
    json z = json::array();
    for (const auto& s : inst.plan.steps)
        if (local_orientation(r[s.u], r[s.w], r[s.vertex], inst.tol.orient) == 0)
            z.push_back({s.u, s.w, s.vertex});
    return {{"lf", r.distance(inst.f().a, inst.f().b)},
            {"sigma", type_to_string(forward_type_of(r, inst.plan, inst.tol.orient))},
            {"points", detail::points_json(r.points)},
            {"zeroTriples", z}};
}

inline json to_json(const MotionPath& p) {
    json legs = json::array();
    for (const auto& l : p.legs)
        legs.push_back({{"sigma", type_to_string(l.sigma)},
                        {"interval", to_json(l.interval)},
                        {"direction", to_string(l.direction)},
                        {"from", l.from},
                        {"to", l.to}});
    json tr = json::array();
    for (const auto& t : p.transitions) tr.push_back({{"lf", t.lf}, {"step", t.step}});
    return {{"start", {{"lf", p.start.lf}, {"sigma", type_to_string(p.start.sigma)}}},
            {"target", {{"lf", p.target.lf}, {"sigma", type_to_string(p.target.sigma)}}},
            {"legs", legs},
            {"transitions", tr},
            {"throughIsolated", p.through_isolated}};
}

inline json to_json(const CompleteCayleyVector& F) {
    json e = json::array();
    for (const Edge& x : F.entries) e.push_back({x.a, x.b});
    return {{"entries", e}, {"notes", F.notes}};
}

inline json to_json(const CayleyCurvePoint& p) {
    return {{"distances", p.distances}, {"sigma", type_to_string(p.sigma)}, {"component", p.component}, {"lf", p.lf}};
}

inline std::string curve_csv(const CompleteCayleyVector& F, const std::vector<CayleyCurvePoint>& pts) {
    std::string out;
    for (const Edge& e : F.entries) out += "d" + std::to_string(e.a) + "_" + std::to_string(e.b) + ",";
    out += "sigma,component\n";
    for (const auto& p : pts) {
        for (double d : p.distances) out += format_double(d) + ",";
        out += type_to_string(p.sigma) + "," + std::to_string(p.component) + "\n";
    }
    return out;
}

} // namespace caylink
