#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "decomposition.hpp"
#include "error.hpp"
#include "graph.hpp"
#include "numeric.hpp"

namespace caylink {

using ForwardType = std::vector<int>;
using ReverseType = std::vector<int>;

inline std::string type_to_string(const std::vector<int>& t) {
    std::string s;
    for (int v : t) s += v > 0 ? '+' : v < 0 ? '-' : '0';
    return s;
}

inline std::vector<int> type_from_string(const std::string& s) {
    std::vector<int> t;
    for (char c : s) {
        if (c == '+') t.push_back(1);
        else if (c == '-') t.push_back(-1);
        else if (c == '0') t.push_back(0);
        else throw Error(ErrorKind::ParseError, "bad sign character '" + std::string(1, c) + "' in type string");
    }
    return t;
}

// Coordinates of one rigid cluster in its own frame.
struct ClusterChart {
    std::map<Vertex, Point> points;

    double distance(Vertex a, Vertex b) const { return dist(points.at(a), points.at(b)); }
    std::set<Vertex> vertices() const {
        std::set<Vertex> s;
        for (auto& [v, p] : points) s.insert(v);
        return s;
    }
};

struct Linkage {
    Graph graph;
    std::map<Edge, double> lengths;
    std::vector<ClusterChart> placements;  // optional charts for nontrivial clusters
    std::map<Vertex, std::string> labels;

    double length(const Edge& e) const {
        auto it = lengths.find(e);
        if (it == lengths.end()) throw Error(ErrorKind::DomainError, "no length for edge " + to_string(e));
        return it->second;
    }
};

struct Realization {
    std::map<Vertex, Point> points;

    const Point& operator[](Vertex v) const { return points.at(v); }
    double distance(Vertex a, Vertex b) const { return dist(points.at(a), points.at(b)); }
};

template <class Real>
int local_orientation(const BasicPoint<Real>& pu, const BasicPoint<Real>& pw, const BasicPoint<Real>& pv,
                      double tol = 1e-9) {
    using std::abs;
    Real c = cross(pw - pu, pv - pu);
    Real scale = std::max(norm(pw - pu), norm(pv - pu));
    if (abs(c) <= Real(tol) * scale * scale) return 0;
    return c > 0 ? 1 : -1;
}

// Place v at distance R1 from u and R2 from w, on the side given by sigma.
template <class Real>
BasicPoint<Real> realize_step(const BasicPoint<Real>& pu, const BasicPoint<Real>& pw, const Real& R1,
                              const Real& R2, int sigma, double tol_tri = 1e-9) {
    using std::abs;
    using std::sqrt;
    Real R3 = dist(pu, pw);
    Real scale = std::max({R1, R2, R3});
    if (R3 <= Real(tol_tri) * scale) throw Error(ErrorKind::DegenerateBase, "base pair coincides");
    Real slack = Real(tol_tri) * scale;
    if (R3 > R1 + R2 + slack || R3 < abs(R1 - R2) - slack)
        throw Error(ErrorKind::TriangleViolation, "triangle inequality fails");
    Real x = (R1 * R1 + R3 * R3 - R2 * R2) / (2 * R3);
    Real h2 = (R1 + R2 + R3) * (R1 + R2 - R3) * (R1 - R2 + R3) * (-R1 + R2 + R3);
    Real y = h2 > 0 ? sqrt(h2) / (2 * R3) : Real(0);
    if (sigma < 0) y = -y;
    BasicPoint<Real> ex = (pw - pu) * (Real(1) / R3);
    BasicPoint<Real> ey{-ex.y, ex.x};
    return pu + ex * x + ey * y;
}

// Proper rigid motion taking a0 -> b0 and the direction a0a1 onto b0b1.
struct RigidMap {
    Point origin_from, origin_to;
    double c = 1, s = 0;

    static RigidMap fit(const Point& a0, const Point& a1, const Point& b0, const Point& b1) {
        RigidMap m;
        m.origin_from = a0;
        m.origin_to = b0;
        double ta = std::atan2(a1.y - a0.y, a1.x - a0.x);
        double tb = std::atan2(b1.y - b0.y, b1.x - b0.x);
        m.c = std::cos(tb - ta);
        m.s = std::sin(tb - ta);
        return m;
    }

    Point operator()(const Point& p) const {
        Point d = p - origin_from;
        return origin_to + Point{c * d.x - s * d.y, s * d.x + c * d.y};
    }
};

namespace detail {

// Ruler-and-compass solve of a tree-decomposable graph by replaying the
// three-way merges bottom up. Every merge triangle gets positive orientation,
// which fixes the chart's chirality.
inline ClusterChart solve_tree_decomposable(const Graph& g, const std::map<Edge, double>& lengths) {
    struct Comp {
        std::map<Vertex, Point> pts;
    };
    std::vector<Comp> comps;
    for (const Edge& e : g.edges()) comps.push_back({{{e.a, {0, 0}}, {e.b, {lengths.at(e), 0}}}});
    auto shared = [](const Comp& a, const Comp& b) {
        std::vector<Vertex> s;
        for (auto& [v, p] : a.pts)
            if (b.pts.count(v)) s.push_back(v);
        return s;
    };
    while (comps.size() > 1) {
        bool merged = false;
        for (std::size_t i = 0; i < comps.size() && !merged; ++i)
            for (std::size_t j = 0; j < comps.size() && !merged; ++j) {
                if (j == i) continue;
                auto sij = shared(comps[i], comps[j]);
                if (sij.size() != 1) continue;
                for (std::size_t k = 0; k < comps.size() && !merged; ++k) {
                    if (k == i || k == j) continue;
                    auto sjk = shared(comps[j], comps[k]);
                    auto ski = shared(comps[k], comps[i]);
                    if (sjk.size() != 1 || ski.size() != 1) continue;
                    Vertex x = sij[0], y = sjk[0], z = ski[0];
                    if (x == y || y == z || z == x) continue;
                    double dxy = dist(comps[j].pts[x], comps[j].pts[y]);
                    double dyz = dist(comps[k].pts[y], comps[k].pts[z]);
                    double dzx = dist(comps[i].pts[z], comps[i].pts[x]);
                    Point px{0, 0}, py{dxy, 0};
                    Point pz = realize_step(px, py, dzx, dyz, 1);
                    Comp u;
                    auto absorb = [&](const Comp& c, Vertex a, const Point& pa, Vertex b, const Point& pb) {
                        auto m = RigidMap::fit(c.pts.at(a), c.pts.at(b), pa, pb);
                        for (auto& [v, p] : c.pts) u.pts.try_emplace(v, m(p));
                    };
                    absorb(comps[i], z, pz, x, px);
                    absorb(comps[j], x, px, y, py);
                    absorb(comps[k], y, py, z, pz);
                    std::vector<Comp> rest;
                    for (std::size_t t = 0; t < comps.size(); ++t)
                        if (t != i && t != j && t != k) rest.push_back(std::move(comps[t]));
                    rest.push_back(std::move(u));
                    comps = std::move(rest);
                    merged = true;
                }
            }
        if (!merged) throw Error(ErrorKind::NotSupported, "cluster is not tree-decomposable");
    }
    return ClusterChart{comps.empty() ? std::map<Vertex, Point>{} : comps[0].pts};
}

} // namespace detail

// A linkage together with its construction plan from f and one chart per cluster
// of the plan, in plan order.
struct Instance {
    Linkage linkage;
    ConstructionPlan plan;
    std::vector<ClusterChart> charts;
    Tolerances tol;

    Edge f() const { return plan.f(); }
    std::size_t steps() const { return plan.size(); }

    double cluster_distance(int cluster, Vertex a, Vertex b) const {
        return charts.at(static_cast<std::size_t>(cluster)).distance(a, b);
    }

    // Length between two vertices that share a cluster, or nullopt.
    std::optional<double> rigid_distance(Vertex a, Vertex b) const {
        for (const auto& ch : charts)
            if (ch.points.count(a) && ch.points.count(b)) return ch.distance(a, b);
        return std::nullopt;
    }

    int cluster_containing(Vertex a, Vertex b) const {
        for (std::size_t i = 0; i < plan.clusters.size(); ++i)
            if (plan.clusters[i].contains(a) && plan.clusters[i].contains(b)) return static_cast<int>(i);
        return -1;
    }

    // Triangle range of step k's base pair length.
    std::pair<double, double> step_range(int k) const {
        const auto& s = plan.step(k);
        double r1 = cluster_distance(s.cluster_u, s.u, s.vertex);
        double r2 = cluster_distance(s.cluster_w, s.w, s.vertex);
        return {std::abs(r1 - r2), r1 + r2};
    }
};

inline std::vector<ClusterChart> build_charts(const Linkage& lk, const std::vector<Cluster>& clusters,
                                              double tol_len = 1e-9) {
    std::vector<ClusterChart> charts;
    for (const auto& cl : clusters) {
        if (cl.trivial()) {
            const Edge& e = *cl.edges.begin();
            charts.push_back(ClusterChart{{{e.a, {0, 0}}, {e.b, {lk.length(e), 0}}}});
            continue;
        }
        const ClusterChart* given = nullptr;
        for (const auto& p : lk.placements)
            if (p.vertices() == cl.vertices) given = &p;
        if (given) {
            for (const Edge& e : cl.edges) {
                double d = given->distance(e.a, e.b);
                if (std::abs(d - lk.length(e)) > tol_len * std::max(1.0, lk.length(e)))
                    throw Error(ErrorKind::DomainError, "cluster placement does not match length of " + to_string(e));
            }
            charts.push_back(*given);
            continue;
        }
        Graph sub;
        std::map<Edge, double> len;
        for (const Edge& e : cl.edges) {
            sub.add_edge(e);
            len[e] = lk.length(e);
        }
        auto chart = detail::solve_tree_decomposable(sub, len);
        for (const Edge& e : cl.edges)
            if (std::abs(chart.distance(e.a, e.b) - lk.length(e)) > 1e-7 * std::max(1.0, lk.length(e)))
                throw Error(ErrorKind::Unrealizable, "cluster containing " + to_string(e) + " is not realizable");
        charts.push_back(std::move(chart));
    }
    return charts;
}

inline Instance make_instance(const Linkage& lk, const Edge& f, Tolerances tol = {}) {
    for (const Edge& e : lk.graph.edges()) {
        auto it = lk.lengths.find(e);
        if (it == lk.lengths.end() || !(it->second > 0))
            throw Error(ErrorKind::DomainError, "edge " + to_string(e) + " needs a positive length");
    }
    Instance inst;
    inst.linkage = lk;
    inst.plan = construction_plan(lk.graph, f);
    inst.charts = build_charts(lk, inst.plan.clusters, tol.len);
    inst.tol = tol;
    return inst;
}

namespace detail {

// Places the non-step vertices of a cluster once two of its vertices are known.
inline void place_cluster(const ClusterChart& chart, Vertex a, Vertex b, std::map<Vertex, Point>& pts) {
    auto m = RigidMap::fit(chart.points.at(a), chart.points.at(b), pts.at(a), pts.at(b));
    for (auto& [v, p] : chart.points) pts.try_emplace(v, m(p));
}

} // namespace detail

// Ruler-and-compass realization from l_f under forward type sigma. Throws
// TriangleViolation carrying the failing step.
inline Realization realize(const Instance& inst, double lf, const ForwardType& sigma) {
    if (!(lf > 0)) throw Error(ErrorKind::DomainError, "l_f must be positive");
    if (sigma.size() != inst.steps())
        throw Error(ErrorKind::DomainError, "forward type has " + std::to_string(sigma.size()) + " entries, plan has " +
                                                std::to_string(inst.steps()) + " steps");
    Realization r;
    r.points[inst.plan.v0] = {0, 0};
    r.points[inst.plan.v0p] = {lf, 0};
    for (const auto& s : inst.plan.steps) {
        double r1 = inst.cluster_distance(s.cluster_u, s.u, s.vertex);
        double r2 = inst.cluster_distance(s.cluster_w, s.w, s.vertex);
        try {
            r.points[s.vertex] = realize_step(r.points.at(s.u), r.points.at(s.w), r1, r2,
                                              sigma[static_cast<std::size_t>(s.index - 1)], inst.tol.tri);
        } catch (const Error& e) {
            throw Error(e.kind(), e.message() + " at step " + std::to_string(s.index), s.index);
        }
        detail::place_cluster(inst.charts[static_cast<std::size_t>(s.cluster_u)], s.u, s.vertex, r.points);
        detail::place_cluster(inst.charts[static_cast<std::size_t>(s.cluster_w)], s.w, s.vertex, r.points);
    }
    return r;
}

inline std::optional<Realization> try_realize(const Instance& inst, double lf, const ForwardType& sigma) {
    try {
        return realize(inst, lf, sigma);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::TriangleViolation || e.kind() == ErrorKind::DegenerateBase ||
            e.kind() == ErrorKind::DomainError)
            return std::nullopt;
        throw;
    }
}

inline ForwardType forward_type_of(const Realization& r, const ConstructionPlan& plan, double tol = 1e-9,
                                   std::size_t count = std::size_t(-1)) {
    ForwardType t;
    for (const auto& s : plan.steps) {
        if (t.size() >= count) break;
        t.push_back(local_orientation(r[s.u], r[s.w], r[s.vertex], tol));
    }
    return t;
}

inline ReverseType reverse_type_of(const Realization& r, const ExtremeGraphSpec& spec, double tol = 1e-9) {
    if (!spec.reverse_plan)
        throw Error(ErrorKind::NotSupported, "extreme graph of step " + std::to_string(spec.step) +
                                                 " is not tree-decomposable");
    return forward_type_of(r, *spec.reverse_plan, tol);
}

inline double max_edge_residual(const Linkage& lk, const Realization& r) {
    double worst = 0;
    for (const Edge& e : lk.graph.edges())
        if (r.points.count(e.a) && r.points.count(e.b))
            worst = std::max(worst, std::abs(r.distance(e.a, e.b) - lk.length(e)));
    return worst;
}

struct GenericityReport {
    std::vector<Edge> zero_length_edges;
    std::vector<std::pair<Edge, Edge>> duplicate_length_pairs;
    int collinear_adjacent_pairs = 0;
    std::vector<std::string> warnings;
};

// Advisory only; the caller decides what to do with the warnings.
inline GenericityReport check_genericity(const Linkage& lk, const std::vector<Realization>& probes = {},
                                         double tol = 1e-9) {
    GenericityReport rep;
    std::vector<std::pair<Edge, double>> all(lk.lengths.begin(), lk.lengths.end());
    for (auto& [e, l] : all)
        if (l == 0) rep.zero_length_edges.push_back(e);
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j)
            if (all[i].second == all[j].second) rep.duplicate_length_pairs.push_back({all[i].first, all[j].first});
    for (const auto& r : probes) {
        int count = 0;
        for (Vertex v : lk.graph.vertices()) {
            auto nb = lk.graph.neighbors(v);
            std::vector<Vertex> n(nb.begin(), nb.end());
            for (std::size_t i = 0; i < n.size(); ++i)
                for (std::size_t j = i + 1; j < n.size(); ++j)
                    if (local_orientation(r[v], r[n[i]], r[n[j]], tol) == 0) ++count;
        }
        rep.collinear_adjacent_pairs = std::max(rep.collinear_adjacent_pairs, count);
    }
    for (auto& e : rep.zero_length_edges) rep.warnings.push_back("zero length on " + to_string(e));
    for (auto& [a, b] : rep.duplicate_length_pairs)
        rep.warnings.push_back("equal lengths on " + to_string(a) + " and " + to_string(b));
    if (rep.collinear_adjacent_pairs > 1)
        rep.warnings.push_back(std::to_string(rep.collinear_adjacent_pairs) + " collinear adjacent bar pairs in one realization");
    return rep;
}

// Replace every nontrivial cluster that meets the rest of the graph in exactly
// two vertices by a single virtual edge between them. The endpoints of f count
// as attachments.
inline Linkage normalize_clusters(const Linkage& lk, std::optional<Edge> f = std::nullopt) {
    auto clusters = cluster_decomposition(lk.graph);
    if (clusters.size() <= 1) return lk;
    auto charts = build_charts(lk, clusters);
    Linkage out = lk;
    for (std::size_t i = 0; i < clusters.size(); ++i) {
        const auto& cl = clusters[i];
        if (cl.trivial()) continue;
        std::vector<Vertex> attach;
        for (Vertex v : cl.vertices) {
            bool outside = f && f->contains(v);
            for (std::size_t j = 0; j < clusters.size(); ++j)
                if (j != i && clusters[j].contains(v)) outside = true;
            if (outside) attach.push_back(v);
        }
        if (attach.size() != 2) continue;
        for (const Edge& e : cl.edges) {
            out.graph.remove_edge(e);
            out.lengths.erase(e);
        }
        for (Vertex v : cl.vertices)
            if (v != attach[0] && v != attach[1]) {
                out.graph.remove_vertex(v);
                out.labels.erase(v);
            }
        Edge ve(attach[0], attach[1]);
        out.graph.add_edge(ve);
        out.lengths[ve] = charts[i].distance(attach[0], attach[1]);
        out.placements.erase(std::remove_if(out.placements.begin(), out.placements.end(),
                                            [&](const ClusterChart& c) { return c.vertices() == cl.vertices; }),
                             out.placements.end());
    }
    return out;
}

} // namespace caylink
