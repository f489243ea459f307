#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "graph.hpp"
#include "rigidity.hpp"

namespace caylink {

struct Cluster {
    std::set<Vertex> vertices;
    std::set<Edge> edges;

    bool trivial() const { return edges.size() == 1; }
    bool contains(Vertex v) const { return vertices.count(v) != 0; }
    bool operator==(const Cluster&) const = default;
};

struct MergeRecord {
    std::size_t first = 0;
    std::size_t second = 0;
    std::size_t third = 0;
    Vertex shared12 = 0;
    Vertex shared23 = 0;
    Vertex shared31 = 0;
};

struct MergeResult {
    std::vector<Cluster> components;
    std::vector<MergeRecord> trace;
};

namespace detail {

inline std::optional<Vertex> single_shared(const Cluster& a, const Cluster& b) {
    std::optional<Vertex> found;
    const auto& small = a.vertices.size() <= b.vertices.size() ? a.vertices : b.vertices;
    const auto& large = a.vertices.size() <= b.vertices.size() ? b.vertices : a.vertices;
    for (Vertex v : small) {
        if (!large.count(v)) continue;
        if (found) return std::nullopt;
        found = v;
    }
    return found;
}

inline bool cluster_less(const Cluster& a, const Cluster& b) {
    return *a.edges.begin() < *b.edges.begin();
}

} // namespace detail

// Start from one component per edge and repeatedly merge any three components
// that pairwise share exactly one vertex, the three shared vertices distinct.
inline MergeResult merge_components(const Graph& g) {
    MergeResult res;
    std::vector<Cluster> comps;
    for (const Edge& e : g.edges()) comps.push_back(Cluster{{e.a, e.b}, {e}});
    std::vector<bool> alive(comps.size(), true);
    std::map<Vertex, std::set<std::size_t>> at;
    for (std::size_t i = 0; i < comps.size(); ++i)
        for (Vertex v : comps[i].vertices) at[v].insert(i);

    auto find_triple = [&](std::size_t a, MergeRecord& rec) {
        for (Vertex x : comps[a].vertices) {
            for (std::size_t b : at[x]) {
                if (b == a) continue;
                auto sab = detail::single_shared(comps[a], comps[b]);
                if (!sab) continue;
                for (Vertex y : comps[b].vertices) {
                    if (y == x) continue;
                    for (std::size_t c : at[y]) {
                        if (c == a || c == b) continue;
                        auto sbc = detail::single_shared(comps[b], comps[c]);
                        if (!sbc || *sbc != y) continue;
                        auto sca = detail::single_shared(comps[c], comps[a]);
                        if (!sca || *sca == x || *sca == y) continue;
                        rec = MergeRecord{a, b, c, x, y, *sca};
                        return true;
                    }
                }
            }
        }
        return false;
    };

    bool merged = true;
    while (merged) {
        merged = false;
        for (std::size_t a = 0; a < comps.size() && !merged; ++a) {
            if (!alive[a]) continue;
            MergeRecord rec;
            if (!find_triple(a, rec)) continue;
            Cluster u = comps[rec.first];
            for (std::size_t j : {rec.second, rec.third}) {
                u.vertices.insert(comps[j].vertices.begin(), comps[j].vertices.end());
                u.edges.insert(comps[j].edges.begin(), comps[j].edges.end());
            }
            for (std::size_t j : {rec.first, rec.second, rec.third}) {
                alive[j] = false;
                for (Vertex v : comps[j].vertices) at[v].erase(j);
            }
            comps.push_back(std::move(u));
            alive.push_back(true);
            for (Vertex v : comps.back().vertices) at[v].insert(comps.size() - 1);
            res.trace.push_back(rec);
            merged = true;
        }
    }
    for (std::size_t i = 0; i < comps.size(); ++i)
        if (alive[i]) res.components.push_back(comps[i]);
    std::sort(res.components.begin(), res.components.end(), detail::cluster_less);
    return res;
}

inline bool is_tree_decomposable(const Graph& g) {
    if (g.edge_count() == 0) return false;
    auto res = merge_components(g);
    return res.components.size() == 1 && res.components[0].vertices == g.vertices();
}

// Maximal tree-decomposable subgraphs; every edge lies in exactly one.
inline std::vector<Cluster> cluster_decomposition(const Graph& g) {
    return merge_components(g).components;
}

struct ConstructionStep {
    int index = 0;       // 1-based
    Vertex vertex = 0;   // step vertex v_k
    Vertex u = 0;        // base pair (u_k, w_k)
    Vertex w = 0;
    int cluster_u = -1;  // index into ConstructionPlan::clusters, contains u and v
    int cluster_w = -1;  // contains w and v

    Edge base() const { return Edge(u, w); }
};

struct ConstructionPlan {
    Vertex v0 = 0;
    Vertex v0p = 0;
    std::vector<Cluster> clusters;
    std::vector<ConstructionStep> steps;
    // Step at which each vertex gets placed (0 for f's endpoints).
    std::map<Vertex, int> placed_at;

    Edge f() const { return Edge(v0, v0p); }
    std::size_t size() const { return steps.size(); }
    const ConstructionStep& step(int k) const { return steps.at(static_cast<std::size_t>(k - 1)); }

    // G_f(k): union of the clusters attached in steps 1..k, plus f's endpoints.
    Graph prefix_graph(int k) const {
        Graph g;
        g.add_vertex(v0);
        g.add_vertex(v0p);
        for (int i = 1; i <= k; ++i) {
            const auto& s = step(i);
            for (int c : {s.cluster_u, s.cluster_w}) {
                for (Vertex v : clusters[static_cast<std::size_t>(c)].vertices) g.add_vertex(v);
                for (const Edge& e : clusters[static_cast<std::size_t>(c)].edges) g.add_edge(e);
            }
        }
        return g;
    }

    // Steps that must precede step k (its base pair's placing steps, transitively), plus k.
    std::set<int> dependencies(int k) const {
        std::set<int> out;
        std::vector<int> todo{k};
        while (!todo.empty()) {
            int s = todo.back();
            todo.pop_back();
            if (s <= 0 || !out.insert(s).second) continue;
            todo.push_back(placed_at.at(step(s).u));
            todo.push_back(placed_at.at(step(s).w));
        }
        return out;
    }
};

namespace detail {

// Greedy plan over a fixed cluster list. Returns nullopt when it gets stuck.
inline std::optional<ConstructionPlan> greedy_plan(const std::vector<Cluster>& clusters, Vertex v0, Vertex v0p) {
    ConstructionPlan plan;
    plan.v0 = v0;
    plan.v0p = v0p;
    plan.clusters = clusters;
    plan.placed_at[v0] = 0;
    plan.placed_at[v0p] = 0;
    // Construction rank decides the order inside a base pair: the more recently
    // placed vertex comes first, and v0 ranks above v0'.
    std::map<Vertex, std::pair<int, int>> rank{{v0p, {0, 0}}, {v0, {0, 1}}};
    std::vector<bool> used(clusters.size(), false);
    std::size_t used_count = 0;

    while (used_count < clusters.size()) {
        std::map<Vertex, std::vector<std::pair<Vertex, int>>> options;
        for (std::size_t i = 0; i < clusters.size(); ++i) {
            if (used[i]) continue;
            std::vector<Vertex> meet;
            for (Vertex v : clusters[i].vertices)
                if (plan.placed_at.count(v)) meet.push_back(v);
            if (meet.size() != 1) continue;
            for (Vertex v : clusters[i].vertices)
                if (!plan.placed_at.count(v)) options[v].emplace_back(meet[0], static_cast<int>(i));
        }
        bool advanced = false;
        for (auto& [v, opts] : options) {
            std::sort(opts.begin(), opts.end());
            for (std::size_t i = 0; i < opts.size() && !advanced; ++i)
                for (std::size_t j = i + 1; j < opts.size() && !advanced; ++j) {
                    if (opts[i].first == opts[j].first) continue;
                    auto a = opts[i];
                    auto b = opts[j];
                    if (rank.at(a.first) < rank.at(b.first)) std::swap(a, b);
                    ConstructionStep s;
                    s.index = static_cast<int>(plan.steps.size()) + 1;
                    s.vertex = v;
                    s.u = a.first;
                    s.cluster_u = a.second;
                    s.w = b.first;
                    s.cluster_w = b.second;
                    for (int c : {s.cluster_u, s.cluster_w}) {
                        used[static_cast<std::size_t>(c)] = true;
                        ++used_count;
                        for (Vertex x : clusters[static_cast<std::size_t>(c)].vertices)
                            if (!plan.placed_at.count(x)) {
                                plan.placed_at[x] = s.index;
                                rank[x] = {s.index, x == v ? 1 : 0};
                            }
                    }
                    plan.steps.push_back(s);
                    advanced = true;
                }
            if (advanced) break;
        }
        if (!advanced) return std::nullopt;
    }
    return plan;
}

} // namespace detail

// Construction of g from the base non-edge f = (v0, v0'). Among eligible steps
// the one with the smallest step-vertex id is taken.
inline ConstructionPlan construction_plan(const Graph& g, Vertex v0, Vertex v0p) {
    if (v0 == v0p || !g.has_vertex(v0) || !g.has_vertex(v0p) || g.has_edge(v0, v0p))
        throw Error(ErrorKind::NotBaseNonEdge, to_string(Edge(v0, v0p)) + " is not a non-edge of the graph");
    if (g.edge_count() == 0) {
        if (g.vertex_count() == 2) return *detail::greedy_plan({}, v0, v0p);
        throw Error(ErrorKind::NotBaseNonEdge, "graph has isolated vertices");
    }
    auto clusters = cluster_decomposition(g);
    std::set<Vertex> covered;
    for (const auto& c : clusters) covered.insert(c.vertices.begin(), c.vertices.end());
    if (covered != g.vertices())
        throw Error(ErrorKind::NotBaseNonEdge, "graph has isolated vertices");
    if (clusters.size() == 1)
        throw Error(ErrorKind::NotOneDof, "graph is itself tree-decomposable (rigid)");
    if (!is_tree_decomposable(g.with_edge(Edge(v0, v0p))))
        throw Error(ErrorKind::NotBaseNonEdge, "G + " + to_string(Edge(v0, v0p)) + " is not tree-decomposable");
    auto plan = detail::greedy_plan(clusters, v0, v0p);
    if (!plan)
        throw Error(ErrorKind::NotBaseNonEdge, "no construction sequence from " + to_string(Edge(v0, v0p)));
    return *plan;
}

inline ConstructionPlan construction_plan(const Graph& g, const Edge& f) {
    return construction_plan(g, f.a, f.b);
}

struct ExtremeGraphSpec {
    int step = 0;
    Graph graph;        // G_f(k-1) + e_k
    Edge extreme_edge;  // e_k
    bool tree_decomposable = false;
    bool minimally_rigid = false;
    // Reverse construction of the extreme graph from e_k (present iff tree-decomposable).
    std::optional<ConstructionPlan> reverse_plan;
};

inline ExtremeGraphSpec extreme_graph(const ConstructionPlan& plan, int k) {
    if (k < 1 || k > static_cast<int>(plan.size()))
        throw Error(ErrorKind::DomainError, "step index out of range: " + std::to_string(k));
    const auto& s = plan.step(k);
    ExtremeGraphSpec spec;
    spec.step = k;
    spec.extreme_edge = s.base();
    Graph prefix = plan.prefix_graph(k - 1);
    spec.graph = prefix.with_edge(s.base());
    spec.tree_decomposable = is_tree_decomposable(spec.graph);
    spec.minimally_rigid = is_minimally_rigid(spec.graph);
    if (spec.tree_decomposable) {
        // The reverse construction rebuilds G_f(k-1) from e_k, keeping G's clusters
        // so that cluster charts stay addressable.
        std::vector<Cluster> used;
        for (int i = 1; i < k; ++i)
            for (int c : {plan.step(i).cluster_u, plan.step(i).cluster_w}) {
                const auto& cl = plan.clusters[static_cast<std::size_t>(c)];
                if (std::find(used.begin(), used.end(), cl) == used.end()) used.push_back(cl);
            }
        std::sort(used.begin(), used.end(), detail::cluster_less);
        Vertex a = s.u;
        Vertex b = s.w;
        spec.reverse_plan = detail::greedy_plan(used, a, b);
        if (spec.reverse_plan) {
            std::set<Vertex> placed;
            for (auto& [v, st] : spec.reverse_plan->placed_at) placed.insert(v);
            if (placed != prefix.vertices()) spec.reverse_plan.reset();
        }
    }
    return spec;
}

struct LowCayleyReport {
    bool low = true;
    std::optional<int> failing_step;
};

inline LowCayleyReport has_low_cayley_complexity(const ConstructionPlan& plan) {
    for (int k = 1; k <= static_cast<int>(plan.size()); ++k) {
        auto spec = extreme_graph(plan, k);
        if (!spec.tree_decomposable || !spec.reverse_plan) return {false, k};
    }
    return {true, std::nullopt};
}

inline LowCayleyReport has_low_cayley_complexity(const Graph& g, const Edge& f) {
    return has_low_cayley_complexity(construction_plan(g, f));
}

// One sub-plan per last-level vertex other than f's endpoints.
struct PathInfo {
    Vertex last_vertex = 0;
    std::vector<int> steps;  // original step indices, ascending
    Graph graph;
};

struct PathDecomposition {
    std::set<Vertex> last_level;
    bool one_path = false;
    std::vector<PathInfo> paths;
};

inline std::map<Vertex, std::vector<int>> clusters_at(const std::vector<Cluster>& clusters) {
    std::map<Vertex, std::vector<int>> at;
    for (std::size_t i = 0; i < clusters.size(); ++i)
        for (Vertex v : clusters[i].vertices) at[v].push_back(static_cast<int>(i));
    return at;
}

// v is in the last level when exactly two clusters contain it and each of them
// meets the rest of the graph in one vertex besides v. A vertex counts as part
// of the rest when another cluster holds it or it is an endpoint of f; pendant
// vertices private to the cluster do not.
inline std::set<Vertex> last_level(const std::vector<Cluster>& clusters, const std::set<Vertex>& f_ends = {}) {
    auto at = clusters_at(clusters);
    std::set<Vertex> out;
    for (auto& [v, cs] : at) {
        if (cs.size() != 2) continue;
        bool ok = true;
        for (int c : cs) {
            int shared = 0;
            for (Vertex x : clusters[static_cast<std::size_t>(c)].vertices) {
                if (x == v) continue;
                if (f_ends.count(x) || at[x].size() > 1) ++shared;
            }
            if (shared != 1) ok = false;
        }
        if (ok) out.insert(v);
    }
    return out;
}

inline PathDecomposition last_level_and_paths(const ConstructionPlan& plan) {
    PathDecomposition out;
    out.last_level = last_level(plan.clusters, {plan.v0, plan.v0p});
    for (Vertex v : out.last_level) {
        if (v == plan.v0 || v == plan.v0p) continue;
        int k = plan.placed_at.at(v);
        auto deps = plan.dependencies(k);
        PathInfo p;
        p.last_vertex = v;
        p.steps.assign(deps.begin(), deps.end());
        p.graph.add_vertex(plan.v0);
        p.graph.add_vertex(plan.v0p);
        for (int s : p.steps)
            for (int c : {plan.step(s).cluster_u, plan.step(s).cluster_w})
                for (const Edge& e : plan.clusters[static_cast<std::size_t>(c)].edges) p.graph.add_edge(e);
        out.paths.push_back(std::move(p));
    }
    out.one_path = out.paths.size() == 1;
    return out;
}

} // namespace caylink
