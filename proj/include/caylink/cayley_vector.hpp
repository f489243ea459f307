#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "decomposition.hpp"
#include "motion.hpp"
#include "rigidity.hpp"

namespace caylink {

struct CompleteCayleyVector {
    std::vector<Edge> entries;  // entries[0] is f
    std::vector<std::string> notes;

    std::size_t size() const { return entries.size(); }
};

struct CayleyCurvePoint {
    std::vector<double> distances;
    ForwardType sigma;
    int component = 0;
    double lf = 0;
};

namespace detail {

inline Graph plan_graph(const ConstructionPlan& plan) {
    Graph g;
    g.add_vertex(plan.v0);
    g.add_vertex(plan.v0p);
    for (const auto& c : plan.clusters)
        for (const Edge& e : c.edges) g.add_edge(e);
    return g;
}

// Clusters are taken to be globally rigid, so each one is replaced by the
// complete graph on its vertices before any connectivity or rigidity test.
inline Graph completed_clusters(const ConstructionPlan& plan) {
    Graph g = plan_graph(plan);
    for (const auto& c : plan.clusters) {
        if (c.trivial()) continue;
        std::vector<Vertex> vs(c.vertices.begin(), c.vertices.end());
        for (std::size_t i = 0; i < vs.size(); ++i)
            for (std::size_t j = i + 1; j < vs.size(); ++j) g.add_edge(vs[i], vs[j]);
    }
    return g;
}

inline std::vector<Vertex> last_level_vertices(const ConstructionPlan& plan) {
    std::vector<Vertex> out;
    for (const auto& p : last_level_and_paths(plan).paths) out.push_back(p.last_vertex);
    std::sort(out.begin(), out.end());
    return out;
}

// True when the last-level vertex v cannot be built from f without first
// placing x.
inline bool depends_on(const ConstructionPlan& plan, Vertex v, Vertex x) {
    if (x == plan.v0 || x == plan.v0p) return true;
    auto deps = plan.dependencies(plan.placed_at.at(v));
    return deps.count(plan.placed_at.at(x)) != 0;
}

} // namespace detail

inline Graph certification_graph(const ConstructionPlan& plan, const CompleteCayleyVector& F) {
    Graph g = detail::completed_clusters(plan);
    for (const Edge& e : F.entries) g.add_edge(e);
    return g;
}

inline bool certifies_global_rigidity(const ConstructionPlan& plan, const CompleteCayleyVector& F) {
    return is_globally_rigid(certification_graph(plan, F));
}

inline CompleteCayleyVector minimum_ccv_1path(const ConstructionPlan& plan) {
    auto pd = last_level_and_paths(plan);
    if (!pd.one_path) throw Error(ErrorKind::NotOnePath, std::to_string(pd.paths.size()) + " last-level paths");
    CompleteCayleyVector F;
    F.entries.push_back(plan.f());
    if (plan.size() == 1) return F;
    Vertex vn = pd.paths.front().last_vertex;
    Graph g = detail::plan_graph(plan);
    if (!g.has_edge(plan.v0, vn)) F.entries.emplace_back(plan.v0, vn);
    else F.entries.emplace_back(plan.v0p, vn);
    return F;
}

// The three-phase completion. Where a choice is arbitrary the lowest vertex
// ids win.
inline CompleteCayleyVector minimal_ccv_general(const ConstructionPlan& plan) {
    CompleteCayleyVector F;
    const Graph g = detail::plan_graph(plan);
    Graph h = detail::completed_clusters(plan);
    const Vertex v0 = plan.v0, v0p = plan.v0p;
    const auto last = detail::last_level_vertices(plan);
    std::set<Vertex> remaining(last.begin(), last.end());

    auto add = [&](Vertex a, Vertex b) {
        F.entries.emplace_back(a, b);
        h.add_edge(a, b);
        remaining.erase(a);
        remaining.erase(b);
    };

    F.entries.push_back(plan.f());
    h.add_edge(plan.f());

    // Phase 1: split f as a separator by pairing last-level vertices that it
    // separates.
    for (;;) {
        Graph cut = h.without_vertices({v0, v0p});
        if (cut.vertex_count() == 0 || is_connected(cut)) break;
        auto comps = connected_components(cut);
        std::vector<Vertex> reps;
        for (const auto& c : comps)
            for (Vertex v : last)
                if (c.count(v)) {
                    reps.push_back(v);
                    break;
                }
        if (reps.size() < 2) {
            F.notes.push_back("f separates the graph but fewer than two sides hold last-level vertices");
            break;
        }
        add(reps[0], reps[1]);
    }

    // Phase 2: every last-level vertex receives one added edge.
    while (!remaining.empty()) {
        if (remaining.size() >= 2) {
            auto it = remaining.begin();
            Vertex a = *it++;
            Vertex b = *it;
            add(a, b);
            continue;
        }
        Vertex vk = *remaining.begin();
        if (!g.has_edge(v0, vk) && !h.has_edge(v0, vk)) {
            add(v0, vk);
        } else if (!g.has_edge(v0p, vk) && !h.has_edge(v0p, vk)) {
            add(v0p, vk);
        } else {
            auto other = std::find_if(last.begin(), last.end(), [&](Vertex v) { return v != vk; });
            if (other == last.end()) {
                F.notes.push_back("no partner for last-level vertex " + std::to_string(vk));
                remaining.erase(vk);
            } else {
                add(vk, *other);
            }
        }
    }

    // Phase 3: remove remaining 2-separators.
    for (std::size_t guard = 0; guard < 4 * g.vertex_count() && !is_3_connected(h); ++guard) {
        auto seps = two_separators(h);
        if (seps.empty()) break;
        auto [vm, vn] = seps.front();
        bool added = false;
        for (Vertex vk : last) {
            if (!detail::depends_on(plan, vk, vm) || !detail::depends_on(plan, vk, vn)) continue;
            Edge e = !g.has_edge(v0, vk) ? Edge(v0, vk) : Edge(v0p, vk);
            if (h.has_edge(e) || e.a == e.b) continue;
            add(e.a, e.b);
            added = true;
            break;
        }
        if (!added) {
            F.notes.push_back("separator " + to_string(Edge(vm, vn)) + " has no dependent last-level vertex to anchor");
            break;
        }
    }
    return F;
}

// Removing any single entry must break global rigidity. For the general
// vector the paper allows the alternative that F without f is minimal.
inline bool is_minimal_completion(const ConstructionPlan& plan, const CompleteCayleyVector& F) {
    if (!certifies_global_rigidity(plan, F)) return false;
    for (std::size_t i = 0; i < F.size(); ++i) {
        CompleteCayleyVector G;
        for (std::size_t j = 0; j < F.size(); ++j)
            if (j != i) G.entries.push_back(F.entries[j]);
        if (certifies_global_rigidity(plan, G)) return false;
    }
    return true;
}

inline bool satisfies_minimality_either_or(const ConstructionPlan& plan, const CompleteCayleyVector& F) {
    if (is_minimal_completion(plan, F)) return true;
    CompleteCayleyVector rest;
    rest.entries.assign(F.entries.begin() + 1, F.entries.end());
    return is_minimal_completion(plan, rest);
}

inline std::vector<double> cayley_distance_vector(const Realization& r, const CompleteCayleyVector& F) {
    std::vector<double> out;
    for (const Edge& e : F.entries) out.push_back(r.distance(e.a, e.b));
    return out;
}

// Component ids over the oriented intervals of a space, joined through
// endpoint adjacency.
inline std::map<std::pair<ForwardType, int>, int> interval_components(const CayleySpace& space, double tol) {
    std::vector<std::pair<ForwardType, int>> nodes;
    std::map<std::pair<ForwardType, int>, std::size_t> index;
    for (const auto& [sigma, os] : space.by_type)
        for (std::size_t i = 0; i < os.set.size(); ++i) {
            index[{sigma, static_cast<int>(i)}] = nodes.size();
            nodes.emplace_back(sigma, static_cast<int>(i));
        }
    std::vector<std::size_t> parent(nodes.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (std::size_t n = 0; n < nodes.size(); ++n) {
        const auto& [sigma, i] = nodes[n];
        const auto& iv = space.by_type.at(sigma).set[static_cast<std::size_t>(i)];
        for (End e : {End::Lo, End::Hi})
            if (auto adj = adjacent_interval(space, sigma, iv, e, tol))
                parent[find(n)] = find(index.at({adj->sigma, adj->index}));
    }
    std::map<std::size_t, int> label;
    std::map<std::pair<ForwardType, int>, int> out;
    for (std::size_t n = 0; n < nodes.size(); ++n) {
        auto root = find(n);
        auto it = label.emplace(root, static_cast<int>(label.size())).first;
        out[nodes[n]] = it->second;
    }
    return out;
}

inline std::vector<CayleyCurvePoint> sample_cayley_curve(const Instance& inst, const CayleySpace& space,
                                                         const CompleteCayleyVector& F, int resolution) {
    if (resolution < 1) throw Error(ErrorKind::DomainError, "resolution must be positive");
    double tol = space_tolerance(inst);
    auto comp = interval_components(space, tol);
    std::vector<CayleyCurvePoint> out;
    for (const auto& [sigma, os] : space.by_type)
        for (std::size_t i = 0; i < os.set.size(); ++i) {
            const auto& iv = os.set[i];
            int n = iv.isolated() ? 1 : resolution;
            for (int j = 0; j < n; ++j) {
                double t = n == 1 ? 0.5 : static_cast<double>(j) / (n - 1);
                double lf = iv.lo + t * (iv.hi - iv.lo);
                auto r = detail::realize_near(inst, lf, sigma, t < 0.5 ? 1 : -1);
                out.push_back({cayley_distance_vector(r, F), sigma, comp.at({sigma, static_cast<int>(i)}), lf});
            }
        }
    std::stable_sort(out.begin(), out.end(), [](const CayleyCurvePoint& a, const CayleyCurvePoint& b) {
        return a.component < b.component;
    });
    return out;
}

struct InjectivityReport {
    bool pass = true;
    std::size_t points = 0;
    std::size_t collisions = 0;  // distinct realizations with equal vectors
    double worst_vector_gap = 0;  // smallest vector gap among distinct realizations
};

namespace detail {

// Canonical frame is already fixed by realize(); reflect so that the first
// nonzero orientation measured on the realization is positive. Entries that
// are zero at a fold do not count.
inline Realization reflect_normalized(const Realization& r, const ForwardType& sigma) {
    int s = 0;
    for (int x : sigma)
        if (x != 0) {
            s = x;
            break;
        }
    if (s >= 0) return r;
    Realization m = r;
    for (auto& [v, p] : m.points) p.y = -p.y;
    return m;
}

inline double realization_gap(const Realization& a, const Realization& b) {
    double g = 0;
    for (auto& [v, p] : a.points) g = std::max(g, dist(p, b[v]));
    return g;
}

} // namespace detail

// Pairwise scan: two samples whose F-vectors agree within vec_tol must be the
// same realization within cart_tol.
inline InjectivityReport injectivity_probe(const Instance& inst, const CayleySpace& space, const CompleteCayleyVector& F,
                                           int resolution, double vec_tol = 1e-9, double cart_tol = 1e-3) {
    struct Sample {
        std::vector<double> v;
        Realization r;
    };
    std::vector<Sample> samples;
    const double sqrt_tol = std::sqrt(space_tolerance(inst));
    for (const auto& [sigma, os] : space.by_type)
        for (const auto& iv : os.set) {
            int n = iv.isolated() ? 1 : resolution;
            for (int j = 0; j < n; ++j) {
                double t = n == 1 ? 0.5 : static_cast<double>(j) / (n - 1);
                double lf = iv.lo + t * (iv.hi - iv.lo);
                auto r = detail::realize_near(inst, lf, sigma, t < 0.5 ? 1 : -1);
                samples.push_back({cayley_distance_vector(r, F), detail::reflect_normalized(r, forward_type_of(r, inst.plan, sqrt_tol))});
            }
        }
    std::sort(samples.begin(), samples.end(), [](const Sample& a, const Sample& b) { return a.v[0] < b.v[0]; });
    InjectivityReport rep;
    rep.points = samples.size();
    rep.worst_vector_gap = INFINITY;
    for (std::size_t i = 0; i < samples.size(); ++i)
        for (std::size_t j = i + 1; j < samples.size() && samples[j].v[0] - samples[i].v[0] <= vec_tol; ++j) {
            double vg = 0;
            for (std::size_t c = 0; c < F.size(); ++c) vg = std::max(vg, std::abs(samples[i].v[c] - samples[j].v[c]));
            if (vg > vec_tol) continue;
            if (detail::realization_gap(samples[i].r, samples[j].r) > cart_tol) {
                ++rep.collisions;
                rep.pass = false;
                rep.worst_vector_gap = std::min(rep.worst_vector_gap, vg);
            }
        }
    return rep;
}

} // namespace caylink
