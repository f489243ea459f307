#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "caylink/decomposition.hpp"
#include "caylink/fixture.hpp"
#include "caylink/rigidity.hpp"

using namespace caylink;

namespace {

Graph make_graph(std::initializer_list<std::pair<Vertex, Vertex>> edges) {
    Graph g;
    for (auto [a, b] : edges) g.add_edge(a, b);
    return g;
}

Graph k4() { return make_graph({{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}); }

Graph prism() {
    return make_graph({{1, 2}, {2, 3}, {1, 3}, {4, 5}, {5, 6}, {4, 6}, {1, 4}, {2, 5}, {3, 6}});
}

Graph four_cycle() { return make_graph({{1, 2}, {2, 3}, {3, 4}, {4, 1}}); }

// Laman count checked on every vertex subset.
bool laman_by_subsets(const Graph& g) {
    std::vector<Vertex> vs(g.vertices().begin(), g.vertices().end());
    const std::size_t n = vs.size();
    if (g.edge_count() != 2 * n - 3) return false;
    for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
        std::set<Vertex> sub;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) sub.insert(vs[i]);
        if (sub.size() < 2) continue;
        std::size_t e = 0;
        for (const Edge& x : g.edges())
            if (sub.count(x.a) && sub.count(x.b)) ++e;
        if (e > 2 * sub.size() - 3) return false;
    }
    return true;
}

// Random graph built by vertex additions of degree two onto (1,2), then with
// the seed edge removed: a 1-dof candidate with f = (1,2).
Graph random_henneberg(std::mt19937& rng, int n) {
    Graph g;
    g.add_vertex(1);
    g.add_vertex(2);
    for (Vertex v = 3; v <= n; ++v) {
        std::uniform_int_distribution<int> pick(1, v - 1);
        int a = pick(rng), b;
        do b = pick(rng);
        while (b == a);
        g.add_edge(v, a);
        g.add_edge(v, b);
    }
    return g;
}

} // namespace

TEST(TreeDecomposable, SmallGraphs) {
    EXPECT_FALSE(is_tree_decomposable(k4()));
    EXPECT_FALSE(is_tree_decomposable(prism()));
    EXPECT_TRUE(is_tree_decomposable(make_graph({{1, 2}, {2, 3}, {1, 3}})));
    EXPECT_TRUE(is_tree_decomposable(four_cycle().with_edge(Edge(1, 3))));
    EXPECT_FALSE(is_tree_decomposable(four_cycle()));
}

TEST(ClusterDecomposition, FourCycleStaysAsEdges) {
    auto cs = cluster_decomposition(four_cycle());
    ASSERT_EQ(cs.size(), 4u);
    for (const auto& c : cs) EXPECT_TRUE(c.trivial());
}

TEST(ClusterDecomposition, DiagonalMergesEverything) {
    auto cs = cluster_decomposition(four_cycle().with_edge(Edge(1, 3)));
    ASSERT_EQ(cs.size(), 1u);
    EXPECT_EQ(cs[0].vertices.size(), 4u);
    EXPECT_EQ(cs[0].edges.size(), 5u);
}

TEST(ClusterDecomposition, TrianglesSharingOneVertex) {
    auto cs = cluster_decomposition(make_graph({{1, 2}, {2, 3}, {1, 3}, {3, 4}, {4, 5}, {3, 5}}));
    ASSERT_EQ(cs.size(), 2u);
    for (const auto& c : cs) EXPECT_EQ(c.vertices.size(), 3u);
}

TEST(ClusterDecomposition, InvariantUnderRelabelling) {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        Graph g = random_henneberg(rng, 8);
        auto base = cluster_decomposition(g);
        std::set<std::set<Edge>> want;
        for (const auto& c : base) want.insert(c.edges);
        for (int perm = 0; perm < 100; ++perm) {
            std::vector<Vertex> ids(g.vertex_count());
            std::iota(ids.begin(), ids.end(), 1);
            std::shuffle(ids.begin(), ids.end(), rng);
            std::map<Vertex, Vertex> fwd, back;
            Vertex i = 0;
            for (Vertex v : g.vertices()) {
                fwd[v] = ids[static_cast<std::size_t>(i)] * 7 + 3;
                back[fwd[v]] = v;
                ++i;
            }
            Graph h;
            for (const Edge& e : g.edges()) h.add_edge(fwd[e.a], fwd[e.b]);
            std::set<std::set<Edge>> got;
            for (const auto& c : cluster_decomposition(h)) {
                std::set<Edge> es;
                for (const Edge& e : c.edges) es.insert(Edge(back[e.a], back[e.b]));
                got.insert(es);
            }
            ASSERT_EQ(got, want);
        }
    }
}

TEST(Rigidity, MinimalRigidity) {
    EXPECT_TRUE(is_minimally_rigid(make_graph({{1, 2}, {2, 3}, {1, 3}})));
    EXPECT_FALSE(is_minimally_rigid(k4()));
    EXPECT_TRUE(is_minimally_rigid(prism()));
    EXPECT_TRUE(laman_by_subsets(prism()));
    EXPECT_FALSE(is_minimally_rigid(four_cycle()));
}

TEST(Rigidity, GlobalRigidity) {
    EXPECT_TRUE(is_globally_rigid(k4()));
    EXPECT_FALSE(is_globally_rigid(four_cycle()));
    EXPECT_FALSE(is_globally_rigid(prism()));
    EXPECT_TRUE(is_redundantly_rigid(k4()));
    EXPECT_FALSE(is_redundantly_rigid(prism()));
    EXPECT_TRUE(is_globally_rigid(make_graph({{1, 2}, {2, 3}, {1, 3}})));
    EXPECT_FALSE(is_globally_rigid(make_graph({{1, 2}, {2, 3}})));
}

TEST(Rigidity, TwoSeparatorsOfFourCycle) {
    auto seps = two_separators(four_cycle());
    std::set<std::pair<Vertex, Vertex>> got(seps.begin(), seps.end());
    EXPECT_TRUE(got.count({1, 3}));
    EXPECT_TRUE(got.count({2, 4}));
    EXPECT_FALSE(is_3_connected(four_cycle()));
    EXPECT_TRUE(is_3_connected(k4()));
}

// Tree-decomposable graphs are Laman graphs; the pebble game agrees with the
// subset count on random small graphs.
TEST(Rigidity, LamanConsistencyOnRandomGraphs) {
    std::mt19937 rng(3);
    int td = 0;
    for (int trial = 0; trial < 300; ++trial) {
        int n = 3 + trial % 8;
        Graph g;
        for (Vertex v = 1; v <= n; ++v) g.add_vertex(v);
        std::bernoulli_distribution coin(0.45);
        for (Vertex a = 1; a <= n; ++a)
            for (Vertex b = a + 1; b <= n; ++b)
                if (coin(rng)) g.add_edge(a, b);
        EXPECT_EQ(is_minimally_rigid(g), laman_by_subsets(g));
        if (is_tree_decomposable(g)) {
            ++td;
            EXPECT_TRUE(laman_by_subsets(g));
        }
        Graph h = random_henneberg(rng, n).with_edge(Edge(1, 2));
        EXPECT_TRUE(is_tree_decomposable(h));
        EXPECT_TRUE(laman_by_subsets(h));
    }
    EXPECT_GT(td, 0);
}

TEST(ConstructionPlan, PathOfTwoBars) {
    auto p = construction_plan(make_graph({{1, 2}, {2, 3}}), 1, 3);
    ASSERT_EQ(p.size(), 1u);
    EXPECT_EQ(p.step(1).vertex, 2);
    EXPECT_EQ(p.step(1).base(), Edge(1, 3));
}

TEST(ConstructionPlan, FourCycleOrdersByVertexId) {
    auto p = construction_plan(four_cycle(), 1, 3);
    ASSERT_EQ(p.size(), 2u);
    EXPECT_EQ(p.step(1).vertex, 2);
    EXPECT_EQ(p.step(2).vertex, 4);
    EXPECT_EQ(p.step(1).base(), Edge(1, 3));
    EXPECT_EQ(p.step(2).base(), Edge(1, 3));
}

TEST(ConstructionPlan, NestedQuadrilaterals) {
    auto fx = nested_quad_fixture(4);
    auto p = construction_plan(fx.linkage.graph, fx.f);
    ASSERT_EQ(p.size(), 5u);
    // Both first steps hang on f; smallest id first.
    EXPECT_EQ(p.step(1).vertex, 2);
    EXPECT_EQ(p.step(2).vertex, 4);
    EXPECT_EQ(p.step(1).base(), Edge(1, 3));
    EXPECT_EQ(p.step(2).base(), Edge(1, 3));
    for (int k = 2; k <= 4; ++k) {
        EXPECT_EQ(p.step(k + 1).vertex, k + 3);
        EXPECT_EQ(p.step(k + 1).base(), Edge(k + 2, k));
    }
}

TEST(ConstructionPlan, Errors) {
    try {
        construction_plan(k4(), 1, 2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotBaseNonEdge);
    }
    try {
        construction_plan(four_cycle().with_edge(Edge(1, 3)), 2, 4);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotOneDof);
    }
    // Two disjoint bars: adding f does not make it rigid.
    try {
        construction_plan(make_graph({{1, 2}, {3, 4}}), 1, 3);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotBaseNonEdge);
    }
}

TEST(ConstructionPlan, SoundnessOnRandomGraphs) {
    std::mt19937 rng(5);
    int checked = 0;
    for (int trial = 0; trial < 200; ++trial) {
        Graph g = random_henneberg(rng, 4 + trial % 6);
        ConstructionPlan p;
        try {
            p = construction_plan(g, 1, 2);
        } catch (const Error&) {
            continue;
        }
        ++checked;
        Graph full = g.with_edge(Edge(1, 2));
        EXPECT_EQ(full.edge_count(), 2 * full.vertex_count() - 3);
        // Replaying the steps rebuilds G.
        Graph replay = p.prefix_graph(static_cast<int>(p.size()));
        EXPECT_EQ(replay.edges(), g.edges());
        EXPECT_EQ(replay.vertices(), g.vertices());
        for (int k = 1; k <= static_cast<int>(p.size()); ++k) EXPECT_TRUE(extreme_graph(p, k).minimally_rigid);
        // Paths cover V.
        auto pd = last_level_and_paths(p);
        std::set<Vertex> cover{p.v0, p.v0p};
        for (const auto& path : pd.paths) cover.insert(path.graph.vertices().begin(), path.graph.vertices().end());
        EXPECT_EQ(cover, g.vertices());
    }
    EXPECT_GT(checked, 100);
}

TEST(ExtremeGraph, NestedQuadStepThree) {
    auto fx = nested_quad_fixture(3);
    auto p = construction_plan(fx.linkage.graph, fx.f);
    auto s = extreme_graph(p, 3);
    EXPECT_EQ(s.extreme_edge, Edge(2, 4));
    Graph want = make_graph({{1, 2}, {2, 3}, {3, 4}, {4, 1}, {1, 3}, {2, 4}});
    // G_f(2) carries f as an isolated pair; the extreme graph adds (v2,v4) only.
    EXPECT_EQ(s.graph.vertices(), want.vertices());
    EXPECT_EQ(s.graph.with_edge(Edge(1, 3)).edges(), want.edges());
    EXPECT_TRUE(s.tree_decomposable);
}

TEST(ExtremeGraph, SingleStepIsTriangleBase) {
    auto p = construction_plan(make_graph({{1, 2}, {2, 3}}), 1, 3);
    auto s = extreme_graph(p, 1);
    EXPECT_EQ(s.extreme_edge, Edge(1, 3));
    EXPECT_TRUE(s.tree_decomposable);
    EXPECT_THROW(extreme_graph(p, 2), Error);
}

TEST(LowCayleyComplexity, Examples) {
    auto fx = nested_quad_fixture(5);
    EXPECT_TRUE(has_low_cayley_complexity(fx.linkage.graph, fx.f).low);
    EXPECT_TRUE(has_low_cayley_complexity(make_graph({{1, 2}, {2, 3}}), Edge(1, 3)).low);

    // Found by searching small graphs: the third extreme graph is a prism.
    Graph g = make_graph({{1, 3}, {1, 5}, {1, 6}, {2, 3}, {2, 4}, {2, 5}, {3, 4}, {4, 7}, {5, 6}, {6, 7}});
    auto r = has_low_cayley_complexity(g, Edge(1, 2));
    EXPECT_FALSE(r.low);
    ASSERT_TRUE(r.failing_step);
    EXPECT_EQ(*r.failing_step, 3);
    auto s = extreme_graph(construction_plan(g, Edge(1, 2)), 3);
    EXPECT_EQ(s.graph.vertex_count(), 6u);
    EXPECT_EQ(s.graph.edge_count(), 9u);
    for (Vertex v : s.graph.vertices()) EXPECT_EQ(s.graph.neighbors(v).size(), 3u);
    EXPECT_TRUE(s.minimally_rigid);
    EXPECT_FALSE(s.tree_decomposable);
    EXPECT_FALSE(is_globally_rigid(s.graph));
}

TEST(LastLevel, Examples) {
    auto fx = nested_quad_fixture(4);
    auto pd = last_level_and_paths(construction_plan(fx.linkage.graph, fx.f));
    EXPECT_TRUE(pd.one_path);
    ASSERT_EQ(pd.paths.size(), 1u);
    EXPECT_EQ(pd.paths[0].last_vertex, 7);

    auto single = last_level_and_paths(construction_plan(make_graph({{1, 2}, {2, 3}}), 1, 3));
    EXPECT_TRUE(single.one_path);
    EXPECT_EQ(single.paths[0].last_vertex, 2);

    // Two steps hanging independently on f.
    auto two = last_level_and_paths(construction_plan(four_cycle(), 1, 3));
    EXPECT_FALSE(two.one_path);
    EXPECT_EQ(two.paths.size(), 2u);
}
