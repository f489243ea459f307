#include <gtest/gtest.h>

#include <random>

#include "caylink/cayley_vector.hpp"
#include "caylink/fixture.hpp"
#include "support/motion_oracle.hpp"

using namespace caylink;

namespace {

struct Case {
    std::string name;
    Instance inst;
};

Instance normalized(const Linkage& lk, Edge f) { return make_instance(normalize_clusters(lk, f), f); }

std::vector<Case> fixtures() {
    std::vector<Case> out;
    for (int k = 1; k <= 4; ++k) {
        auto fx = nested_quad_fixture(k);
        out.push_back({"nested" + std::to_string(k), normalized(fx.linkage, fx.f)});
    }
    out.push_back({"triangle", normalized(triangle_linkage(3, 4), Edge(1, 3))});
    out.push_back({"crank", normalized(quadrilateral(2, 5, 4, 4.5), Edge(1, 3))});
    out.push_back({"hinge", normalized(hinge_linkage(), Edge(1, 2))});
    out.push_back({"corner", normalized(corner_linkage(), Edge(1, 2))});
    std::mt19937_64 rng(9);
    for (int t = 0; t < 8; ++t) {
        RandomChainOptions o;
        o.steps = 2 + t % 4;
        o.triangle_probability = 0.3;
        try {
            out.push_back({"chain" + std::to_string(t), normalized(random_chain(rng, o), Edge(1, 3))});
        } catch (const Error&) {
        }
    }
    return out;
}

std::vector<Edge> edges(std::initializer_list<std::pair<Vertex, Vertex>> es) {
    std::vector<Edge> out;
    for (auto [a, b] : es) out.emplace_back(a, b);
    return out;
}

} // namespace

TEST(Ccv, OnePathExample) {
    auto fx = nested_quad_fixture(2);
    auto inst = normalized(fx.linkage, fx.f);
    auto F = minimum_ccv_1path(inst.plan);
    EXPECT_EQ(F.entries, edges({{1, 3}, {1, 5}}));
    EXPECT_EQ(minimal_ccv_general(inst.plan).entries, F.entries);
}

TEST(Ccv, FourCycleNeedsTheOtherDiagonal) {
    auto inst = normalized(quadrilateral(2, 5, 4, 4.5), Edge(1, 3));
    EXPECT_THROW(minimum_ccv_1path(inst.plan), Error);
    try {
        minimum_ccv_1path(inst.plan);
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotOnePath);
    }
    auto F = minimal_ccv_general(inst.plan);
    EXPECT_EQ(F.entries, edges({{1, 3}, {2, 4}}));
    EXPECT_TRUE(certifies_global_rigidity(inst.plan, F));
}

TEST(Ccv, TriangleIsJustTheBase) {
    auto inst = normalized(triangle_linkage(3, 4), Edge(1, 3));
    EXPECT_EQ(minimum_ccv_1path(inst.plan).entries, edges({{1, 3}}));
    auto g = minimal_ccv_general(inst.plan);
    EXPECT_EQ(g.entries, edges({{1, 3}}));
    EXPECT_FALSE(g.notes.empty());
}

TEST(Ccv, ShortVectorsDoNotCertify) {
    auto fx = nested_quad_fixture(2);
    auto inst = normalized(fx.linkage, fx.f);
    CompleteCayleyVector only_f{edges({{1, 3}}), {}};
    EXPECT_FALSE(certifies_global_rigidity(inst.plan, only_f));
    // A redundant extra entry breaks minimality but not certification.
    auto F = minimum_ccv_1path(inst.plan);
    auto padded = F;
    padded.entries.push_back(Edge(2, 5));
    EXPECT_TRUE(certifies_global_rigidity(inst.plan, padded));
    EXPECT_FALSE(is_minimal_completion(inst.plan, padded));
}

TEST(Ccv, PropertiesOnFixtures) {
    for (const auto& fc : fixtures()) {
        const auto& inst = fc.inst;
        auto pd = last_level_and_paths(inst.plan);
        std::vector<CompleteCayleyVector> Fs{minimal_ccv_general(inst.plan)};
        if (pd.one_path) {
            Fs.push_back(minimum_ccv_1path(inst.plan));
            // One extra entry per last-level path at most.
            EXPECT_LE(Fs.back().size(), 2u) << fc.name;
        }
        for (const auto& F : Fs) {
            ASSERT_FALSE(F.entries.empty());
            EXPECT_EQ(F.entries[0], inst.f()) << fc.name;
            EXPECT_TRUE(certifies_global_rigidity(inst.plan, F)) << fc.name;
            EXPECT_TRUE(is_minimal_completion(inst.plan, F)) << fc.name;
            EXPECT_TRUE(satisfies_minimality_either_or(inst.plan, F)) << fc.name;
        }
    }
}

// Distinct realizations on the whole configuration space never share a
// vector of Cayley distances.
TEST(Ccv, InjectiveOnSampledSpace) {
    for (const auto& fc : fixtures()) {
        const auto& inst = fc.inst;
        auto cs = elr_full(inst);
        auto F = minimal_ccv_general(inst.plan);
        auto rep = injectivity_probe(inst, cs, F, 150);
        EXPECT_TRUE(rep.pass) << fc.name << " collisions " << rep.collisions;
        EXPECT_GT(rep.points, 0u);
    }
}

// Dropping the completing entry makes the map non-injective: both forward
// types of the last step share l_f.
TEST(Ccv, BaseAloneIsNotInjective) {
    auto fx = nested_quad_fixture(2);
    auto inst = normalized(fx.linkage, fx.f);
    auto cs = elr_full(inst);
    CompleteCayleyVector only_f{edges({{1, 3}}), {}};
    EXPECT_FALSE(injectivity_probe(inst, cs, only_f, 50).pass);
}

TEST(Ccv, DistanceVector) {
    auto fx = nested_quad_fixture(2);
    auto inst = normalized(fx.linkage, fx.f);
    auto r = realize(inst, 7.2, {1, -1, 1});
    auto v = cayley_distance_vector(r, minimum_ccv_1path(inst.plan));
    ASSERT_EQ(v.size(), 2u);
    EXPECT_NEAR(v[0], 7.2, 1e-9);
    EXPECT_NEAR(v[1], r.distance(1, 5), 1e-12);
}

// Two oriented intervals share a component exactly when the grid finds a
// motion between them.
TEST(Components, MatchConnectivityOracle) {
    for (const auto& fc : fixtures()) {
        const auto& inst = fc.inst;
        if (inst.steps() > 3) continue;
        auto cs = elr_full(inst);
        if (cs.all.empty()) continue;
        auto comp = interval_components(cs, space_tolerance(inst));
        double lo = cs.all[0].lo, hi = cs.all[cs.all.size() - 1].hi, pad = 0.01 * (hi - lo);
        oracle::MotionGrid grid(inst, lo - pad, hi + pad, 4001, 1e-4 * (hi + 1));
        auto mid = [&](const std::pair<ForwardType, int>& key) {
            const auto& iv = cs.by_type.at(key.first).set[key.second];
            return MotionState{key.first, iv.lo + 0.5 * iv.width()};
        };
        for (const auto& [a, ca] : comp)
            for (const auto& [b, cb] : comp) {
                auto c = grid.connected(mid(a), mid(b));
                ASSERT_TRUE(c) << fc.name;
                EXPECT_EQ(ca == cb, *c) << fc.name;
            }
    }
}

TEST(Components, ExampleCounts) {
    auto fx = nested_quad_fixture(2);
    auto inst = normalized(fx.linkage, fx.f);
    auto cs = elr_full(inst);
    std::set<int> ids;
    for (const auto& [k, v] : interval_components(cs, space_tolerance(inst))) ids.insert(v);
    EXPECT_EQ(ids.size(), 4u);

    auto tri = normalized(triangle_linkage(3, 4), Edge(1, 3));
    ids.clear();
    for (const auto& [k, v] : interval_components(elr_full(tri), space_tolerance(tri))) ids.insert(v);
    EXPECT_EQ(ids.size(), 1u);
}

TEST(Curve, SamplesAreGroupedAndConsistent) {
    auto fx = nested_quad_fixture(2);
    auto inst = normalized(fx.linkage, fx.f);
    auto cs = elr_full(inst);
    auto F = minimum_ccv_1path(inst.plan);
    auto pts = sample_cayley_curve(inst, cs, F, 40);
    std::size_t intervals = 0;
    for (const auto& [s, os] : cs.by_type) intervals += os.set.size();
    EXPECT_EQ(pts.size(), intervals * 40);
    for (std::size_t i = 1; i < pts.size(); ++i) EXPECT_LE(pts[i - 1].component, pts[i].component);
    for (const auto& p : pts) {
        ASSERT_EQ(p.distances.size(), F.size());
        EXPECT_NEAR(p.distances[0], p.lf, 1e-9);
        EXPECT_TRUE(cs.by_type.at(p.sigma).set.contains(p.lf, 1e-9));
    }
    EXPECT_THROW(sample_cayley_curve(inst, cs, F, 0), Error);
}

// Within one interval the curve is continuous: refining the sampling shrinks
// the largest jump between consecutive samples.
TEST(Curve, ContinuousWithinIntervals) {
    auto fx = nested_quad_fixture(2);
    auto inst = normalized(fx.linkage, fx.f);
    auto cs = elr_full(inst);
    auto F = minimum_ccv_1path(inst.plan);
    auto jump = [&](int n) {
        auto pts = sample_cayley_curve(inst, cs, F, n);
        double j = 0;
        for (std::size_t i = 1; i < pts.size(); ++i)
            if (pts[i].sigma == pts[i - 1].sigma && pts[i].lf > pts[i - 1].lf &&
                cs.by_type.at(pts[i].sigma).set.locate(pts[i].lf) == cs.by_type.at(pts[i].sigma).set.locate(pts[i - 1].lf))
                j = std::max(j, std::abs(pts[i].distances[1] - pts[i - 1].distances[1]));
        return j;
    };
    double j1 = jump(20), j2 = jump(320);
    EXPECT_LT(j2, j1 / 3);
}
