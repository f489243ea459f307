#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "caylink/elr.hpp"
#include "caylink/fixture.hpp"
#include "caylink/qim.hpp"
#include "support/samples.hpp"

using namespace caylink;
using namespace caylink::samples;

namespace {

Instance nested(int k) {
    auto fx = nested_quad_fixture(k);
    return make_instance(fx.linkage, fx.f);
}

} // namespace

TEST(Elr, TriangleIsOneInterval) {
    auto inst = make_instance(triangle_linkage(3, 4.5), Edge(1, 3));
    for (int s : {1, -1}) {
        auto os = elr(inst, {s});
        ASSERT_EQ(os.set.size(), 1u);
        EXPECT_NEAR(os.set[0].lo, 1.5, 1e-12);
        EXPECT_NEAR(os.set[0].hi, 7.5, 1e-12);
    }
    auto cs = elr_full(inst);
    EXPECT_EQ(cs.by_type.size(), 2u);
    EXPECT_EQ(cs.all.size(), 1u);
}

TEST(Elr, ExampleTwoIntervals) {
    auto inst = nested(2);
    for (const ForwardType& sigma : {ForwardType{1, -1, 1}, ForwardType{-1, 1, -1}}) {
        auto os = elr(inst, sigma);
        ASSERT_EQ(os.set.size(), 2u);
        EXPECT_NEAR(os.set[0].lo, 7.00, 0.01);
        EXPECT_NEAR(os.set[0].hi, 7.49, 0.01);
        EXPECT_NEAR(os.set[1].lo, 7.51, 0.01);
        EXPECT_NEAR(os.set[1].hi, 8.52, 0.01);
        // Candidates from the wrong prefix are kept as dead ends.
        EXPECT_FALSE(os.dead_ends.empty());
        for (const auto& e : os.endpoints) EXPECT_GE(e.step, 1);
    }
    auto cs = elr_full(inst);
    ASSERT_EQ(cs.all.size(), 2u);
    EXPECT_NEAR(cs.all[0].lo, 7.00, 0.01);
    EXPECT_NEAR(cs.all[1].hi, 8.52, 0.01);
}

TEST(Elr, FourIntervalsAfterFourthStep) {
    auto cs = elr_full(nested(3));
    ASSERT_EQ(cs.all.size(), 4u);
    const double want[4][2] = {{7.000, 7.008}, {7.010, 7.121}, {8.039, 8.391}, {8.403, 8.524}};
    for (int i = 0; i < 4; ++i) {
        EXPECT_NEAR(cs.all[static_cast<std::size_t>(i)].lo, want[i][0], 0.05);
        EXPECT_NEAR(cs.all[static_cast<std::size_t>(i)].hi, want[i][1], 0.05);
    }
}

TEST(Elr, EmptyWhenStepsCannotAgree) {
    // v2 forces l_f <= 2 while v4 forces l_f >= 4.99.
    auto inst = make_instance(quadrilateral(1, 1, 5, 0.01), Edge(1, 3));
    auto cs = elr_full(inst);
    EXPECT_TRUE(cs.all.empty());
    for (int i = 1; i < 2000; ++i)
        for (const auto& sigma : all_forward_types(2)) EXPECT_FALSE(try_realize(inst, i * 0.005, sigma));
}

TEST(Elr, BudgetCap) {
    try {
        all_forward_types(17);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::BudgetExceeded);
    }
    EXPECT_EQ(all_forward_types(3).size(), 8u);
}

TEST(Update, ThreeCases) {
    auto yes = [](double) { return true; };
    auto no = [](double) { return false; };
    auto left_only = [](double x) { return x < 5; };
    // Interior point of a known interval: nothing changes.
    IntervalSet known(3, 7);
    EXPECT_EQ(update(known, 5, 3.0, 7.0, yes), known);
    // One side realizable: l0 becomes an endpoint.
    auto one = update(IntervalSet(), 5, 3.0, 7.0, left_only);
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(one[0].lo, 3);
    EXPECT_EQ(one[0].hi, 5);
    // Neither side: isolated point.
    auto iso = update(IntervalSet(), 5, 3.0, 7.0, no);
    ASSERT_EQ(iso.size(), 1u);
    EXPECT_TRUE(iso[0].isolated());
    EXPECT_EQ(iso[0].lo, 5);
    // Neighbours found from the set itself.
    auto auto_nb = update(IntervalSet(1, 3), 5, left_only);
    ASSERT_EQ(auto_nb.size(), 1u);
    EXPECT_EQ(auto_nb[0].hi, 5);
}

TEST(Fixture, NestedQuadLengths) {
    auto k2 = nested_quad_fixture(2).linkage;
    EXPECT_NEAR(k2.lengths.at(Edge(5, 4)), 8.632, 0.001);
    EXPECT_NEAR(k2.lengths.at(Edge(2, 5)), 0.268, 0.001);
    auto k3 = nested_quad_fixture(3).linkage;
    EXPECT_NEAR(k3.lengths.at(Edge(6, 5)), 8.306, 0.001);
    EXPECT_NEAR(k3.lengths.at(Edge(3, 6)), 0.062, 0.001);
    // Earlier lengths do not change when the fixture grows.
    EXPECT_EQ(k3.lengths.at(Edge(5, 4)), k2.lengths.at(Edge(5, 4)));
    EXPECT_THROW(nested_quad_fixture(0), Error);
}

TEST(Qim, MatchesElrOnExample) {
    auto inst = nested(2);
    auto q = to_double_set(qim<hp_real>(inst));
    EXPECT_TRUE(same_sets(q, elr_full(inst).all, 1e-6));
    ForwardType sigma{1, -1, 1};
    auto qf = qim<double>(inst, QimMode::full_type(sigma));
    EXPECT_TRUE(same_sets(qf, elr(inst, sigma).set, 1e-6));
}

TEST(Qim, ReverseSignPicksOneInterval) {
    auto inst = nested(2);
    auto ch = build_qim_chain<double>(inst);
    auto keys = ch.reverse_keys(inst.plan);
    ASSERT_FALSE(keys.empty());
    ForwardType sigma{1, -1, 1};
    auto full = elr(inst, sigma).set;
    ASSERT_EQ(full.size(), 2u);
    std::set<int> hit;
    for (double lf : {7.2, 8.0}) {
        auto r = realize(inst, lf, sigma);
        auto rho = reverse_signs_of(r, keys);
        auto s = qim<double>(inst, QimMode::minimal_type(sigma, rho));
        ASSERT_EQ(s.size(), 1u);
        EXPECT_TRUE(s.contains(lf));
        int a = full.locate(s[0].lo, 1e-6), b = full.locate(s[0].hi, 1e-6);
        EXPECT_EQ(a, b);
        hit.insert(a);
    }
    EXPECT_EQ(hit, (std::set<int>{0, 1}));
}

TEST(Qim, IntervalCountDoublesPerStep) {
    for (int k = 2; k <= 7; ++k) {
        auto inst = nested(k);
        ForwardType sigma(inst.steps(), 1);
        sigma[1] = -1;
        auto s = qim<hp_real>(inst, QimMode::full_type(sigma));
        EXPECT_EQ(s.size(), std::size_t(1) << (k - 1)) << "k = " << k;
    }
}

TEST(Qim, RequiresOnePath) {
    auto inst = make_instance(quadrilateral(2, 3, 2.5, 1.5), Edge(1, 3));
    try {
        qim<double>(inst);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotOnePath);
    }
}

TEST(Qim, AgreesWithElrOnRandomChains) {
    auto insts = random_instances(31, 20, 8);
    ASSERT_GE(insts.size(), 15u);
    for (const auto& inst : insts) {
        auto q = to_double_set(qim<hp_real>(inst));
        auto e = elr_full(inst).all;
        EXPECT_TRUE(same_sets(q, e, 1e-6)) << to_string(q) << " vs " << to_string(e);
    }
}

// Every minimal type gives at most one interval, and that interval is
// exactly where realizations of the type exist.
TEST(Qim, MinimalTypeIsOneIntervalAndMatchesSampling) {
    std::vector<Instance> insts;
    insts.push_back(nested(2));
    insts.push_back(nested(3));
    for (auto& i : random_instances(32, 6, 5)) insts.push_back(std::move(i));
    for (const auto& inst : insts) {
        auto cs = elr_full(inst);
        auto keys = build_qim_chain<double>(inst).reverse_keys(inst.plan);
        double lo = cs.all[0].lo, hi = cs.all[cs.all.size() - 1].hi;
        double tol = 1e-6 * std::max(1.0, hi);
        std::set<std::pair<ForwardType, SignMap>> seen;
        for (const auto& [sigma, os] : cs.by_type)
            for (const auto& iv : os.set)
                for (double t : {0.3, 0.7}) {
                    double lf = iv.lo + t * iv.width();
                    auto rho = reverse_signs_of(realize(inst, lf, sigma), keys);
                    if (!seen.insert({sigma, rho}).second) continue;
                    auto s = qim<double>(inst, QimMode::minimal_type(sigma, rho));
                    ASSERT_LE(s.size(), 1u);
                    ASSERT_EQ(s.size(), 1u);
                    EXPECT_TRUE(s.contains(lf, tol));
                    for (int i = 0; i <= 400; ++i) {
                        double x = lo + (hi - lo) * i / 400;
                        if (distance_to_endpoint(s, x) < tol) continue;
                        EXPECT_EQ(s.contains(x), has_minimal_type(inst, keys, sigma, rho, x)) << x;
                    }
                }
    }
}

TEST(QimMultipath, TwoChainsOnOneBase) {
    // Two copies of the example chain hung on f = (1,3); the second copy has
    // slightly different first sides so the intervals differ.
    auto a = nested_quad_fixture(2).linkage;
    NestedQuadOptions o;
    o.k = 2;
    o.q1[0] = 8.05;
    o.q1[1] = 8.1;
    o.q1[2] = 7.9;
    o.q1[3] = 1.02;
    auto b = nested_quad_fixture<hp_real>(o).linkage;
    std::map<Vertex, Vertex> rename{{1, 1}, {3, 3}, {2, 12}, {4, 14}, {5, 15}};
    Linkage lk = a;
    for (const Edge& e : b.graph.edges()) {
        Edge r(rename[e.a], rename[e.b]);
        lk.graph.add_edge(r);
        lk.lengths[r] = b.lengths.at(e);
    }
    auto inst = make_instance(lk, Edge(1, 3));
    auto pd = last_level_and_paths(inst.plan);
    ASSERT_EQ(pd.paths.size(), 2u);

    // Reverse triples of each path's chain.
    std::vector<TripleKey> keys;
    for (const auto& p : pd.paths) {
        Linkage sub;
        sub.graph = p.graph;
        for (const Edge& e : p.graph.edges()) sub.lengths[e] = lk.lengths.at(e);
        auto si = make_instance(sub, Edge(1, 3));
        for (auto& k : build_qim_chain<double>(si).reverse_keys(si.plan)) keys.push_back(k);
    }

    auto cs = elr_full(inst);
    ASSERT_FALSE(cs.all.empty());
    int checked = 0;
    std::set<std::pair<ForwardType, SignMap>> seen;
    for (const auto& [sigma, os] : cs.by_type)
        for (const auto& iv : os.set) {
            double lf = iv.mid();
            auto rho = reverse_signs_of(realize(inst, lf, sigma), keys);
            if (!seen.insert({sigma, rho}).second) continue;
            auto s = qim_multipath<double>(inst, QimMode::minimal_type(sigma, rho));
            ASSERT_EQ(s.size(), 1u);
            EXPECT_TRUE(s.contains(lf, 1e-6));
            for (int i = 0; i <= 300; ++i) {
                double x = 6.9 + 1.8 * i / 300;
                if (distance_to_endpoint(s, x) < 1e-6 * 9) continue;
                EXPECT_EQ(s.contains(x), has_minimal_type(inst, keys, sigma, rho, x));
            }
            ++checked;
        }
    EXPECT_GT(checked, 4);

    // Mixing a low-interval type on one path with a high one on the other.
    ForwardType sigma = cs.by_type.begin()->first;
    auto low = reverse_signs_of(realize(inst, 7.2, sigma), keys);
    auto high = reverse_signs_of(realize(inst, 8.2, sigma), keys);
    SignMap mixed;
    for (std::size_t i = 0; i < keys.size(); ++i) mixed[keys[i]] = i < keys.size() / 2 ? low[keys[i]] : high[keys[i]];
    auto empty = qim_multipath<double>(inst, QimMode::minimal_type(sigma, mixed));
    EXPECT_TRUE(empty.empty());
    for (int i = 0; i <= 300; ++i) EXPECT_FALSE(has_minimal_type(inst, keys, sigma, mixed, 6.9 + 1.8 * i / 300));
}

TEST(QimMultipath, OnePathEqualsQim) {
    auto inst = nested(3);
    auto keys = build_qim_chain<double>(inst).reverse_keys(inst.plan);
    ForwardType sigma{1, -1, 1, -1};
    auto os = elr(inst, sigma);
    ASSERT_FALSE(os.set.empty());
    auto rho = reverse_signs_of(realize(inst, os.set[0].mid(), sigma), keys);
    auto mode = QimMode::minimal_type(sigma, rho);
    EXPECT_TRUE(same_sets(qim_multipath<double>(inst, mode), qim<double>(inst, mode), 1e-12));
}

// Realizability at dense samples matches membership away from endpoints.
TEST(CayleySpace, MembershipMatchesRealizability) {
    std::vector<Instance> insts;
    insts.push_back(nested(2));
    insts.push_back(make_instance(triangle_linkage(2, 3.5), Edge(1, 3)));
    for (auto& i : random_instances(33, 5, 6)) insts.push_back(std::move(i));
    for (const auto& inst : insts) {
        auto cs = elr_full(inst);
        double lo = cs.all[0].lo, hi = cs.all[cs.all.size() - 1].hi;
        double pad = 0.05 * (hi - lo);
        for (const auto& sigma : all_forward_types(inst.steps())) {
            auto it = cs.by_type.find(sigma);
            IntervalSet s = it == cs.by_type.end() ? IntervalSet() : it->second.set;
            for (int i = 0; i < 1000; ++i) {
                double x = lo - pad + (hi - lo + 2 * pad) * i / 999;
                if (x <= 0 || distance_to_endpoint(s, x) < 1e-6 * std::max(1.0, x)) continue;
                EXPECT_EQ(s.contains(x), try_realize(inst, x, sigma).has_value()) << type_to_string(sigma) << " " << x;
            }
        }
    }
}

// Endpoints come from extreme linkages, and accepted extreme linkages land on
// endpoints.
TEST(CayleySpace, EndpointProvenance) {
    std::vector<Instance> insts;
    insts.push_back(nested(2));
    insts.push_back(nested(3));
    for (auto& i : random_instances(34, 5, 6)) insts.push_back(std::move(i));
    for (const auto& inst : insts) {
        auto cat = build_extreme_catalog(inst);
        auto cs = elr_full(inst);
        for (const auto& [sigma, os] : cs.by_type) {
            for (const auto& iv : os.set)
                for (double x : {iv.lo, iv.hi}) {
                    bool from_extreme = false;
                    for (const auto& e : cat.entries) from_extreme |= std::abs(e.lf - x) <= 1e-6 * std::max(1.0, x);
                    EXPECT_TRUE(from_extreme) << x;
                }
            for (const auto& e : os.endpoints) EXPECT_LE(distance_to_endpoint(os.set, e.value), 1e-6 * std::max(1.0, e.value));
        }
    }
}

// Under one minimal type each base-pair length moves monotonically with l_f.
TEST(CayleySpace, BasePairLengthsMonotoneUnderMinimalType) {
    for (int k : {2, 3}) {
        auto inst = nested(k);
        auto keys = build_qim_chain<double>(inst).reverse_keys(inst.plan);
        auto cs = elr_full(inst);
        for (const auto& [sigma, os] : cs.by_type)
            for (const auto& iv : os.set) {
                auto rho = reverse_signs_of(realize(inst, iv.mid(), sigma), keys);
                auto s = qim<double>(inst, QimMode::minimal_type(sigma, rho));
                ASSERT_EQ(s.size(), 1u);
                for (const auto& st : inst.plan.steps) {
                    int dir = 0;
                    double prev = NAN;
                    for (int i = 1; i < 2000; ++i) {
                        double x = s[0].lo + s[0].width() * i / 2000;
                        auto r = try_realize(inst, x, sigma);
                        if (!r) continue;
                        double d = r->distance(st.u, st.w);
                        if (!std::isnan(prev) && std::abs(d - prev) > 1e-12) {
                            int sd = d > prev ? 1 : -1;
                            if (dir == 0) dir = sd;
                            EXPECT_EQ(sd, dir);
                        }
                        prev = d;
                    }
                }
            }
    }
}
