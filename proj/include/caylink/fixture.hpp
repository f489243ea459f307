#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "linkage.hpp"
#include "numeric.hpp"

namespace caylink {

struct NestedQuadOptions {
    int k = 2;            // last construction step in the fixture's own 0-based numbering
    double eps = 1e-5;
    double q1[4] = {8, 8.1, 7.9, 1};  // |v4v3|, |v3v2|, |v2v1|, |v1v4|
};

struct NestedQuadFixture {
    Linkage linkage;
    Edge f;
    std::vector<double> eps_used;  // per added quadrilateral, k = 2.. in order
};

namespace detail {

template <class Real>
BasicPoint<Real> apex(const BasicPoint<Real>& p0, const BasicPoint<Real>& p2, const Real& r1, const Real& r2, int s) {
    using std::sqrt;
    Real R3 = dist(p0, p2);
    Real x = (r1 * r1 + R3 * R3 - r2 * r2) / (2 * R3);
    Real h2 = r1 * r1 - x * x;
    if (h2 < 0) h2 = 0;
    Real y = sqrt(h2) * s;
    BasicPoint<Real> ex = (p2 - p0) * (Real(1) / R3);
    BasicPoint<Real> ey{-ex.y, ex.x};
    return p0 + ex * x + ey * y;
}

// Quadrilateral P0P1P2P3 with sides a = P0P1, b = P1P2, c = P2P3, d = P3P0 and
// diagonal |P0P2| = D; returns |P1P3| with P1 and P3 on the chosen sides.
template <class Real>
Real quad_other_diagonal(const Real& a, const Real& b, const Real& c, const Real& d, const Real& D, bool same) {
    BasicPoint<Real> p0{0, 0}, p2{D, 0};
    auto p1 = apex(p0, p2, a, b, 1);
    auto p3 = apex(p0, p2, d, c, same ? 1 : -1);
    return dist(p1, p3);
}

} // namespace detail

// Nested quadrilaterals: Q_k = v_{k+3} v_{k+2} v_{k+1} v_k shares the diagonal
// (v_{k+2}, v_k) with Q_{k-1}. New side lengths straddle the range [l1, l2]
// of that diagonal with a relative margin eps. When eps would make the short
// side negative it is reduced for that quadrilateral only.
template <class Real = hp_real>
NestedQuadFixture nested_quad_fixture(const NestedQuadOptions& opt) {
    using std::abs;
    if (opt.k < 1) throw Error(ErrorKind::DomainError, "nested-quads fixture needs k >= 1");
    std::map<Edge, Real> L;
    auto set = [&](Vertex u, Vertex v, const Real& l) { L[Edge(u, v)] = l; };
    set(4, 3, Real(opt.q1[0]));
    set(3, 2, Real(opt.q1[1]));
    set(2, 1, Real(opt.q1[2]));
    set(4, 1, Real(opt.q1[3]));
    NestedQuadFixture fx;
    for (int k = 2; k <= opt.k; ++k) {
        Vertex P[4] = {k + 2, k + 1, k, k - 1};
        auto g = [&](int i, int j) { return L.at(Edge(P[i], P[j])); };
        Real a = g(0, 1), b = g(1, 2), c = g(2, 3), d = g(3, 0);
        // Diagonal (v_{k+1}, v_{k-1}) ranges over its triangle interval.
        Real lo = std::max(abs(b - c), abs(d - a)), hi = std::min(b + c, d + a);
        Real l2 = std::min(a + b, c + d);
        Real l1 = std::max(detail::quad_other_diagonal(b, c, d, a, lo, true),
                           detail::quad_other_diagonal(b, c, d, a, hi, true));
        Real ek = std::min(Real(opt.eps), (l2 - l1) / (2 * (l2 + l1)));
        Real s1 = ((1 + ek) * l1 + (1 - ek) * l2) / 2;
        Real s4 = ((1 - ek) * l2 - (1 + ek) * l1) / 2;
        set(k + 3, k + 2, s1);
        set(k, k + 3, s4);
        fx.eps_used.push_back(to_double(ek));
    }
    for (auto& [e, l] : L) {
        fx.linkage.graph.add_edge(e);
        fx.linkage.lengths[e] = to_double(l);
    }
    for (Vertex v : fx.linkage.graph.vertices()) fx.linkage.labels[v] = "v" + std::to_string(v);
    fx.f = Edge(1, 3);
    return fx;
}

inline NestedQuadFixture nested_quad_fixture(int k, double eps = 1e-5) {
    NestedQuadOptions o;
    o.k = k;
    o.eps = eps;
    return nested_quad_fixture<hp_real>(o);
}

// Plain quadrilateral with base non-edge (1,3): two steps on f.
inline Linkage quadrilateral(double s12, double s23, double s34, double s41) {
    Linkage lk;
    auto e = [&](Vertex u, Vertex v, double l) {
        lk.graph.add_edge(u, v);
        lk.lengths[Edge(u, v)] = l;
    };
    e(1, 2, s12);
    e(2, 3, s23);
    e(3, 4, s34);
    e(4, 1, s41);
    return lk;
}

inline Linkage triangle_linkage(double r1, double r2) {
    Linkage lk;
    lk.graph.add_edge(1, 2);
    lk.graph.add_edge(2, 3);
    lk.lengths[Edge(1, 2)] = r1;
    lk.lengths[Edge(2, 3)] = r2;
    return lk;
}

// Random chain in the nested-quadrilateral family: each new vertex attaches to
// the latest vertex and to one of the two vertices before it, with random
// lengths, and optionally a rigid triangle in place of one of its bars.
struct RandomChainOptions {
    int steps = 4;
    double triangle_probability = 0.25;
};

inline Linkage random_chain(std::mt19937_64& rng, const RandomChainOptions& opt) {
    std::uniform_real_distribution<double> len(1.0, 3.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Linkage lk;
    Vertex next = 100;
    auto bar = [&](Vertex u, Vertex v) {
        if (unit(rng) < opt.triangle_probability) {
            // Rigid triangle u, v, x realizing the bar as a cluster.
            Vertex x = next++;
            double a = len(rng), b = len(rng), c = len(rng);
            double lo = std::abs(a - b) + 0.2, hi = a + b - 0.2;
            c = lo + (hi - lo) * unit(rng);
            lk.graph.add_edge(u, v);
            lk.lengths[Edge(u, v)] = c;
            lk.graph.add_edge(u, x);
            lk.lengths[Edge(u, x)] = a;
            lk.graph.add_edge(v, x);
            lk.lengths[Edge(v, x)] = b;
        } else {
            lk.graph.add_edge(u, v);
            lk.lengths[Edge(u, v)] = len(rng);
        }
    };
    // v1, v3 base; v2, v4 on it; then v_{k} attaches to v_{k-1} and v_{k-3} or v_{k-2}.
    bar(1, 2);
    bar(2, 3);
    bar(3, 4);
    bar(4, 1);
    std::vector<Vertex> order{1, 3, 2, 4};
    for (int s = 3; s <= opt.steps; ++s) {
        Vertex v = static_cast<Vertex>(s + 2);
        Vertex u = order.back();
        Vertex w = order[order.size() - 2];
        if (unit(rng) < 0.5 && order.size() >= 3) w = order[order.size() - 3];
        bar(u, v);
        bar(w, v);
        order.push_back(v);
    }
    return lk;
}


// f = (1,2). Step 3 attaches rigid triangles {1,3,4} and {2,3,5}; step 6 hangs
// on (4,5), a pair straddling the hinge at 3.
struct HingeLengths {
    double a13 = 2.0, a14 = 1.5, a34 = 1.8;
    double b23 = 2.2, b25 = 1.4, b35 = 1.7;
    double r46 = 1.6, r56 = 1.9;
};

inline Linkage hinge_linkage(const HingeLengths& h = {}) {
    Linkage lk;
    auto e = [&](Vertex u, Vertex v, double l) {
        lk.graph.add_edge(u, v);
        lk.lengths[Edge(u, v)] = l;
    };
    e(1, 3, h.a13);
    e(1, 4, h.a14);
    e(3, 4, h.a34);
    e(2, 3, h.b23);
    e(2, 5, h.b25);
    e(3, 5, h.b35);
    e(4, 6, h.r46);
    e(5, 6, h.r56);
    return lk;
}

// f = (1,2). Step 3 attaches triangle {1,3,5} and bar (2,3); step 4 attaches
// bars (1,4), (2,4); step 6 hangs on (5,4), a pair hinged at the end 1 of f.
struct CornerLengths {
    double a13 = 2.0, a15 = 1.2, a35 = 1.5;
    double b23 = 2.1, b14 = 1.7, b24 = 1.9;
    double r56 = 1.3, r46 = 1.6;
};

inline Linkage corner_linkage(const CornerLengths& c = {}) {
    Linkage lk;
    auto e = [&](Vertex u, Vertex v, double l) {
        lk.graph.add_edge(u, v);
        lk.lengths[Edge(u, v)] = l;
    };
    e(1, 3, c.a13);
    e(1, 5, c.a15);
    e(3, 5, c.a35);
    e(2, 3, c.b23);
    e(1, 4, c.b14);
    e(2, 4, c.b24);
    e(5, 6, c.r56);
    e(4, 6, c.r46);
    return lk;
}

} // namespace caylink
