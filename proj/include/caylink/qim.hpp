#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "decomposition.hpp"
#include "interval.hpp"
#include "linkage.hpp"
#include "quad_curve.hpp"

namespace caylink {

// Orientation of a vertex triple, stored under the sorted triple with the
// permutation parity folded into the sign.
using TripleKey = std::array<Vertex, 3>;
using SignMap = std::map<TripleKey, int>;

inline std::pair<TripleKey, int> triple_key(Vertex x, Vertex y, Vertex z, int sign) {
    TripleKey t{x, y, z};
    int parity = 1;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j + 1 < 3 - i; ++j)
            if (t[j] > t[j + 1]) {
                std::swap(t[j], t[j + 1]);
                parity = -parity;
            }
    return {t, sign * parity};
}

inline std::string to_string(const TripleKey& t) {
    return "(" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]) + ")";
}

inline bool consistent(const SignMap& a, const SignMap& b) {
    const SignMap& small = a.size() <= b.size() ? a : b;
    const SignMap& large = a.size() <= b.size() ? b : a;
    for (auto& [k, s] : small) {
        auto it = large.find(k);
        if (it != large.end() && it->second != 0 && s != 0 && it->second != s) return false;
    }
    return true;
}

inline SignMap forward_sign_map(const ConstructionPlan& plan, const ForwardType& sigma) {
    if (sigma.size() != plan.size()) throw Error(ErrorKind::DomainError, "forward type length does not match the plan");
    SignMap m;
    for (const auto& s : plan.steps) {
        int sg = sigma[static_cast<std::size_t>(s.index - 1)];
        if (sg == 0) continue;
        auto [k, v] = triple_key(s.u, s.w, s.vertex, sg);
        m[k] = v;
    }
    return m;
}

enum class LinkKind { Conic, Chord };

inline std::string to_string(LinkKind k) { return k == LinkKind::Conic ? "conic" : "chord"; }

// One monotone piece of a link: on [lo, hi] of the source pair's length the
// target pair's length is a monotone function, and the listed triples keep
// their orientation.
template <class Real>
struct LinkPiece {
    Real lo, hi;
    int branch = 1;  // conic: +1 same side, -1 opposite; chord: orientation of (p, a, b)
    SignMap label;
};

template <class Real>
struct Link {
    LinkKind kind = LinkKind::Conic;
    Edge from, to;
    // conic: quadrilateral a-c-b-d with from = (a,b), to = (c,d)
    // chord: corner p, a,c rigid with p and b,d rigid with p
    Vertex a = 0, b = 0, c = 0, d = 0, p = 0;
    std::optional<BasicQuadCurve<Real>> curve;
    std::optional<BasicQuadCurve<Real>> back;  // curve with the diagonals exchanged
    Real pa{0}, pb{0}, pc{0}, pd{0}, beta{0};
    std::vector<LinkPiece<Real>> pieces;
    Real tol{0};

    Real theta_of(const Real& D) const {
        using std::acos;
        Real cs = (pa * pa + pb * pb - D * D) / (2 * pa * pb);
        return acos(std::clamp(cs, Real(-1), Real(1)));
    }

    Real D_of_theta(const Real& th) const {
        using std::cos;
        using std::sqrt;
        Real sq = pa * pa + pb * pb - 2 * pa * pb * cos(th);
        return sqrt(sq < 0 ? Real(0) : sq);
    }

    Real chord_of_theta(const Real& th, int eps) const {
        using std::cos;
        using std::sqrt;
        Real sq = pc * pc + pd * pd - 2 * pc * pd * cos(eps * th + beta);
        return sqrt(sq < 0 ? Real(0) : sq);
    }

    std::optional<Real> eval(const LinkPiece<Real>& pc_, const Real& D) const {
        if (kind == LinkKind::Conic) return curve->e2_at(D, pc_.branch, tol);
        return chord_of_theta(theta_of(D), pc_.branch);
    }

    // Source length on the piece whose image is val (val within the piece's image).
    Real invert(const LinkPiece<Real>& pc_, const Real& val, const Real& g_lo, const Real& g_hi) const {
        using std::abs;
        if (val == g_lo) return pc_.lo;
        if (val == g_hi) return pc_.hi;
        if (kind == LinkKind::Conic) {
            std::optional<Real> best;
            Real best_err{0};
            for (int br : {1, -1}) {
                auto x = back->e2_at(val, br, tol);
                if (!x) continue;
                Real span = pc_.hi - pc_.lo;
                if (*x < pc_.lo - span * Real(1e-6) - tol || *x > pc_.hi + span * Real(1e-6) + tol) continue;
                Real xc = std::clamp(*x, pc_.lo, pc_.hi);
                auto y = curve->e2_at(xc, pc_.branch, tol);
                if (!y) continue;
                Real err = abs(*y - val);
                if (!best || err < best_err) {
                    best = xc;
                    best_err = err;
                }
            }
            if (best) return *best;
        }
        // Bisection on the monotone piece.
        Real lo = pc_.lo, hi = pc_.hi;
        bool inc = g_hi > g_lo;
        int iters = std::numeric_limits<Real>::digits + 8;
        for (int i = 0; i < iters; ++i) {
            Real m = (lo + hi) / 2;
            auto y = eval(pc_, m);
            if (!y) break;
            if ((*y < val) == inc) lo = m;
            else hi = m;
        }
        return (lo + hi) / 2;
    }

    // Preimage of a set of target lengths under one piece.
    void preimage(const LinkPiece<Real>& pc_, const BasicIntervalSet<Real>& S, std::vector<BasicInterval<Real>>& out) const {
        auto ga = eval(pc_, pc_.lo);
        auto gb = eval(pc_, pc_.hi);
        if (!ga || !gb) return;
        Real gmin = std::min(*ga, *gb), gmax = std::max(*ga, *gb);
        for (const auto& iv : S) {
            if (iv.hi < gmin || iv.lo > gmax) continue;
            Real v0 = std::max(iv.lo, gmin), v1 = std::min(iv.hi, gmax);
            Real x0 = invert(pc_, v0, *ga, *gb), x1 = invert(pc_, v1, *ga, *gb);
            out.push_back({std::min(x0, x1), std::max(x0, x1)});
        }
    }
};

template <class Real>
struct QimChain {
    std::vector<Edge> pairs;          // base pairs pi_0 = f, ..., pi_M
    std::vector<bool> virtual_pair;   // inserted between two base pairs, no step of its own
    std::vector<BasicIntervalSet<Real>> ranges;  // triangle ranges of the steps on each pair
    std::vector<Link<Real>> links;    // links[j] maps pairs[j] -> pairs[j+1]

    // Triples whose orientation the links read or fix, in chain order, other
    // than forward construction triples.
    std::vector<TripleKey> reverse_keys(const ConstructionPlan& plan) const {
        SignMap fwd = forward_sign_map(plan, ForwardType(plan.size(), 1));
        std::vector<TripleKey> out;
        std::set<TripleKey> seen;
        for (const auto& l : links)
            for (const auto& pc : l.pieces)
                for (auto& [k, s] : pc.label)
                    if (!fwd.count(k) && seen.insert(k).second) out.push_back(k);
        return out;
    }
};

namespace detail {

template <class Real>
Real exact_distance(const Instance& inst, Vertex a, Vertex b) {
    auto it = inst.linkage.lengths.find(Edge(a, b));
    if (it != inst.linkage.lengths.end()) return Real(it->second);
    auto d = inst.rigid_distance(a, b);
    if (!d) throw Error(ErrorKind::FourCycleNotFound, "vertices " + std::to_string(a) + " and " + std::to_string(b) +
                                                          " share no cluster");
    return Real(*d);
}

inline std::optional<int> single_common(const Cluster& x, const Cluster& y) {
    std::optional<int> v;
    for (Vertex a : x.vertices)
        if (y.contains(a)) {
            if (v) return std::nullopt;
            v = a;
        }
    return v;
}

// Four-cycle a-c-b-d-a of distinct clusters, consecutive ones meeting in one vertex.
inline bool is_conic_link(const Instance& inst, Vertex a, Vertex b, Vertex c, Vertex d) {
    if (a == c || a == d || b == c || b == d) return false;
    int t1 = inst.cluster_containing(a, c), t2 = inst.cluster_containing(c, b);
    int t3 = inst.cluster_containing(b, d), t4 = inst.cluster_containing(d, a);
    std::set<int> ids{t1, t2, t3, t4};
    if (ids.count(-1) || ids.size() != 4) return false;
    const auto& C = inst.plan.clusters;
    auto one = [&](int x, int y, Vertex v) {
        auto s = single_common(C[static_cast<std::size_t>(x)], C[static_cast<std::size_t>(y)]);
        return s && *s == v;
    };
    return one(t1, t2, c) && one(t2, t3, b) && one(t3, t4, d) && one(t4, t1, a);
}

// Corner p with a, c in one cluster and b, d in another, the two meeting only at p.
inline std::optional<Vertex> chord_corner(const Instance& inst, Vertex a, Vertex b, Vertex c, Vertex d) {
    const auto& C = inst.plan.clusters;
    for (std::size_t i = 0; i < C.size(); ++i) {
        if (!C[i].contains(a) || !C[i].contains(c)) continue;
        for (std::size_t j = 0; j < C.size(); ++j) {
            if (j == i || !C[j].contains(b) || !C[j].contains(d)) continue;
            auto p = single_common(C[i], C[j]);
            if (!p || *p == a || *p == b || *p == c || *p == d) continue;
            return *p;
        }
    }
    return std::nullopt;
}

template <class Real>
Link<Real> make_conic_link(const Instance& inst, Vertex a, Vertex b, Vertex c, Vertex d, const Real& tol) {
    Link<Real> L;
    L.kind = LinkKind::Conic;
    L.from = Edge(a, b);
    L.to = Edge(c, d);
    L.a = a;
    L.b = b;
    L.c = c;
    L.d = d;
    L.tol = tol;
    // Curve vertices P1..P4 = c, a, d, b: e1 = |ab|, e2 = |cd|.
    Real ca = exact_distance<Real>(inst, c, a), ad = exact_distance<Real>(inst, a, d);
    Real db = exact_distance<Real>(inst, d, b), bc = exact_distance<Real>(inst, b, c);
    try {
        L.curve.emplace(ca, ad, db, bc);
    } catch (const Error&) {
        return L;  // no quadrilateral, no pieces
    }
    L.back.emplace(L.curve->swapped());
    auto bp = L.curve->e1_breakpoints();
    double otol = std::is_same_v<Real, double> ? 1e-12 : 1e-80;
    for (int branch : {1, -1}) {
        for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
            if (!(bp[i] < bp[i + 1])) continue;
            Real mid = (bp[i] + bp[i + 1]) / 2;
            BasicPoint<Real> pa{0, 0}, pb{mid, 0};
            BasicPoint<Real> pc, pd;
            try {
                pc = realize_step(pa, pb, ca, bc, 1, to_double(tol));
                pd = realize_step(pa, pb, ad, db, branch, to_double(tol));
            } catch (const Error&) {
                continue;
            }
            int ta = local_orientation(pc, pd, pa, otol);
            int tb = local_orientation(pc, pd, pb, otol);
            for (int mirror : {1, -1}) {
                LinkPiece<Real> pc_;
                pc_.lo = bp[i];
                pc_.hi = bp[i + 1];
                pc_.branch = branch;
                auto put = [&](Vertex x, Vertex y, Vertex z, int s) {
                    auto [k, v] = triple_key(x, y, z, s * mirror);
                    pc_.label[k] = v;
                };
                put(a, b, c, 1);
                put(a, b, d, branch);
                put(c, d, a, ta);
                put(c, d, b, tb);
                L.pieces.push_back(std::move(pc_));
            }
        }
    }
    return L;
}

template <class Real>
Link<Real> make_chord_link(const Instance& inst, Vertex p, Vertex a, Vertex b, Vertex c, Vertex d, const Real& tol) {
    Link<Real> L;
    L.kind = LinkKind::Chord;
    L.from = Edge(a, b);
    L.to = Edge(c, d);
    L.a = a;
    L.b = b;
    L.c = c;
    L.d = d;
    L.p = p;
    L.tol = tol;
    L.pa = exact_distance<Real>(inst, p, a);
    L.pb = exact_distance<Real>(inst, p, b);
    L.pc = exact_distance<Real>(inst, p, c);
    L.pd = exact_distance<Real>(inst, p, d);
    // Fixed angles inside each rigid arm, read from the cluster charts.
    auto angle = [&](Vertex x, Vertex y) {
        const auto& ch = inst.charts.at(static_cast<std::size_t>(inst.cluster_containing(x, y)));
        if (x == y) return 0.0;
        Point u = ch.points.at(x) - ch.points.at(p), v = ch.points.at(y) - ch.points.at(p);
        return std::atan2(cross(u, v), dot(u, v));
    };
    // Oriented angle from pc to pd is eps * theta + beta, theta = angle(a p b).
    L.beta = Real(angle(b, d) - angle(a, c));
    const Real pi = real_pi<Real>();
    for (int eps : {1, -1}) {
        std::vector<Real> th{Real(0), pi};
        // eps * theta + beta = k * pi
        for (int k = -4; k <= 4; ++k) {
            Real t = (Real(k) * pi - L.beta) * eps;
            if (t > 0 && t < pi) th.push_back(t);
        }
        std::sort(th.begin(), th.end());
        for (std::size_t i = 0; i + 1 < th.size(); ++i) {
            if (!(th[i] < th[i + 1])) continue;
            Real tm = (th[i] + th[i + 1]) / 2;
            using std::sin;
            int sphi = sin(eps * tm + L.beta) > 0 ? 1 : -1;
            // Cluster charts carry a fixed chirality, so a chord link has no
            // mirror image: each eps is its own configuration.
            LinkPiece<Real> pc_;
            pc_.lo = L.D_of_theta(th[i]);
            pc_.hi = L.D_of_theta(th[i + 1]);
            pc_.branch = eps;
            auto [k1, v1] = triple_key(p, a, b, eps);
            auto [k2, v2] = triple_key(p, c, d, sphi);
            pc_.label[k1] = v1;
            pc_.label[k2] = v2;
            L.pieces.push_back(std::move(pc_));
        }
    }
    return L;
}

} // namespace detail

template <class Real>
QimChain<Real> build_qim_chain(const Instance& inst) {
    const auto& plan = inst.plan;
    QimChain<Real> ch;
    Real tol = tol_as<Real>(std::is_same_v<Real, double> ? 1e-12 : 1e-80);
    // Distinct base pairs in order of first use; later steps must not return
    // to an earlier pair.
    for (const auto& s : plan.steps) {
        Edge e = s.base();
        if (!ch.pairs.empty() && ch.pairs.back() == e) continue;
        if (std::find(ch.pairs.begin(), ch.pairs.end(), e) != ch.pairs.end())
            throw Error(ErrorKind::FourCycleNotFound, "base pair " + to_string(e) + " is used again after another pair", s.index);
        ch.pairs.push_back(e);
        ch.virtual_pair.push_back(false);
    }
    if (ch.pairs.empty() || ch.pairs.front() != plan.f())
        throw Error(ErrorKind::FourCycleNotFound, "first base pair is not f");

    auto link_between = [&](const Edge& x, const Edge& y) -> std::optional<Link<Real>> {
        for (auto [c, d] : {std::pair{y.a, y.b}, std::pair{y.b, y.a}}) {
            if (detail::is_conic_link(inst, x.a, x.b, c, d))
                return detail::make_conic_link<Real>(inst, x.a, x.b, c, d, tol);
        }
        for (auto [a, b] : {std::pair{x.a, x.b}, std::pair{x.b, x.a}})
            for (auto [c, d] : {std::pair{y.a, y.b}, std::pair{y.b, y.a}})
                if (auto p = detail::chord_corner(inst, a, b, c, d))
                    return detail::make_chord_link<Real>(inst, *p, a, b, c, d, tol);
        return std::nullopt;
    };

    std::vector<Edge> pairs;
    std::vector<bool> virt;
    for (std::size_t j = 0; j + 1 < ch.pairs.size(); ++j) {
        const Edge& x = ch.pairs[j];
        const Edge& y = ch.pairs[j + 1];
        pairs.push_back(x);
        virt.push_back(ch.virtual_pair[j]);
        if (auto l = link_between(x, y)) {
            ch.links.push_back(std::move(*l));
            continue;
        }
        // Chordal pair hinged at an end of the diagonal: go through the
        // quadrilateral's other diagonal first.
        bool done = false;
        std::set<Vertex> near;
        for (const auto& cl : plan.clusters)
            if (cl.contains(x.a) || cl.contains(x.b) || cl.contains(y.a) || cl.contains(y.b))
                near.insert(cl.vertices.begin(), cl.vertices.end());
        for (Vertex g : near) {
            for (Vertex h : near) {
                if (h <= g) continue;
                Edge mid(g, h);
                if (mid == x || mid == y) continue;
                bool conic_first = false;
                for (auto [c, d] : {std::pair{g, h}, std::pair{h, g}})
                    if (detail::is_conic_link(inst, x.a, x.b, c, d)) conic_first = true;
                if (conic_first) {
                    auto second = link_between(mid, y);
                    if (!second || second->kind != LinkKind::Chord) continue;
                    ch.links.push_back(*link_between(x, mid));
                    ch.links.push_back(std::move(*second));
                } else {
                    auto first = link_between(x, mid);
                    if (!first || first->kind != LinkKind::Chord) continue;
                    bool conic_second = false;
                    for (auto [c, d] : {std::pair{y.a, y.b}, std::pair{y.b, y.a}})
                        if (detail::is_conic_link(inst, g, h, c, d)) conic_second = true;
                    if (!conic_second) continue;
                    ch.links.push_back(std::move(*first));
                    ch.links.push_back(*link_between(mid, y));
                }
                pairs.push_back(mid);
                virt.push_back(true);
                done = true;
                break;
            }
            if (done) break;
        }
        if (!done)
            throw Error(ErrorKind::FourCycleNotFound,
                        "no four-cycle of clusters relates base pairs " + to_string(x) + " and " + to_string(y));
    }
    pairs.push_back(ch.pairs.back());
    virt.push_back(false);
    ch.pairs = std::move(pairs);
    ch.virtual_pair = std::move(virt);

    for (std::size_t j = 0; j < ch.pairs.size(); ++j) {
        BasicIntervalSet<Real> r(Real(0), Real(std::numeric_limits<double>::max()));
        for (const auto& s : plan.steps) {
            if (s.base() != ch.pairs[j]) continue;
            Real r1 = detail::exact_distance<Real>(inst, s.u, s.vertex);
            Real r2 = detail::exact_distance<Real>(inst, s.w, s.vertex);
            using std::abs;
            r = intersect(r, BasicIntervalSet<Real>(abs(r1 - r2), r1 + r2));
        }
        ch.ranges.push_back(std::move(r));
    }
    return ch;
}

struct QimMode {
    enum Kind { AllTypes, FullType, Fixed } kind = AllTypes;
    ForwardType sigma;
    SignMap fixed;  // extra triple orientations (the reverse part of a minimal type)

    static QimMode all_types() { return {}; }
    static QimMode full_type(ForwardType s) { return {FullType, std::move(s), {}}; }
    static QimMode minimal_type(ForwardType s, SignMap reverse) { return {Fixed, std::move(s), std::move(reverse)}; }
};

struct QimStats {
    std::size_t links = 0;
    std::size_t conic_links = 0;
    std::size_t chord_links = 0;
    std::size_t max_states = 0;
    std::size_t max_intervals = 0;
};

template <class Real>
BasicIntervalSet<Real> qim_on_chain(const Instance& inst, const QimChain<Real>& ch, const QimMode& mode,
                                    QimStats* stats = nullptr, std::size_t cap = std::size_t(1) << 20) {
    SignMap fixed = mode.fixed;
    if (mode.kind != QimMode::AllTypes)
        for (auto& [k, v] : forward_sign_map(inst.plan, mode.sigma)) fixed[k] = v;

    const std::size_t M = ch.links.size();
    // Triples that some earlier link can still confirm, per level.
    std::vector<std::set<TripleKey>> relevant(M + 1);
    for (std::size_t j = 1; j <= M; ++j) {
        relevant[j] = relevant[j - 1];
        for (const auto& pc : ch.links[j - 1].pieces)
            for (auto& [k, v] : pc.label) relevant[j].insert(k);
    }

    std::map<SignMap, BasicIntervalSet<Real>> states;
    states[SignMap{}] = ch.ranges[M];
    if (stats) {
        stats->links = M;
        for (const auto& l : ch.links) (l.kind == LinkKind::Conic ? stats->conic_links : stats->chord_links)++;
    }
    for (std::size_t jj = M; jj-- > 0;) {
        const auto& L = ch.links[jj];
        std::map<SignMap, std::vector<BasicInterval<Real>>> next;
        for (const auto& [C, S] : states) {
            for (const auto& pc : L.pieces) {
                if (!consistent(pc.label, C) || !consistent(pc.label, fixed)) continue;
                std::vector<BasicInterval<Real>> pre;
                L.preimage(pc, S, pre);
                if (pre.empty()) continue;
                SignMap C2;
                for (auto& [k, v] : C)
                    if (relevant[jj].count(k)) C2[k] = v;
                for (auto& [k, v] : pc.label)
                    if (relevant[jj].count(k)) C2[k] = v;
                auto& dst = next[C2];
                dst.insert(dst.end(), pre.begin(), pre.end());
            }
        }
        states.clear();
        std::size_t total = 0;
        for (auto& [C, parts] : next) {
            auto s = intersect(BasicIntervalSet<Real>(std::move(parts)), ch.ranges[jj]);
            total += s.size();
            if (!s.empty()) states[C] = std::move(s);
        }
        if (total > cap) throw Error(ErrorKind::BudgetExceeded, "QIM interval count exceeds the cap");
        if (stats) {
            stats->max_states = std::max(stats->max_states, states.size());
            stats->max_intervals = std::max(stats->max_intervals, total);
        }
    }
    std::vector<BasicInterval<Real>> all;
    for (auto& [C, S] : states) all.insert(all.end(), S.begin(), S.end());
    return BasicIntervalSet<Real>(std::move(all));
}

template <class Real = double>
BasicIntervalSet<Real> qim(const Instance& inst, const QimMode& mode = QimMode::all_types(), QimStats* stats = nullptr) {
    auto pd = last_level_and_paths(inst.plan);
    if (!pd.one_path) throw Error(ErrorKind::NotOnePath, std::to_string(pd.paths.size()) + " last-level paths");
    auto low = has_low_cayley_complexity(inst.plan);
    if (!low.low)
        throw Error(ErrorKind::NotSupported, "extreme graph of step " + std::to_string(*low.failing_step) +
                                                 " is not tree-decomposable", low.failing_step);
    auto ch = build_qim_chain<Real>(inst);
    return qim_on_chain(inst, ch, mode, stats);
}

template <class Real>
BasicIntervalSet<double> to_double_set(const BasicIntervalSet<Real>& s) {
    std::vector<Interval> out;
    for (const auto& iv : s) out.push_back({to_double(iv.lo), to_double(iv.hi)});
    return IntervalSet(std::move(out));
}

// Signs that the QIM chain reads, evaluated on a realization.
inline SignMap reverse_signs_of(const Realization& r, const std::vector<TripleKey>& keys, double tol = 1e-9) {
    SignMap m;
    for (const auto& k : keys) m[k] = local_orientation(r[k[0]], r[k[1]], r[k[2]], tol);
    return m;
}

// Per-path QIM under one minimal type, intersected across paths.
template <class Real = double>
BasicIntervalSet<Real> qim_multipath(const Instance& inst, const QimMode& mode) {
    if (mode.kind == QimMode::AllTypes)
        throw Error(ErrorKind::DomainError, "multipath QIM needs a fixed forward type");
    SignMap fixed = mode.fixed;
    for (auto& [k, v] : forward_sign_map(inst.plan, mode.sigma)) fixed[k] = v;
    auto pd = last_level_and_paths(inst.plan);
    std::optional<BasicIntervalSet<Real>> acc;
    for (const auto& path : pd.paths) {
        Linkage sub;
        sub.graph = path.graph;
        for (const Edge& e : path.graph.edges()) sub.lengths[e] = inst.linkage.lengths.at(e);
        sub.placements = inst.linkage.placements;
        auto si = make_instance(sub, inst.f(), inst.tol);
        auto ch = build_qim_chain<Real>(si);
        // Forward signs travel by vertex triple, so the same map applies.
        QimMode m;
        m.kind = QimMode::Fixed;
        m.sigma = ForwardType(si.steps(), 0);
        m.fixed = fixed;
        auto s = qim_on_chain(si, ch, m);
        acc = acc ? intersect(*acc, s) : s;
    }
    return acc ? *acc : BasicIntervalSet<Real>{};
}

} // namespace caylink
