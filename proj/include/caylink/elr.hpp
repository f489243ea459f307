#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "decomposition.hpp"
#include "interval.hpp"
#include "linkage.hpp"

namespace caylink {

enum class Extreme { Min, Max };

inline std::string to_string(Extreme e) { return e == Extreme::Min ? "min" : "max"; }

struct ExtremeRealization {
    Realization realization;
    double lf = 0;
    ForwardType prefix;  // forward signs on steps 1..k-1
    ReverseType reverse; // signs along the extreme graph's reverse construction
};

namespace detail {

inline int chart_index(const Instance& inst, const Cluster& cl) {
    for (std::size_t i = 0; i < inst.plan.clusters.size(); ++i)
        if (inst.plan.clusters[i].vertices == cl.vertices) return static_cast<int>(i);
    throw Error(ErrorKind::DomainError, "cluster of the extreme graph not found in the plan");
}

inline bool prefix_matches(const ForwardType& want, const ForwardType& got) {
    for (std::size_t i = 0; i < want.size() && i < got.size(); ++i)
        if (want[i] != 0 && got[i] != 0 && want[i] != got[i]) return false;
    return true;
}

} // namespace detail

inline double extreme_length(const Instance& inst, int k, Extreme which) {
    auto [lo, hi] = inst.step_range(k);
    return which == Extreme::Min ? lo : hi;
}

// All ruler-and-compass realizations of the k-th extreme linkage whose forward
// signs on steps 1..k-1 agree with sigma_prefix (zero entries match anything).
inline std::vector<ExtremeRealization> realize_extreme_linkage(const Instance& inst, int k, Extreme which,
                                                               const ForwardType& sigma_prefix = {}) {
    auto spec = extreme_graph(inst.plan, k);
    if (!spec.tree_decomposable || !spec.reverse_plan)
        throw Error(ErrorKind::NotSupported, "extreme graph of step " + std::to_string(k) + " is not tree-decomposable", k);
    const auto& rp = *spec.reverse_plan;
    std::vector<int> chart_of;
    for (const auto& cl : rp.clusters) chart_of.push_back(detail::chart_index(inst, cl));

    double L = extreme_length(inst, k, which);
    std::vector<ExtremeRealization> out;
    if (L <= 0) return out;

    std::map<Vertex, Point> pts;
    pts[rp.v0] = {0, 0};
    pts[rp.v0p] = {L, 0};
    ReverseType signs(rp.size(), 0);
    std::function<void(std::size_t, std::map<Vertex, Point>)> dfs = [&](std::size_t j, std::map<Vertex, Point> p) {
        if (j == rp.size()) {
            ExtremeRealization er;
            er.realization.points = std::move(p);
            er.lf = er.realization.distance(inst.plan.v0, inst.plan.v0p);
            ForwardType full = forward_type_of(er.realization, inst.plan, inst.tol.orient, static_cast<std::size_t>(k - 1));
            er.prefix = full;
            er.reverse = signs;
            if (detail::prefix_matches(sigma_prefix, er.prefix)) out.push_back(std::move(er));
            return;
        }
        const auto& s = rp.steps[j];
        const auto& cu = inst.charts[static_cast<std::size_t>(chart_of[static_cast<std::size_t>(s.cluster_u)])];
        const auto& cw = inst.charts[static_cast<std::size_t>(chart_of[static_cast<std::size_t>(s.cluster_w)])];
        double r1 = cu.distance(s.u, s.vertex), r2 = cw.distance(s.w, s.vertex);
        for (int sg : {1, -1}) {
            Point pv;
            try {
                pv = realize_step(p.at(s.u), p.at(s.w), r1, r2, sg, inst.tol.tri);
            } catch (const Error&) {
                return;
            }
            auto q = p;
            q[s.vertex] = pv;
            detail::place_cluster(cu, s.u, s.vertex, q);
            detail::place_cluster(cw, s.w, s.vertex, q);
            signs[j] = sg;
            // A collinear placement gives the same point for both signs.
            bool flat = local_orientation(p.at(s.u), p.at(s.w), pv, inst.tol.orient) == 0;
            dfs(j + 1, std::move(q));
            if (flat) {
                signs[j] = 0;
                break;
            }
        }
    };
    dfs(0, pts);
    return out;
}

struct EndpointMeta {
    double value = 0;
    int step = 0;
    Extreme which = Extreme::Min;
};

struct Candidate {
    double lf = 0;
    int step = 0;
    Extreme which = Extreme::Min;
    bool accepted = false;
};

struct OrientedCayleySpace {
    ForwardType sigma;
    IntervalSet set;
    std::vector<EndpointMeta> endpoints;
    std::vector<Candidate> dead_ends;

    // Steps whose extreme linkage produces the endpoint at value x.
    std::set<int> steps_at(double x, double tol) const {
        std::set<int> s;
        for (const auto& e : endpoints)
            if (std::abs(e.value - x) <= tol) s.insert(e.step);
        return s;
    }
};

struct CayleySpace {
    std::map<ForwardType, OrientedCayleySpace> by_type;
    IntervalSet all;
};

// Extreme realizations for every step and both extensions, computed once and
// shared by all forward types.
struct ExtremeCatalog {
    struct Entry {
        int step;
        Extreme which;
        double lf;
        ForwardType prefix;
    };
    std::vector<Entry> entries;
};

inline ExtremeCatalog build_extreme_catalog(const Instance& inst) {
    ExtremeCatalog cat;
    for (int k = 1; k <= static_cast<int>(inst.steps()); ++k)
        for (Extreme w : {Extreme::Min, Extreme::Max})
            for (auto& er : realize_extreme_linkage(inst, k, w))
                cat.entries.push_back({k, w, er.lf, er.prefix});
    return cat;
}

using RealizabilityProbe = std::function<bool(double)>;

// UPDATE: classify candidate l0 by probing the midpoints toward its
// neighbouring candidates. Infinite neighbours are probed at l0 -/+ 1.
inline IntervalSet update(const IntervalSet& iset, double l0, std::optional<double> prev, std::optional<double> next,
                          const RealizabilityProbe& probe) {
    double left_probe = prev ? (*prev + l0) / 2 : l0 - 1;
    double right_probe = next ? (l0 + *next) / 2 : l0 + 1;
    bool left = left_probe > 0 && probe(left_probe);
    bool right = probe(right_probe);
    std::vector<Interval> parts(iset.begin(), iset.end());
    if (left) parts.push_back({prev ? *prev : left_probe, l0});
    if (right) parts.push_back({l0, next ? *next : right_probe});
    if (!left && !right) parts.push_back({l0, l0});
    return IntervalSet(std::move(parts));
}

inline IntervalSet update(const IntervalSet& iset, double l0, const RealizabilityProbe& probe) {
    std::optional<double> prev, next;
    for (const auto& iv : iset) {
        for (double x : {iv.lo, iv.hi}) {
            if (x < l0 && (!prev || x > *prev)) prev = x;
            if (x > l0 && (!next || x < *next)) next = x;
        }
    }
    return update(iset, l0, prev, next, probe);
}

inline OrientedCayleySpace elr(const Instance& inst, const ForwardType& sigma, const ExtremeCatalog& cat) {
    if (sigma.size() != inst.steps()) throw Error(ErrorKind::DomainError, "forward type length does not match the plan");
    OrientedCayleySpace out;
    out.sigma = sigma;
    auto probe = [&](double lf) { return lf > 0 && try_realize(inst, lf, sigma).has_value(); };

    std::vector<Candidate> cands;
    for (const auto& e : cat.entries) {
        Candidate c{e.lf, e.step, e.which, false};
        ForwardType pre(sigma.begin(), sigma.begin() + (e.step - 1));
        c.accepted = detail::prefix_matches(pre, e.prefix) && e.lf > 0 && try_realize(inst, e.lf, sigma).has_value();
        if (c.accepted) cands.push_back(c);
        else out.dead_ends.push_back(c);
    }
    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) { return a.lf < b.lf; });

    double scale = 0;
    for (auto& [e, l] : inst.linkage.lengths) scale = std::max(scale, l);
    double tol = inst.tol.merge * std::max(1.0, scale);
    std::vector<double> values;
    for (const auto& c : cands)
        if (values.empty() || c.lf - values.back() > tol) values.push_back(c.lf);

    IntervalSet set;
    for (std::size_t i = 0; i < values.size(); ++i) {
        std::optional<double> prev, next;
        if (i > 0) prev = values[i - 1];
        if (i + 1 < values.size()) next = values[i + 1];
        // Unbounded sides cannot be realizable for a connected linkage; the
        // probe still runs so a broken input shows up as an unbounded piece.
        set = update(set, values[i], prev, next, probe);
    }
    out.set = IntervalSet(std::vector<Interval>(set.begin(), set.end()), tol);
    for (const auto& c : cands) out.endpoints.push_back({c.lf, c.step, c.which});
    return out;
}

inline OrientedCayleySpace elr(const Instance& inst, const ForwardType& sigma) {
    return elr(inst, sigma, build_extreme_catalog(inst));
}

inline std::vector<ForwardType> all_forward_types(std::size_t n, std::size_t cap = std::size_t(1) << 16) {
    if (n >= 63 || (std::size_t(1) << n) > cap)
        throw Error(ErrorKind::BudgetExceeded, "2^" + std::to_string(n) + " forward types exceed the cap");
    std::vector<ForwardType> out;
    for (std::size_t m = 0; m < (std::size_t(1) << n); ++m) {
        ForwardType t(n);
        for (std::size_t i = 0; i < n; ++i) t[i] = (m >> (n - 1 - i)) & 1 ? -1 : 1;
        out.push_back(t);
    }
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

inline CayleySpace elr_full(const Instance& inst, std::size_t cap = std::size_t(1) << 16) {
    auto cat = build_extreme_catalog(inst);
    CayleySpace cs;
    std::vector<Interval> all;
    for (const auto& sigma : all_forward_types(inst.steps(), cap)) {
        auto os = elr(inst, sigma, cat);
        if (os.set.empty()) continue;
        all.insert(all.end(), os.set.begin(), os.set.end());
        cs.by_type.emplace(sigma, std::move(os));
    }
    cs.all = IntervalSet(std::move(all));
    return cs;
}

} // namespace caylink
