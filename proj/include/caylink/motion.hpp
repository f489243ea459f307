#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "elr.hpp"
#include "qim.hpp"

namespace caylink {

enum class Direction { Up, Down };
enum class End { Lo, Hi };

inline std::string to_string(Direction d) { return d == Direction::Up ? "up" : "down"; }
inline std::string to_string(End e) { return e == End::Lo ? "lo" : "hi"; }

// A point of the oriented Cayley configuration space.
struct MotionState {
    ForwardType sigma;
    double lf = 0;
};

struct MotionLeg {
    ForwardType sigma;
    Interval interval;
    Direction direction = Direction::Up;
    double from = 0;
    double to = 0;
};

struct Transition {
    double lf = 0;
    int step = 0;  // entry of the forward type that flips here
};

struct MotionPath {
    MotionState start;
    MotionState target;
    std::vector<MotionLeg> legs;
    std::vector<Transition> transitions;
    bool through_isolated = false;

    bool trivial() const { return legs.empty(); }
};

// Case labels follow Figure 4: 1 = same oriented interval, 2 = same forward
// type in another interval, 3 = different forward types; a/b = path or none.
inline std::string motion_case(const MotionState& s, const MotionState& t, int s_index, int t_index,
                               const std::vector<MotionPath>& paths) {
    if (s.sigma == t.sigma && s_index == t_index) return "1";
    std::string c = s.sigma == t.sigma ? "2" : "3";
    return c + (paths.empty() ? "b" : "a");
}

inline ForwardType flip_at_endpoint(ForwardType sigma, int k) {
    if (k < 1 || k > static_cast<int>(sigma.size()))
        throw Error(ErrorKind::DomainError, "step " + std::to_string(k) + " outside the forward type");
    sigma[static_cast<std::size_t>(k - 1)] = -sigma[static_cast<std::size_t>(k - 1)];
    return sigma;
}

inline double space_tolerance(const Instance& inst) {
    double scale = 1;
    for (auto& [e, l] : inst.linkage.lengths) scale = std::max(scale, l);
    return inst.tol.merge * scale * 10;
}

struct Adjacent {
    ForwardType sigma;
    int index = -1;
    Interval interval;
    End entered = End::Lo;
    int step = 0;
};

inline std::optional<Adjacent> adjacent_interval(const CayleySpace& space, const ForwardType& sigma,
                                                 const Interval& iv, End end, double tol) {
    auto it = space.by_type.find(sigma);
    if (it == space.by_type.end()) throw Error(ErrorKind::DomainError, "no oriented space for " + type_to_string(sigma));
    double l0 = end == End::Lo ? iv.lo : iv.hi;
    auto steps = it->second.steps_at(l0, tol);
    if (steps.empty()) return std::nullopt;
    if (steps.size() > 1) {
        std::string s;
        for (int k : steps) s += (s.empty() ? "" : ",") + std::to_string(k);
        throw Error(ErrorKind::AmbiguousEndpoint, "steps {" + s + "} are collinear at l_f = " + format_double(l0));
    }
    int k = *steps.begin();
    ForwardType tau = flip_at_endpoint(sigma, k);
    auto jt = space.by_type.find(tau);
    if (jt == space.by_type.end()) return std::nullopt;
    const auto& parts = jt->second.set.intervals();
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const auto& J = parts[i];
        // Prefer the side that continues away from l0.
        if (std::abs(J.lo - l0) <= tol) return Adjacent{tau, static_cast<int>(i), J, End::Lo, k};
        if (std::abs(J.hi - l0) <= tol) return Adjacent{tau, static_cast<int>(i), J, End::Hi, k};
    }
    return std::nullopt;
}

namespace detail {

inline int locate_state(const CayleySpace& space, const MotionState& s, double tol) {
    auto it = space.by_type.find(s.sigma);
    if (it == space.by_type.end()) return -1;
    return it->second.set.locate(s.lf, tol);
}

// Clamp l_f onto the located interval so near-endpoint inputs snap.
inline MotionState snap(const CayleySpace& space, MotionState s, double tol) {
    int i = locate_state(space, s, tol);
    if (i < 0) return s;
    const auto& iv = space.by_type.at(s.sigma).set.intervals()[static_cast<std::size_t>(i)];
    if (std::abs(s.lf - iv.lo) <= tol) s.lf = iv.lo;
    if (std::abs(s.lf - iv.hi) <= tol) s.lf = iv.hi;
    return s;
}

inline MotionLeg make_leg(const ForwardType& sigma, const Interval& iv, double from, double to) {
    return {sigma, iv, to >= from ? Direction::Up : Direction::Down, from, to};
}

inline bool between(double x, double a, double b, double tol) {
    return x >= std::min(a, b) - tol && x <= std::max(a, b) + tol;
}

inline std::optional<MotionPath> walk(const CayleySpace& space, const MotionState& start, const MotionState& target,
                                      End first_exit, double tol) {
    const int s_idx = locate_state(space, start, tol);
    const int t_idx = locate_state(space, target, tol);
    MotionPath path{start, target, {}, {}, false};

    ForwardType sigma = start.sigma;
    int idx = s_idx;
    double entry = start.lf;
    End exit = first_exit;
    std::set<std::pair<ForwardType, int>> visited;
    // Each (type, interval) pair is traversed once; a chain can close on
    // itself, which brings it back to the start interval from the far end.
    for (;;) {
        const Interval iv = space.by_type.at(sigma).set.intervals()[static_cast<std::size_t>(idx)];
        double exit_val = exit == End::Lo ? iv.lo : iv.hi;
        bool back_home = !path.legs.empty() && sigma == start.sigma && idx == s_idx;
        if (sigma == target.sigma && idx == t_idx) {
            double stop = back_home ? start.lf : exit_val;
            if (between(target.lf, entry, stop, tol)) {
                path.legs.push_back(make_leg(sigma, iv, entry, target.lf));
                return path;
            }
        }
        if (back_home) return std::nullopt;
        if (!visited.insert({sigma, idx}).second) return std::nullopt;
        path.legs.push_back(make_leg(sigma, iv, entry, exit_val));
        auto adj = adjacent_interval(space, sigma, iv, exit, tol);
        if (!adj) return std::nullopt;
        path.transitions.push_back({exit_val, adj->step});
        sigma = adj->sigma;
        idx = adj->index;
        entry = exit_val;
        if (adj->interval.isolated()) {
            path.through_isolated = true;
            exit = adj->entered;
        } else {
            exit = adj->entered == End::Lo ? End::Hi : End::Lo;
        }
    }
}

inline bool same_route(const MotionPath& a, const MotionPath& b) {
    if (a.legs.size() != b.legs.size()) return false;
    for (std::size_t i = 0; i < a.legs.size(); ++i)
        if (a.legs[i].sigma != b.legs[i].sigma || a.legs[i].from != b.legs[i].from || a.legs[i].to != b.legs[i].to)
            return false;
    return true;
}

} // namespace detail

// Both directions out of the start interval; at most two paths.
inline std::vector<MotionPath> find_paths(const CayleySpace& space, MotionState start, MotionState target,
                                          double tol = 1e-8) {
    start = detail::snap(space, start, tol);
    target = detail::snap(space, target, tol);
    if (detail::locate_state(space, start, tol) < 0 || detail::locate_state(space, target, tol) < 0) return {};
    if (start.sigma == target.sigma && std::abs(start.lf - target.lf) <= tol)
        return {MotionPath{start, target, {}, {}, false}};
    std::vector<MotionPath> out;
    for (End e : {End::Hi, End::Lo}) {
        auto p = detail::walk(space, start, target, e, tol);
        if (!p) continue;
        bool dup = false;
        for (const auto& q : out) dup = dup || detail::same_route(*p, q);
        if (!dup) out.push_back(std::move(*p));
    }
    return out;
}

inline MotionState state_of(const Instance& inst, const Realization& r) {
    return {forward_type_of(r, inst.plan, inst.tol.orient), r.distance(inst.f().a, inst.f().b)};
}

inline std::vector<MotionPath> find_paths(const Instance& inst, const CayleySpace& space, const Realization& start,
                                          const Realization& target) {
    return find_paths(space, state_of(inst, start), state_of(inst, target), space_tolerance(inst));
}

// Minimal type as used by QIM: the forward type plus the reverse triples the
// chain reads.
struct MinimalType {
    ForwardType sigma;
    SignMap reverse;
    bool operator==(const MinimalType&) const = default;
};

inline MinimalType minimal_type_of(const Instance& inst, const Realization& r) {
    auto ch = build_qim_chain<double>(inst);
    return {forward_type_of(r, inst.plan, inst.tol.orient), reverse_signs_of(r, ch.reverse_keys(inst.plan), inst.tol.orient)};
}

struct SameTypeResult {
    MotionPath path;
    std::size_t lookups = 0;  // interval lookups after the space is known
};

inline SameTypeResult path_same_minimal_type(const Instance& inst, const Realization& start, const Realization& target) {
    auto ms = minimal_type_of(inst, start);
    auto mt = minimal_type_of(inst, target);
    if (!(ms == mt)) throw Error(ErrorKind::TypeMismatch, "realizations have different minimal realization types");
    auto mode = QimMode::minimal_type(ms.sigma, ms.reverse);
    auto set = last_level_and_paths(inst.plan).one_path ? qim<double>(inst, mode) : qim_multipath<double>(inst, mode);
    double tol = space_tolerance(inst);
    MotionState s = state_of(inst, start), t = state_of(inst, target);
    SameTypeResult out;
    out.path.start = s;
    out.path.target = t;
    int i = set.locate(s.lf, tol);
    out.lookups = 1;
    if (i < 0) throw Error(ErrorKind::DomainError, "start l_f is outside its minimal-type interval");
    const auto& iv = set.intervals()[static_cast<std::size_t>(i)];
    if (!iv.contains(t.lf, tol)) throw Error(ErrorKind::DomainError, "target l_f is outside the start interval");
    out.path.legs.push_back(detail::make_leg(s.sigma, iv, s.lf, t.lf));
    return out;
}

inline std::vector<MotionPath> paths_between_cayley_configs(const CayleySpace& space, double lf_start, double lf_target,
                                                            double tol = 1e-8, std::size_t cap = 1 << 16) {
    std::vector<ForwardType> from, to;
    for (const auto& [sigma, os] : space.by_type) {
        if (os.set.contains(lf_start, tol)) from.push_back(sigma);
        if (os.set.contains(lf_target, tol)) to.push_back(sigma);
    }
    if (from.size() * to.size() > cap)
        throw Error(ErrorKind::BudgetExceeded, std::to_string(from.size() * to.size()) + " type pairs exceed the cap");
    std::vector<MotionPath> out;
    for (const auto& a : from)
        for (const auto& b : to)
            for (auto& p : find_paths(space, {a, lf_start}, {b, lf_target}, tol)) {
                bool dup = false;
                for (const auto& q : out) dup = dup || detail::same_route(p, q);
                if (!dup) out.push_back(std::move(p));
            }
    return out;
}

namespace detail {

// Endpoints are collinear configurations, so rounding can push them just
// outside the triangle inequality; step inward until the realization exists.
inline Realization realize_near(const Instance& inst, double lf, const ForwardType& sigma, double inward) {
    double h = space_tolerance(inst);
    for (int i = 0; i < 12; ++i) {
        if (auto r = try_realize(inst, lf, sigma)) return *r;
        lf += inward * h;
        h *= 4;
    }
    return realize(inst, lf, sigma);
}

} // namespace detail

inline std::vector<Realization> sample_motion(const Instance& inst, const MotionPath& path, int n) {
    if (n < 1) throw Error(ErrorKind::DomainError, "need at least one sample per leg");
    std::vector<Realization> frames;
    if (path.legs.empty()) {
        frames.push_back(detail::realize_near(inst, path.start.lf, path.start.sigma, 0));
        return frames;
    }
    for (const auto& leg : path.legs) {
        double mid = (leg.interval.lo + leg.interval.hi) / 2;
        for (int i = 0; i < n; ++i) {
            double t = n == 1 ? 0 : static_cast<double>(i) / (n - 1);
            double lf = leg.from + t * (leg.to - leg.from);
            frames.push_back(detail::realize_near(inst, lf, leg.sigma, lf < mid ? 1 : -1));
        }
    }
    return frames;
}

} // namespace caylink
