#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <vector>

#include "error.hpp"
#include "interval.hpp"
#include "numeric.hpp"

namespace caylink {

// Which monotone arc of the curve a mapping may use. Each field is +1 when the
// named pair of vertices lies on the same side of the other diagonal's line,
// -1 when on opposite sides, 0 when unconstrained.
struct ArcConstraint {
    int e1_vertices = 0;  // P2, P4 relative to line P1P3
    int e2_vertices = 0;  // P1, P3 relative to line P2P4

    static ArcConstraint any() { return {}; }
    ArcConstraint swapped() const { return {e2_vertices, e1_vertices}; }
    bool admits(int s1, int s2) const {
        return (e1_vertices == 0 || e1_vertices == s1) && (e2_vertices == 0 || e2_vertices == s2);
    }
};

// Quadrilateral P1P2P3P4 with sides s1 = |P1P2|, s2 = |P2P3|, s3 = |P3P4|,
// s4 = |P4P1| and diagonals e1 = |P2P4|, e2 = |P1P3|. The Cayley-Menger
// determinant of the four points, written in x = e1^2 and y = e2^2, is
//   F = -2xy^2 - 2x^2y + 2Sxy - 2(a-d)(b-c)y + 2(a-b)(c-d)x - 2(ac-bd)(a-b+c-d)
// with a..d the squared sides and S their sum. F is quadratic in each variable.
template <class Real>
class BasicQuadCurve {
public:
    BasicQuadCurve(Real s1, Real s2, Real s3, Real s4) : s_{s1, s2, s3, s4} {
        for (const auto& s : s_)
            if (!(s > 0)) throw Error(ErrorKind::Unrealizable, "quadrilateral side must be positive");
        Real total = s1 + s2 + s3 + s4;
        for (const auto& s : s_)
            if (s * 2 > total) throw Error(ErrorKind::Unrealizable, "polygon inequality fails for quadrilateral");
        a_ = s1 * s1;
        b_ = s2 * s2;
        c_ = s3 * s3;
        d_ = s4 * s4;
        using std::abs;
        e1_lo_ = std::max(abs(s1 - s4), abs(s2 - s3));
        e1_hi_ = std::min(s1 + s4, s2 + s3);
        e2_lo_ = std::max(abs(s1 - s2), abs(s3 - s4));
        e2_hi_ = std::min(s1 + s2, s3 + s4);
    }

    const std::array<Real, 4>& sides() const { return s_; }

    BasicQuadCurve swapped() const { return BasicQuadCurve(s_[1], s_[2], s_[3], s_[0]); }

    Real F(const Real& x, const Real& y) const {
        Real S = a_ + b_ + c_ + d_;
        return -2 * x * y * y - 2 * x * x * y + 2 * S * x * y - 2 * (a_ - d_) * (b_ - c_) * y +
               2 * (a_ - b_) * (c_ - d_) * x - 2 * (a_ * c_ - b_ * d_) * (a_ - b_ + c_ - d_);
    }

    // Sum of the absolute values of F's terms, the scale for relative residuals.
    Real F_scale(const Real& x, const Real& y) const {
        using std::abs;
        Real S = a_ + b_ + c_ + d_;
        return 2 * abs(x * y * y) + 2 * abs(x * x * y) + 2 * abs(S * x * y) + 2 * abs((a_ - d_) * (b_ - c_) * y) +
               2 * abs((a_ - b_) * (c_ - d_) * x) + 2 * abs((a_ * c_ - b_ * d_) * (a_ - b_ + c_ - d_));
    }

    BasicInterval<Real> e1_range() const { return {e1_lo_, e1_hi_}; }
    BasicInterval<Real> e2_range() const { return {e2_lo_, e2_hi_}; }

    // Coefficients of F as a quadratic A y^2 + B y + C in y for fixed x.
    std::array<Real, 3> coeffs_in_y(const Real& x) const {
        Real S = a_ + b_ + c_ + d_;
        return {-2 * x, -2 * x * x + 2 * S * x - 2 * (a_ - d_) * (b_ - c_),
                2 * (a_ - b_) * (c_ - d_) * x - 2 * (a_ * c_ - b_ * d_) * (a_ - b_ + c_ - d_)};
    }

    // e2 for a given e1. branch = +1 picks P1, P3 on the same side of line
    // P2P4 (the smaller root), -1 opposite sides (the larger root).
    std::optional<Real> e2_at(const Real& e1, int branch, const Real& tol) const {
        using std::sqrt;
        using std::abs;
        if (e1 < e1_lo_ - tol * e1_hi_ || e1 > e1_hi_ + tol * e1_hi_) return std::nullopt;
        Real x = e1 * e1;
        auto [A, B, C] = coeffs_in_y(x);
        Real y;
        if (abs(A) <= tol * (abs(B) + abs(C))) {
            if (B == 0) return std::nullopt;
            y = -C / B;
        } else {
            Real disc = B * B - 4 * A * C;
            Real scale = B * B + abs(4 * A * C);
            if (disc < 0) {
                if (disc < -tol * scale * 16) return std::nullopt;
                disc = 0;
            }
            Real r = sqrt(disc);
            // A < 0 here, so (-B - r) / (2A) is the larger root.
            Real big = (-B - r) / (2 * A);
            Real small = (-B + r) / (2 * A);
            // Recompute the smaller root from the product for cancellation safety.
            if (abs(big) > 0 && abs(small) < abs(big) * Real(1e-3)) small = C / (A * big);
            y = branch < 0 ? big : small;
        }
        if (y < 0) {
            if (y < -tol * (e2_hi_ * e2_hi_)) return std::nullopt;
            y = 0;
        }
        return sqrt(y);
    }

    // e1 at which e2 reaches the given extreme value (the tangency point).
    Real e1_at_e2_extreme(const Real& e2) const {
        using std::sqrt;
        auto sw = swapped();
        auto [A, B, C] = sw.coeffs_in_y(e2 * e2);
        (void)C;
        Real x = -B / (2 * A);
        if (x < 0) x = 0;
        return sqrt(x);
    }

    // Side-of-line signs at a point of the curve: (P2,P4 wrt P1P3, P1,P3 wrt P2P4).
    std::array<int, 2> arc_signs(const Real& e1, const Real& e2, int branch) const {
        using std::sqrt;
        // P2 = (0,0), P4 = (e1,0), P1 above the axis, P3 per branch.
        auto apex = [&](const Real& r0, const Real& r1, int sgn) {
            Real x = (r0 * r0 - r1 * r1 + e1 * e1) / (2 * e1);
            Real h = r0 * r0 - x * x;
            if (h < 0) h = 0;
            return BasicPoint<Real>{x, sgn * sqrt(h)};
        };
        BasicPoint<Real> p2{0, 0}, p4{e1, 0};
        auto p1 = apex(s_[0], s_[3], 1);
        auto p3 = apex(s_[1], s_[2], branch < 0 ? -1 : 1);
        Real c2 = cross(p3 - p1, p2 - p1);
        Real c4 = cross(p3 - p1, p4 - p1);
        int sgn_e1 = (c2 > 0) == (c4 > 0) ? 1 : -1;
        (void)e2;
        return {sgn_e1, branch < 0 ? -1 : 1};
    }

    // Breakpoints in e1 splitting each branch into monotone pieces.
    std::vector<Real> e1_breakpoints() const {
        std::vector<Real> pts{e1_lo_, e1_hi_};
        for (const Real& e2 : {e2_lo_, e2_hi_}) {
            Real x = e1_at_e2_extreme(e2);
            if (x > e1_lo_ && x < e1_hi_) pts.push_back(x);
        }
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        return pts;
    }

private:
    std::array<Real, 4> s_;
    Real a_, b_, c_, d_;
    Real e1_lo_, e1_hi_, e2_lo_, e2_hi_;
};

// Real roots of F(e1^2, y) = 0 converted to lengths, filtered by the arc.
template <class Real>
std::vector<Real> solve_other_diagonal(const BasicQuadCurve<Real>& curve, const Real& e1, ArcConstraint arc = {},
                                       const Real& tol = tol_as<Real>(1e-12)) {
    std::vector<Real> out;
    for (int branch : {1, -1}) {
        auto e2 = curve.e2_at(e1, branch, tol);
        if (!e2) continue;
        auto signs = curve.arc_signs(e1, *e2, branch);
        if (!arc.admits(signs[0], signs[1])) continue;
        bool dup = false;
        using std::abs;
        using std::sqrt;
        for (const auto& v : out)
            if (abs(v - *e2) <= sqrt(tol) * (1 + v)) dup = true;
        if (!dup) out.push_back(*e2);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Image of a set of e1 lengths on the e2 axis.
template <class Real>
BasicIntervalSet<Real> map_intervals_diagonal(const BasicQuadCurve<Real>& curve, const BasicIntervalSet<Real>& src,
                                              ArcConstraint arc = {}, const Real& tol = tol_as<Real>(1e-12)) {
    std::vector<BasicInterval<Real>> out;
    auto bp = curve.e1_breakpoints();
    for (int branch : {1, -1}) {
        for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
            for (const auto& iv : src) {
                Real lo = std::max(iv.lo, bp[i]);
                Real hi = std::min(iv.hi, bp[i + 1]);
                if (lo > hi) continue;
                Real mid = (bp[i] + bp[i + 1]) / 2;
                auto em = curve.e2_at(mid, branch, tol);
                if (!em) continue;
                auto signs = curve.arc_signs(mid, *em, branch);
                if (!arc.admits(signs[0], signs[1])) continue;
                auto ya = curve.e2_at(lo, branch, tol);
                auto yb = curve.e2_at(hi, branch, tol);
                if (!ya || !yb) continue;
                out.push_back({std::min(*ya, *yb), std::max(*ya, *yb)});
            }
        }
        // Isolated source points sitting exactly on a breakpoint.
        for (const auto& iv : src) {
            if (!iv.isolated()) continue;
            auto y = curve.e2_at(iv.lo, branch, tol);
            if (!y) continue;
            auto signs = curve.arc_signs(iv.lo, *y, branch);
            if (arc.admits(signs[0], signs[1])) out.push_back({*y, *y});
        }
    }
    return BasicIntervalSet<Real>(std::move(out));
}

template <class Real>
Real law_of_cosines_transfer(const Real& a1, const Real& a2, const Real& b1, const Real& b2, const Real& d,
                             const Real& delta, const Real& tol = tol_as<Real>(1e-12)) {
    using std::abs;
    using std::acos;
    using std::cos;
    using std::sqrt;
    Real lo = abs(a1 - a2), hi = a1 + a2;
    if (d < lo - tol * hi || d > hi + tol * hi)
        throw Error(ErrorKind::DomainError, "law-of-cosines source length outside its triangle range");
    Real c = (a1 * a1 + a2 * a2 - d * d) / (2 * a1 * a2);
    c = std::clamp(c, Real(-1), Real(1));
    Real theta = acos(c);
    Real sq = b1 * b1 + b2 * b2 - 2 * b1 * b2 * cos(theta + delta);
    if (sq < 0) sq = 0;
    return sqrt(sq);
}

// Law-of-cosines transfer applied to a whole interval set, then mapped across
// the curve's diagonals.
template <class Real>
struct TransferParams {
    Real a1, a2, b1, b2, delta;
};

template <class Real>
BasicIntervalSet<Real> transfer_intervals(const TransferParams<Real>& p, const BasicIntervalSet<Real>& src,
                                          const Real& tol = tol_as<Real>(1e-12)) {
    using std::abs;
    using std::acos;
    using std::floor;
    using std::ceil;
    const Real pi = real_pi<Real>();
    Real lo_ok = abs(p.a1 - p.a2), hi_ok = p.a1 + p.a2;
    auto theta_of = [&](const Real& d) {
        Real c = (p.a1 * p.a1 + p.a2 * p.a2 - d * d) / (2 * p.a1 * p.a2);
        return acos(std::clamp(c, Real(-1), Real(1)));
    };
    auto chord = [&](const Real& theta) {
        using std::cos;
        using std::sqrt;
        Real sq = p.b1 * p.b1 + p.b2 * p.b2 - 2 * p.b1 * p.b2 * cos(theta + p.delta);
        return sqrt(sq < 0 ? Real(0) : sq);
    };
    std::vector<BasicInterval<Real>> out;
    for (const auto& iv : src) {
        Real lo = std::max(iv.lo, lo_ok), hi = std::min(iv.hi, hi_ok);
        if (lo > hi) continue;
        Real t0 = theta_of(lo), t1 = theta_of(hi);  // theta grows with d
        Real mn = std::min(chord(t0), chord(t1)), mx = std::max(chord(t0), chord(t1));
        // Extremes of the chord where theta + delta is a multiple of pi.
        Real k0 = ceil((t0 + p.delta) / pi), k1 = floor((t1 + p.delta) / pi);
        for (Real k = k0; k <= k1; k += 1) {
            Real v = chord(k * pi - p.delta);
            mn = std::min(mn, v);
            mx = std::max(mx, v);
        }
        out.push_back({mn, mx});
    }
    (void)tol;
    return BasicIntervalSet<Real>(std::move(out));
}

template <class Real>
BasicIntervalSet<Real> map_intervals_chordal(const BasicQuadCurve<Real>& curve, const TransferParams<Real>& p,
                                             const BasicIntervalSet<Real>& src, ArcConstraint arc = {},
                                             const Real& tol = tol_as<Real>(1e-12)) {
    return map_intervals_diagonal(curve, transfer_intervals(p, src, tol), arc, tol);
}

using QuadCurve = BasicQuadCurve<double>;

} // namespace caylink
