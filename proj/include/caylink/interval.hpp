#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "numeric.hpp"

namespace caylink {

template <class Real>
struct BasicInterval {
    Real lo{0};
    Real hi{0};

    bool isolated() const { return lo == hi; }
    Real width() const { return hi - lo; }
    Real mid() const { return (lo + hi) / 2; }
    bool contains(const Real& x, const Real& slack = Real(0)) const { return x >= lo - slack && x <= hi + slack; }
    bool operator==(const BasicInterval&) const = default;
};

// Sorted, pairwise disjoint closed intervals. Intervals whose gap is within
// merge_tol are fused; isolated points are kept as lo == hi.
template <class Real>
class BasicIntervalSet {
public:
    using Interval = BasicInterval<Real>;

    BasicIntervalSet() = default;
    BasicIntervalSet(Real lo, Real hi) { add(lo, hi); }
    explicit BasicIntervalSet(std::vector<Interval> parts, const Real& merge_tol = Real(0)) : parts_(std::move(parts)) {
        normalize(merge_tol);
    }

    void add(Real lo, Real hi) {
        if (hi < lo) return;
        parts_.push_back({lo, hi});
        normalize(Real(0));
    }

    void add_raw(Real lo, Real hi) {
        if (hi < lo) return;
        parts_.push_back({lo, hi});
    }

    void normalize(const Real& merge_tol) {
        std::sort(parts_.begin(), parts_.end(), [](const Interval& a, const Interval& b) {
            return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
        });
        std::vector<Interval> out;
        for (const auto& iv : parts_) {
            if (iv.hi < iv.lo) continue;
            if (!out.empty() && iv.lo <= out.back().hi + merge_tol) {
                if (iv.hi > out.back().hi) out.back().hi = iv.hi;
            } else {
                out.push_back(iv);
            }
        }
        parts_ = std::move(out);
    }

    const std::vector<Interval>& intervals() const { return parts_; }
    std::size_t size() const { return parts_.size(); }
    bool empty() const { return parts_.empty(); }
    const Interval& operator[](std::size_t i) const { return parts_[i]; }
    auto begin() const { return parts_.begin(); }
    auto end() const { return parts_.end(); }

    bool contains(const Real& x, const Real& slack = Real(0)) const {
        for (const auto& iv : parts_)
            if (iv.contains(x, slack)) return true;
        return false;
    }

    // Index of the interval containing x, or -1.
    int locate(const Real& x, const Real& slack = Real(0)) const {
        for (std::size_t i = 0; i < parts_.size(); ++i)
            if (parts_[i].contains(x, slack)) return static_cast<int>(i);
        return -1;
    }

    bool operator==(const BasicIntervalSet&) const = default;

private:
    std::vector<Interval> parts_;
};

template <class Real>
BasicIntervalSet<Real> intersect(const BasicIntervalSet<Real>& a, const BasicIntervalSet<Real>& b) {
    std::vector<BasicInterval<Real>> out;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        Real lo = std::max(a[i].lo, b[j].lo);
        Real hi = std::min(a[i].hi, b[j].hi);
        if (lo <= hi) out.push_back({lo, hi});
        if (a[i].hi < b[j].hi) ++i;
        else ++j;
    }
    return BasicIntervalSet<Real>(std::move(out));
}

template <class Real>
BasicIntervalSet<Real> unite(const BasicIntervalSet<Real>& a, const BasicIntervalSet<Real>& b,
                             const Real& merge_tol = Real(0)) {
    std::vector<BasicInterval<Real>> all(a.begin(), a.end());
    all.insert(all.end(), b.begin(), b.end());
    return BasicIntervalSet<Real>(std::move(all), merge_tol);
}

template <class Real>
std::string to_string(const BasicIntervalSet<Real>& s) {
    if (s.empty()) return "{}";
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ", ";
        out += "[" + format_double(to_double(s[i].lo)) + ", " + format_double(to_double(s[i].hi)) + "]";
    }
    return out + "}";
}

using Interval = BasicInterval<double>;
using IntervalSet = BasicIntervalSet<double>;

} // namespace caylink
