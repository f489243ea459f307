#pragma once

#include <cmath>
#include <cstdio>
#include <ios>
#include <type_traits>
#include <cstdlib>
#include <limits>
#include <string>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace caylink {

// 100 decimal digits. The nested-quadrilateral fixture produces intervals
// about 1e-23 wide by step 10, far below what doubles can separate.
using hp_real = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<100>,
                                              boost::multiprecision::et_off>;

template <class Real>
Real real_epsilon() {
    return std::numeric_limits<Real>::epsilon();
}

template <class Real>
Real real_pi() {
    if constexpr (std::is_same_v<Real, double>) return 3.141592653589793238462643383279502884;
    else return boost::math::constants::pi<Real>();
}

// Relative tolerances. Defaults suit doubles; for_type<hp_real>() scales them
// to the wider mantissa.
struct Tolerances {
    double tri = 1e-9;
    double orient = 1e-9;
    double len = 1e-9;
    double merge = 1e-9;

    template <class Real>
    static Tolerances for_type() {
        Tolerances t;
        if constexpr (!std::is_same_v<Real, double>) {
            t.tri = t.orient = t.len = t.merge = 1e-60;
        }
        return t;
    }

    // CAYLINK_TOL overrides every tolerance with one value.
    static Tolerances from_env() {
        Tolerances t;
        if (const char* s = std::getenv("CAYLINK_TOL")) {
            char* end = nullptr;
            double v = std::strtod(s, &end);
            if (end != s && v > 0) t.tri = t.orient = t.len = t.merge = v;
        }
        return t;
    }
};

template <class Real>
Real tol_as(double t) {
    if constexpr (std::is_same_v<Real, double>) return t;
    else {
        // A double tolerance coarser than the type's precision is honoured as is.
        Real r(t);
        return r;
    }
}

template <class Real>
struct BasicPoint {
    Real x{0};
    Real y{0};

    BasicPoint operator+(const BasicPoint& o) const { return {x + o.x, y + o.y}; }
    BasicPoint operator-(const BasicPoint& o) const { return {x - o.x, y - o.y}; }
    BasicPoint operator*(const Real& s) const { return {x * s, y * s}; }
};

using Point = BasicPoint<double>;

template <class Real>
Real cross(const BasicPoint<Real>& a, const BasicPoint<Real>& b) {
    return a.x * b.y - a.y * b.x;
}

template <class Real>
Real dot(const BasicPoint<Real>& a, const BasicPoint<Real>& b) {
    return a.x * b.x + a.y * b.y;
}

template <class Real>
Real norm(const BasicPoint<Real>& a) {
    using std::sqrt;
    return sqrt(a.x * a.x + a.y * a.y);
}

template <class Real>
Real dist(const BasicPoint<Real>& a, const BasicPoint<Real>& b) {
    return norm(a - b);
}

// Shortest representation that reads back to the same double.
inline std::string format_double(double v) {
    char buf[32];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

template <class Real>
double to_double(const Real& r) {
    if constexpr (std::is_same_v<Real, double>) return r;
    else return r.template convert_to<double>();
}

template <class Real>
std::string exact_string(const Real& r) {
    if constexpr (std::is_same_v<Real, double>) return format_double(r);
    else return r.str(40, std::ios_base::scientific);
}

} // namespace caylink
