#pragma once

#include <cmath>

namespace gmq {

// Unevaluated double-double: value = hi + lo with |lo| <= ulp(hi)/2.
// Used where cancellation between stencil weights must be resolved well
// below 1e-16 (refined weights, lattice moments, far-field tails).  Only
// the operations the library needs are provided; error bounds follow the
// standard two_sum / two_prod analysis, roughly 1e-31 relative.
struct dd {
    double hi = 0.0;
    double lo = 0.0;

    dd() = default;
    dd(double h) : hi(h), lo(0.0) {}
    dd(double h, double l) : hi(h), lo(l) {}

    explicit operator double() const { return hi + lo; }
};

namespace detail {

inline dd two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

inline dd quick_two_sum(double a, double b) {
    // requires |a| >= |b|
    double s = a + b;
    return {s, b - (s - a)};
}

inline dd two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

} // namespace detail

inline dd operator+(dd a, dd b) {
    dd s = detail::two_sum(a.hi, b.hi);
    s.lo += a.lo + b.lo;
    return detail::quick_two_sum(s.hi, s.lo);
}

inline dd operator-(dd a) { return {-a.hi, -a.lo}; }
inline dd operator-(dd a, dd b) { return a + (-b); }

inline dd operator*(dd a, dd b) {
    dd p = detail::two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return detail::quick_two_sum(p.hi, p.lo);
}

inline dd operator/(dd a, dd b) {
    double q1 = a.hi / b.hi;
    dd r = a - dd(q1) * b;
    double q2 = r.hi / b.hi;
    r = r - dd(q2) * b;
    double q3 = r.hi / b.hi;
    dd q = detail::quick_two_sum(q1, q2);
    return q + dd(q3);
}

inline dd& operator+=(dd& a, dd b) { a = a + b; return a; }
inline dd& operator-=(dd& a, dd b) { a = a - b; return a; }
inline dd& operator*=(dd& a, dd b) { a = a * b; return a; }
inline dd& operator/=(dd& a, dd b) { a = a / b; return a; }

inline dd sqrt(dd a) {
    if (a.hi == 0.0) return {0.0, 0.0};
    double x = std::sqrt(a.hi);
    // one Newton step: x + (a - x^2) / (2x)
    dd r = a - detail::two_prod(x, x);
    return detail::quick_two_sum(x, r.hi / (2.0 * x));
}

inline dd fabs(dd a) { return a.hi < 0.0 ? -a : a; }

// integer power by repeated squaring; exact while the base is exact
inline dd powi(dd a, long long e) {
    if (e < 0) return dd(1.0) / powi(a, -e);
    dd r(1.0), b = a;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

} // namespace gmq
