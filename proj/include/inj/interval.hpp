#ifndef INJ_INTERVAL_HPP
#define INJ_INTERVAL_HPP

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <ostream>

#include "inj/errors.hpp"

namespace inj {

// Number of ulps every computed endpoint is pushed outward after a
// primitive operation.  Substitutes for directed rounding: each primitive
// performs a handful of correctly-rounded steps, so 4 ulps of slack keeps
// the result a guaranteed enclosure.
inline constexpr int kWideningUlps = 4;

inline double step_down(double x, int ulps = kWideningUlps) {
    if (!std::isfinite(x)) return x;
    for (int i = 0; i < ulps; ++i)
        x = std::nextafter(x, -std::numeric_limits<double>::infinity());
    return x;
}

inline double step_up(double x, int ulps = kWideningUlps) {
    if (!std::isfinite(x)) return x;
    for (int i = 0; i < ulps; ++i)
        x = std::nextafter(x, std::numeric_limits<double>::infinity());
    return x;
}

// Closed interval [lo, hi].  Degenerate point intervals (lo == hi) are
// permitted and used for exact constants.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    Interval() = default;
    explicit Interval(double v) : lo(v), hi(v) {}
    Interval(double l, double h) : lo(l), hi(h) { assert(!(l > h)); }

    static Interval hull(double a, double b) {
        return a <= b ? Interval(a, b) : Interval(b, a);
    }

    double width() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
    // Largest absolute value over the interval.
    double mag() const { return std::max(std::abs(lo), std::abs(hi)); }
    // Smallest absolute value over the interval (0 if it straddles zero).
    double mig() const {
        if (lo > 0.0) return lo;
        if (hi < 0.0) return -hi;
        return 0.0;
    }

    bool contains(double x) const { return lo <= x && x <= hi; }
    bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
    bool contains_zero() const { return lo <= 0.0 && 0.0 <= hi; }
};

inline Interval widen(double lo, double hi) { return Interval(step_down(lo), step_up(hi)); }

inline Interval operator-(const Interval& a) { return Interval(-a.hi, -a.lo); }  // exact

inline Interval operator+(const Interval& a, const Interval& b) {
    return widen(a.lo + b.lo, a.hi + b.hi);
}

inline Interval operator-(const Interval& a, const Interval& b) {
    return widen(a.lo - b.hi, a.hi - b.lo);
}

namespace detail {
// Endpoint product with the 0 * inf indeterminate resolved to 0, which is
// the correct limit for endpoint-combination bounds.
inline double eprod(double a, double b) {
    double p = a * b;
    return std::isnan(p) ? 0.0 : p;
}
} // namespace detail

inline Interval operator*(const Interval& a, const Interval& b) {
    using detail::eprod;
    const double p1 = eprod(a.lo, b.lo), p2 = eprod(a.lo, b.hi);
    const double p3 = eprod(a.hi, b.lo), p4 = eprod(a.hi, b.hi);
    return widen(std::min(std::min(p1, p2), std::min(p3, p4)),
                 std::max(std::max(p1, p2), std::max(p3, p4)));
}

inline Interval operator/(const Interval& a, const Interval& b) {
    if (b.contains_zero()) throw DivisionByZeroInterval();
    const double q1 = a.lo / b.lo, q2 = a.lo / b.hi;
    const double q3 = a.hi / b.lo, q4 = a.hi / b.hi;
    return widen(std::min(std::min(q1, q2), std::min(q3, q4)),
                 std::max(std::max(q1, q2), std::max(q3, q4)));
}

inline Interval operator+(const Interval& a, double b) { return a + Interval(b); }
inline Interval operator+(double a, const Interval& b) { return Interval(a) + b; }
inline Interval operator-(const Interval& a, double b) { return a - Interval(b); }
inline Interval operator-(double a, const Interval& b) { return Interval(a) - b; }
inline Interval operator*(const Interval& a, double b) { return a * Interval(b); }
inline Interval operator*(double a, const Interval& b) { return Interval(a) * b; }
inline Interval operator/(const Interval& a, double b) { return a / Interval(b); }

inline Interval abs(const Interval& a) {  // exact endpoints, no rounding occurs
    if (a.lo >= 0.0) return a;
    if (a.hi <= 0.0) return Interval(-a.hi, -a.lo);
    return Interval(0.0, std::max(-a.lo, a.hi));
}

inline Interval sqr(const Interval& a) {
    const double m = a.mag(), g = a.mig();
    Interval r = widen(g * g, m * m);
    if (r.lo < 0.0) r.lo = 0.0;
    return r;
}

inline Interval sqrt(const Interval& a) {
    if (a.lo < 0.0) throw DomainError("sqrt of an interval with negative lower bound");
    Interval r = widen(std::sqrt(a.lo), std::sqrt(a.hi));
    if (r.lo < 0.0) r.lo = 0.0;
    return r;
}

// x^k for integer k >= 0, tight via even/odd sign analysis.
Interval pow_int(const Interval& a, int k);

Interval exp(const Interval& a);
Interval sin(const Interval& a);
Interval cos(const Interval& a);
Interval sinh(const Interval& a);
Interval cosh(const Interval& a);

inline Interval hull(const Interval& a, const Interval& b) {
    return Interval(std::min(a.lo, b.lo), std::max(a.hi, b.hi));
}

inline std::ostream& operator<<(std::ostream& os, const Interval& a) {
    return os << '[' << a.lo << ", " << a.hi << ']';
}

// Axis-aligned rectangle {x + iy : x in re, y in im} enclosing a set of
// complex values.
struct ComplexBox {
    Interval re;
    Interval im;

    ComplexBox() = default;
    explicit ComplexBox(double v) : re(v), im(0.0) {}
    ComplexBox(Interval r, Interval i) : re(r), im(i) {}
    ComplexBox(double r, double i) : re(r), im(i) {}

    bool contains_origin() const { return re.contains_zero() && im.contains_zero(); }
};

inline ComplexBox operator-(const ComplexBox& a) { return {-a.re, -a.im}; }

inline ComplexBox operator+(const ComplexBox& a, const ComplexBox& b) {
    return {a.re + b.re, a.im + b.im};
}

inline ComplexBox operator-(const ComplexBox& a, const ComplexBox& b) {
    return {a.re - b.re, a.im - b.im};
}

inline ComplexBox operator*(const ComplexBox& a, const ComplexBox& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

inline ComplexBox conj(const ComplexBox& a) { return {a.re, -a.im}; }

// a / b via a * conj(b) / |b|^2.
inline ComplexBox operator/(const ComplexBox& a, const ComplexBox& b) {
    const Interval den = sqr(b.re) + sqr(b.im);
    if (den.contains_zero()) throw DivisionByZeroInterval();
    const ComplexBox num = a * conj(b);
    return {num.re / den, num.im / den};
}

// [min |c|, max |c|] over c in the box; the lower bound is exactly 0 when
// the origin lies inside.
Interval modulus_bounds(const ComplexBox& c);

ComplexBox pow_int(const ComplexBox& a, int k);
ComplexBox exp(const ComplexBox& a);
ComplexBox sin(const ComplexBox& a);
ComplexBox cos(const ComplexBox& a);

inline std::ostream& operator<<(std::ostream& os, const ComplexBox& c) {
    return os << '(' << c.re << " + i*" << c.im << ')';
}

} // namespace inj

#endif
