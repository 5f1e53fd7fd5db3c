#include "inj/interval.hpp"

#include <cmath>

namespace inj {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kHalfPi = 0.5 * kPi;

// Beyond this magnitude the floating-point argument reduction for the
// critical-point test is no longer trustworthy; fall back to [-1, 1].
constexpr double kTrigArgLimit = 1e15;

// Slack used when testing whether a trig critical point lies inside the
// argument interval.  Errs toward including the extremum, which only
// widens the result.
inline double crit_slack(const Interval& a) {
    return 1e-9 * std::max(1.0, a.mag());
}

// Does some point p = offset + k * 2pi (k integer) lie in [a.lo - s, a.hi + s]?
bool has_critical_point(const Interval& a, double offset, double s) {
    const double k = std::ceil((a.lo - s - offset) / kTwoPi);
    return offset + k * kTwoPi <= a.hi + s;
}

inline Interval clamp_unit(Interval r) {
    if (r.lo < -1.0) r.lo = -1.0;
    if (r.hi > 1.0) r.hi = 1.0;
    return r;
}

} // namespace

Interval pow_int(const Interval& a, int k) {
    if (k < 0) throw DomainError("pow_int: negative exponent");
    if (k == 0) return Interval(1.0);
    if (k == 1) return a;
    if (k % 2 == 0) {
        // even power: minimum at the mignitude, maximum at the magnitude
        const double m = a.mag(), g = a.mig();
        Interval r = widen(std::pow(g, k), std::pow(m, k));
        if (r.lo < 0.0) r.lo = 0.0;
        return r;
    }
    // odd power: monotone increasing
    return widen(std::pow(a.lo, k), std::pow(a.hi, k));
}

Interval exp(const Interval& a) {
    Interval r = widen(std::exp(a.lo), std::exp(a.hi));
    if (r.lo < 0.0) r.lo = 0.0;
    return r;
}

Interval sin(const Interval& a) {
    if (a.width() >= kTwoPi || a.mag() > kTrigArgLimit) return Interval(-1.0, 1.0);
    const double s = crit_slack(a);
    const double slo = std::sin(a.lo), shi = std::sin(a.hi);
    double lo = std::min(slo, shi), hi = std::max(slo, shi);
    if (has_critical_point(a, kHalfPi, s)) hi = 1.0;
    if (has_critical_point(a, -kHalfPi, s)) lo = -1.0;
    return clamp_unit(widen(lo, hi));
}

Interval cos(const Interval& a) {
    if (a.width() >= kTwoPi || a.mag() > kTrigArgLimit) return Interval(-1.0, 1.0);
    const double s = crit_slack(a);
    const double clo = std::cos(a.lo), chi = std::cos(a.hi);
    double lo = std::min(clo, chi), hi = std::max(clo, chi);
    if (has_critical_point(a, 0.0, s)) hi = 1.0;
    if (has_critical_point(a, kPi, s)) lo = -1.0;
    return clamp_unit(widen(lo, hi));
}

Interval sinh(const Interval& a) {  // monotone increasing
    return widen(std::sinh(a.lo), std::sinh(a.hi));
}

Interval cosh(const Interval& a) {  // even, minimum 1 at 0
    Interval r = widen(std::cosh(a.mig()), std::cosh(a.mag()));
    if (r.lo < 1.0) r.lo = 1.0;
    return r;
}

Interval modulus_bounds(const ComplexBox& c) {
    const double mx = c.re.mag(), my = c.im.mag();
    const double hi = step_up(std::sqrt(mx * mx + my * my));
    if (c.contains_origin()) return Interval(0.0, hi);
    const double dx = c.re.mig(), dy = c.im.mig();
    double lo = step_down(std::sqrt(dx * dx + dy * dy));
    if (lo < 0.0) lo = 0.0;
    return Interval(lo, hi);
}

ComplexBox pow_int(const ComplexBox& a, int k) {
    if (k < 0) throw DomainError("pow_int: negative exponent");
    ComplexBox result(Interval(1.0), Interval(0.0));
    ComplexBox base = a;
    while (k > 0) {
        if (k & 1) result = result * base;
        base = base * base;
        k >>= 1;
    }
    return result;
}

ComplexBox exp(const ComplexBox& a) {
    const Interval ex = exp(a.re);
    return {ex * cos(a.im), ex * sin(a.im)};
}

ComplexBox sin(const ComplexBox& a) {
    return {sin(a.re) * cosh(a.im), cos(a.re) * sinh(a.im)};
}

ComplexBox cos(const ComplexBox& a) {
    return {cos(a.re) * cosh(a.im), -(sin(a.re) * sinh(a.im))};
}

} // namespace inj
