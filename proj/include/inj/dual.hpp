#ifndef INJ_DUAL_HPP
#define INJ_DUAL_HPP

#include <cmath>
#include <complex>
#include <type_traits>

#include "inj/errors.hpp"
#include "inj/interval.hpp"

namespace inj {

// Forward-mode dual number over an arbitrary scalar: value plus one
// directional derivative, propagated by the chain rule.
template <class T>
struct Dual {
    T val{};
    T der{};

    Dual() = default;
    Dual(T v) : val(std::move(v)) {}
    Dual(T v, T d) : val(std::move(v)), der(std::move(d)) {}
};

template <class T>
Dual<T> operator-(const Dual<T>& a) { return {-a.val, -a.der}; }

template <class T>
Dual<T> operator+(const Dual<T>& a, const Dual<T>& b) {
    return {a.val + b.val, a.der + b.der};
}

template <class T>
Dual<T> operator-(const Dual<T>& a, const Dual<T>& b) {
    return {a.val - b.val, a.der - b.der};
}

template <class T>
Dual<T> operator*(const Dual<T>& a, const Dual<T>& b) {
    return {a.val * b.val, a.der * b.val + a.val * b.der};
}

namespace num {

// Construction of a numeric-tower value from a decimal literal.
template <class N>
inline N constant(double c) { return N(c); }

template <>
inline Interval constant<Interval>(double c) { return Interval(c); }

template <class N>
struct is_dual : std::false_type {};
template <class T>
struct is_dual<Dual<T>> : std::true_type {};

// Throws if division by `b` is undefined for the given scalar type.
inline void check_divisor(double b) {
    if (b == 0.0) throw DomainError("division by zero");
}
inline void check_divisor(const std::complex<double>& b) {
    if (b.real() == 0.0 && b.imag() == 0.0) throw DomainError("division by zero");
}
inline void check_divisor(const Interval&) {}    // operator/ throws itself
inline void check_divisor(const ComplexBox&) {}  // operator/ throws itself

// For duals the divisor constraint is on the primal value.
template <class T>
inline void check_divisor(const Dual<T>& b) { check_divisor(b.val); }

} // namespace num

template <class T>
Dual<T> operator/(const Dual<T>& a, const Dual<T>& b) {
    num::check_divisor(b.val);
    T q = a.val / b.val;
    return {q, (a.der - q * b.der) / b.val};
}

// Specializations that construct Dual<T> from a double constant.
namespace num {
template <>
inline Dual<double> constant<Dual<double>>(double c) { return Dual<double>(c); }
template <>
inline Dual<std::complex<double>> constant<Dual<std::complex<double>>>(double c) {
    return Dual<std::complex<double>>(std::complex<double>(c));
}
template <>
inline Dual<Interval> constant<Dual<Interval>>(double c) { return Dual<Interval>(Interval(c)); }
template <>
inline Dual<ComplexBox> constant<Dual<ComplexBox>>(double c) { return Dual<ComplexBox>(ComplexBox(c)); }
} // namespace num

// x^k via repeated squaring for plain scalars; duals use the chain rule so
// the interval specialization keeps its tight sign analysis.
template <class N>
N pow_int(const N& x, int k) {
    if (k < 0) throw DomainError("pow_int: negative exponent");
    N result = num::constant<N>(1.0);
    N base = x;
    while (k > 0) {
        if (k & 1) result = result * base;
        base = base * base;
        k >>= 1;
    }
    return result;
}

template <class T>
Dual<T> pow_int(const Dual<T>& x, int k) {
    using inj::pow_int;
    if (k < 0) throw DomainError("pow_int: negative exponent");
    if (k == 0) return Dual<T>(num::constant<T>(1.0));
    T vk = pow_int(x.val, k);
    T vk1 = pow_int(x.val, k - 1);
    return {vk, num::constant<T>(static_cast<double>(k)) * vk1 * x.der};
}

template <class T>
Dual<T> exp(const Dual<T>& a) {
    using std::exp;
    T e = exp(a.val);
    return {e, e * a.der};
}

template <class T>
Dual<T> sin(const Dual<T>& a) {
    using std::cos;
    using std::sin;
    return {sin(a.val), cos(a.val) * a.der};
}

template <class T>
Dual<T> cos(const Dual<T>& a) {
    using std::cos;
    using std::sin;
    return {cos(a.val), -(sin(a.val) * a.der)};
}

} // namespace inj

#endif
