#include "inj/calculus.hpp"

namespace inj {

namespace {

template <class S>
SquareMatrix<S> jacobian_impl(const MapSpec& m, std::span<const S> at) {
    const int n = m.dimension();
    if (static_cast<int>(at.size()) != n)
        throw DimensionMismatch("evaluation point dimension does not match the map");
    SquareMatrix<S> jac(n);
    std::vector<Dual<S>> bind(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k)
            bind[static_cast<std::size_t>(k)] =
                Dual<S>(at[static_cast<std::size_t>(k)],
                        k == j ? num::constant<S>(1.0) : num::constant<S>(0.0));
        for (int i = 0; i < n; ++i) {
            const Dual<S> r = eval<Dual<S>>(*m.components[static_cast<std::size_t>(i)],
                                            std::span<const Dual<S>>(bind));
            jac(i, j) = r.der;
        }
    }
    return jac;
}

} // namespace

SquareMatrix<double> jacobian(const MapSpec& m, std::span<const double> at) {
    return jacobian_impl<double>(m, at);
}

SquareMatrix<Interval> jacobian(const MapSpec& m, const Box& over) {
    if (over.size() != m.dimension())
        throw DimensionMismatch("box dimension does not match the map");
    return jacobian_impl<Interval>(m, std::span<const Interval>(over.dims));
}

WirtingerPair wirtinger(const MapSpec& m, std::complex<double> z) {
    if (m.kind != MapSpec::Kind::ComplexFunction)
        throw DimensionMismatch("wirtinger derivatives require a complex function");
    const double at[2] = {z.real(), z.imag()};
    const SquareMatrix<double> j = jacobian(m, at);
    const double ux = j(0, 0), uy = j(0, 1), vx = j(1, 0), vy = j(1, 1);
    WirtingerPair w;
    w.dz = {0.5 * (ux + vy), 0.5 * (vx - uy)};
    w.dzbar = {0.5 * (ux - vy), 0.5 * (vx + uy)};
    w.at = z;
    return w;
}

WirtingerBox wirtinger(const MapSpec& m, const Box& over) {
    if (m.kind != MapSpec::Kind::ComplexFunction)
        throw DimensionMismatch("wirtinger derivatives require a complex function");
    const SquareMatrix<Interval> j = jacobian(m, over);
    const Interval ux = j(0, 0), uy = j(0, 1), vx = j(1, 0), vy = j(1, 1);
    WirtingerBox w;
    w.dz = ComplexBox(0.5 * (ux + vy), 0.5 * (vx - uy));
    w.dzbar = ComplexBox(0.5 * (ux - vy), 0.5 * (vx + uy));
    w.at = as_complex_box(over);
    return w;
}

std::vector<double> eval_map(const MapSpec& m, std::span<const double> at) {
    if (static_cast<int>(at.size()) != m.dimension())
        throw DimensionMismatch("evaluation point dimension does not match the map");
    std::vector<double> out;
    out.reserve(m.components.size());
    for (const ExprPtr& c : m.components) out.push_back(eval<double>(*c, at));
    return out;
}

} // namespace inj
