#ifndef INJ_CALCULUS_HPP
#define INJ_CALCULUS_HPP

#include <complex>
#include <span>

#include "inj/expr.hpp"
#include "inj/matrix.hpp"

namespace inj {

// Forward-mode derivatives for a MapSpec.  Each Jacobian column comes from
// one dual evaluation pass seeded with the unit tangent of that variable;
// interval mode runs the same pass over interval-valued duals.

SquareMatrix<double> jacobian(const MapSpec& m, std::span<const double> at);
SquareMatrix<Interval> jacobian(const MapSpec& m, const Box& over);

// Wirtinger derivatives of a complex function f = u + iv:
//   df/dz    = ((u_x + v_y) + i (v_x - u_y)) / 2
//   df/dzbar = ((u_x - v_y) + i (v_x + u_y)) / 2
struct WirtingerPair {
    std::complex<double> dz;
    std::complex<double> dzbar;
    std::complex<double> at;
};

struct WirtingerBox {
    ComplexBox dz;
    ComplexBox dzbar;
    ComplexBox at;
};

WirtingerPair wirtinger(const MapSpec& m, std::complex<double> z);
WirtingerBox wirtinger(const MapSpec& m, const Box& over);

// Real-linear differential df_z(w) = dz * w + dzbar * conj(w).
inline std::complex<double> differential(const WirtingerPair& w, std::complex<double> dir) {
    return w.dz * dir + w.dzbar * std::conj(dir);
}

// Point evaluation of the map as a vector function (u, v for complex kind).
std::vector<double> eval_map(const MapSpec& m, std::span<const double> at);

inline std::complex<double> eval_complex(const MapSpec& m, std::complex<double> z) {
    const double at[2] = {z.real(), z.imag()};
    const std::vector<double> uv = eval_map(m, at);
    return {uv[0], uv[1]};
}

} // namespace inj

#endif
