#ifndef INJ_HOLO_HPP
#define INJ_HOLO_HPP

#include <string_view>

#include "inj/expr.hpp"

namespace inj {

// Expansion of a real-coefficient polynomial in z into the component pair
// (u, v) over x, y, so holomorphic inputs can be entered as a single
// formula.  Anything that is not a polynomial in z (transcendental calls,
// division by a non-constant) is rejected with ConfigError.
struct HoloExpansion {
    ExprPtr u;
    ExprPtr v;
};

HoloExpansion expand_holomorphic(std::string_view z_poly_source);

} // namespace inj

#endif
