#ifndef INJ_BOX_HPP
#define INJ_BOX_HPP

#include <vector>

#include "inj/interval.hpp"

namespace inj {

// Axis-aligned box: one closed interval per dimension.  Convex by
// construction, which the certification criteria require of the domain.
struct Box {
    std::vector<Interval> dims;

    Box() = default;
    explicit Box(std::vector<Interval> d) : dims(std::move(d)) {}

    int size() const { return static_cast<int>(dims.size()); }

    // Index of the widest dimension, ties broken by lowest index.
    int widest_dim() const {
        int best = 0;
        double w = dims.empty() ? 0.0 : dims[0].width();
        for (int i = 1; i < size(); ++i) {
            if (dims[i].width() > w) {
                w = dims[i].width();
                best = i;
            }
        }
        return best;
    }

    double max_width() const {
        return dims.empty() ? 0.0 : dims[widest_dim()].width();
    }

    // Bisect along dimension `d` at the midpoint.
    std::pair<Box, Box> split(int d) const {
        Box a = *this, b = *this;
        const double m = dims[d].mid();
        a.dims[d] = Interval(dims[d].lo, m);
        b.dims[d] = Interval(m, dims[d].hi);
        return {std::move(a), std::move(b)};
    }

    bool contains(const std::vector<double>& p) const {
        if (static_cast<int>(p.size()) != size()) return false;
        for (int i = 0; i < size(); ++i)
            if (!dims[i].contains(p[i])) return false;
        return true;
    }
};

// View a two-dimensional box as a rectangle in the complex plane.
inline ComplexBox as_complex_box(const Box& b) {
    return ComplexBox(b.dims.at(0), b.dims.at(1));
}

} // namespace inj

#endif
