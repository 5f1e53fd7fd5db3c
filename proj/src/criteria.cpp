#include "inj/criteria.hpp"

#include <algorithm>
#include <cmath>

namespace inj {

namespace {

using Cx = std::complex<double>;

ComplexBox point_cbox(Cx z) {
    return ComplexBox(Interval(z.real()), Interval(z.imag()));
}

Box point_box(std::span<const double> at) {
    std::vector<Interval> dims;
    dims.reserve(at.size());
    for (double v : at) dims.emplace_back(v);
    return Box(std::move(dims));
}

Box point_box(Cx z) {
    return Box({Interval(z.real()), Interval(z.imag())});
}

SquareMatrix<Interval> to_interval(const SquareMatrix<double>& a) {
    SquareMatrix<Interval> r(a.order());
    for (int i = 0; i < a.order(); ++i)
        for (int j = 0; j < a.order(); ++j) r(i, j) = Interval(a(i, j));
    return r;
}

} // namespace

WitnessPair WitnessPair::make(Cx raw_w1, Cx raw_w2) {
    const double s = std::sqrt(std::norm(raw_w1) + std::norm(raw_w2));
    if (s == 0.0) throw DegenerateWitness();
    WitnessPair w;
    w.w1 = raw_w1 / s;
    w.w2 = raw_w2 / s;
    w.delta = w.w1.real() * w.w2.imag() - w.w2.real() * w.w1.imag();
    return w;
}

SquareMatrix<double> WitnessPair::matrix() const {
    SquareMatrix<double> l(2);
    l(0, 0) = w1.real();
    l(0, 1) = w2.real();
    l(1, 0) = w1.imag();
    l(1, 1) = w2.imag();
    return l;
}

void require_nonsingular(const LinearOperator& a) {
    if (std::abs(determinant(a)) <= kSingularTol) throw SingularA();
}

double minors_margin(const SquareMatrix<double>& m, MinorSign sign) {
    const std::vector<double> d = leading_minors(m);
    double margin = 0.0;
    for (int k = 0; k < m.order(); ++k) {
        double v = d[static_cast<std::size_t>(k)];
        if (sign == MinorSign::Negative && k % 2 == 0) v = -v;  // (-1)^m, m = k + 1
        margin = k == 0 ? v : std::min(margin, v);
    }
    return margin;
}

Interval minors_margin(const SquareMatrix<Interval>& m, MinorSign sign) {
    const std::vector<Interval> d = leading_minors(m);
    Interval margin;
    for (int k = 0; k < m.order(); ++k) {
        Interval v = d[static_cast<std::size_t>(k)];
        if (sign == MinorSign::Negative && k % 2 == 0) v = -v;
        if (k == 0) {
            margin = v;
        } else {
            // min over m as a function of the point: both bounds are mins
            margin = Interval(std::min(margin.lo, v.lo), std::min(margin.hi, v.hi));
        }
    }
    return margin;
}

Margin sylvester_margin(const MapSpec& t, const LinearOperator& a,
                        std::span<const double> at, MinorSign sign) {
    if (a.order() != t.dimension())
        throw DimensionMismatch("operator order does not match the map dimension");
    require_nonsingular(a);
    const SquareMatrix<double> j = jacobian(t, at);
    const SquareMatrix<double> m = a.transposed() * j + j.transposed() * a;
    const double v = minors_margin(m, sign);
    return {Interval(v), CriterionKind::Sylvester, point_box(at)};
}

Margin sylvester_margin(const MapSpec& t, const LinearOperator& a, const Box& over,
                        MinorSign sign) {
    if (a.order() != t.dimension())
        throw DimensionMismatch("operator order does not match the map dimension");
    require_nonsingular(a);
    const SquareMatrix<Interval> j = jacobian(t, over);
    const SquareMatrix<Interval> ai = to_interval(a);
    const SquareMatrix<Interval> m = ai.transposed() * j + j.transposed() * ai;
    return {minors_margin(m, sign), CriterionKind::Sylvester, over};
}

Eq3Sides eq3_sides(Cx dz, Cx dzbar, Cx w1, Cx w2) {
    const Cx t1 = dz * w1 + dzbar * std::conj(w1);
    const Cx t2 = dz * w2 + dzbar * std::conj(w2);
    const Cx r = dz * (w2 - Cx(0, 1) * w1) + dzbar * std::conj(w2 + Cx(0, 1) * w1);
    return {t1.real() + t2.imag(), std::abs(r)};
}

Eq3SidesBounds eq3_sides(const ComplexBox& dz, const ComplexBox& dzbar, Cx w1, Cx w2) {
    const ComplexBox cw1 = point_cbox(w1), cw2 = point_cbox(w2);
    const ComplexBox t1 = dz * cw1 + dzbar * conj(cw1);
    const ComplexBox t2 = dz * cw2 + dzbar * conj(cw2);
    const ComplexBox r = dz * point_cbox(w2 - Cx(0, 1) * w1) +
                         dzbar * conj(point_cbox(w2 + Cx(0, 1) * w1));
    return {t1.re + t2.im, modulus_bounds(r)};
}

Margin eq3_margin(const MapSpec& f, const WitnessPair& w, Cx at) {
    if (!w.valid()) throw DegenerateWitness();
    const WirtingerPair d = wirtinger(f, at);
    const Eq3Sides s = eq3_sides(d.dz, d.dzbar, w.w1, w.w2);
    return {Interval(s.lhs - s.rhs), CriterionKind::Eq3, point_box(at)};
}

Margin eq3_margin(const MapSpec& f, const WitnessPair& w, const Box& over) {
    if (!w.valid()) throw DegenerateWitness();
    const WirtingerBox d = wirtinger(f, over);
    const Eq3SidesBounds s = eq3_sides(d.dz, d.dzbar, w.w1, w.w2);
    return {s.lhs - s.rhs, CriterionKind::Eq3, over};
}

Margin mocanu_margin(const MapSpec& f, double gamma, MocanuVariant variant, Cx at) {
    const WirtingerPair d = wirtinger(f, at);
    const Cx rot = std::polar(1.0, gamma);
    double v;
    if (variant == MocanuVariant::Standard)
        v = (d.dz * rot).real() - std::abs(d.dzbar);
    else
        v = (d.dzbar * rot).real() - std::abs(d.dz);
    return {Interval(v),
            variant == MocanuVariant::Standard ? CriterionKind::Mocanu
                                               : CriterionKind::MocanuConjugate,
            point_box(at)};
}

Margin mocanu_margin(const MapSpec& f, double gamma, MocanuVariant variant,
                     const Box& over) {
    const WirtingerBox d = wirtinger(f, over);
    const ComplexBox rot = point_cbox(std::polar(1.0, gamma));
    Interval v;
    if (variant == MocanuVariant::Standard)
        v = (d.dz * rot).re - modulus_bounds(d.dzbar);
    else
        v = (d.dzbar * rot).re - modulus_bounds(d.dz);
    return {v,
            variant == MocanuVariant::Standard ? CriterionKind::Mocanu
                                               : CriterionKind::MocanuConjugate,
            over};
}

double max_cr_residual(const MapSpec& f, const Box& over, int grid) {
    if (f.kind != MapSpec::Kind::ComplexFunction)
        throw DimensionMismatch("Cauchy-Riemann residual requires a complex function");
    double worst = 0.0;
    const Interval& xs = over.dims.at(0);
    const Interval& ys = over.dims.at(1);
    for (int i = 0; i < grid; ++i) {
        for (int k = 0; k < grid; ++k) {
            const double fx = grid == 1 ? 0.5 : static_cast<double>(i) / (grid - 1);
            const double fy = grid == 1 ? 0.5 : static_cast<double>(k) / (grid - 1);
            const Cx z(xs.lo + fx * xs.width(), ys.lo + fy * ys.width());
            worst = std::max(worst, std::abs(wirtinger(f, z).dzbar));
        }
    }
    return worst;
}

Margin anww_margin(const MapSpec& f, double gamma, Cx at) {
    const WirtingerPair d = wirtinger(f, at);
    const double residual = std::abs(d.dzbar);
    if (residual > kHoloTol) throw NotHolomorphic(residual);
    const double v = (d.dz * std::polar(1.0, gamma)).real();
    return {Interval(v), CriterionKind::Anww, point_box(at)};
}

Margin anww_margin(const MapSpec& f, double gamma, const Box& over) {
    const double residual = max_cr_residual(f, over);
    if (residual > kHoloTol) throw NotHolomorphic(residual);
    const WirtingerBox d = wirtinger(f, over);
    const ComplexBox rot = point_cbox(std::polar(1.0, gamma));
    return {(d.dz * rot).re, CriterionKind::Anww, over};
}

DetFormResult det_form_check(const MapSpec& f, const WitnessPair& w, Cx at) {
    const WirtingerPair d = wirtinger(f, at);
    const Cx df1 = differential(d, w.w1);
    const Cx df2 = differential(d, w.w2);
    const double off = df2.real() + df1.imag();
    return {4.0 * df1.real() * df2.imag() - off * off, df1.real()};
}

double segment_condition(const MapSpec& t, const LinearOperator& a,
                         std::span<const double> x, std::span<const double> y,
                         int samples) {
    const int n = t.dimension();
    if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n ||
        a.order() != n)
        throw DimensionMismatch("segment endpoints and operator must match the map dimension");
    if (samples < 2) throw DomainError("segment_condition requires samples >= 2");
    std::vector<double> diff(static_cast<std::size_t>(n));
    bool distinct = false;
    for (int i = 0; i < n; ++i) {
        diff[static_cast<std::size_t>(i)] = y[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(i)];
        if (diff[static_cast<std::size_t>(i)] != 0.0) distinct = true;
    }
    if (!distinct) throw DomainError("segment endpoints must be distinct");

    std::vector<double> a_diff(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a_diff[static_cast<std::size_t>(i)] += a(i, j) * diff[static_cast<std::size_t>(j)];

    double best = 0.0;
    std::vector<double> z(static_cast<std::size_t>(n));
    for (int k = 1; k <= samples; ++k) {
        const double tk = static_cast<double>(k) / (samples + 1);
        for (int i = 0; i < n; ++i)
            z[static_cast<std::size_t>(i)] =
                x[static_cast<std::size_t>(i)] + tk * diff[static_cast<std::size_t>(i)];
        const SquareMatrix<double> j = jacobian(t, z);
        double inner = 0.0;
        for (int i = 0; i < n; ++i) {
            double jd = 0.0;
            for (int c = 0; c < n; ++c) jd += j(i, c) * diff[static_cast<std::size_t>(c)];
            inner += jd * a_diff[static_cast<std::size_t>(i)];
        }
        best = k == 1 ? inner : std::min(best, inner);
    }
    return best;
}

} // namespace inj
