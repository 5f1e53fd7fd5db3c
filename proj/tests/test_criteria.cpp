#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "inj/criteria.hpp"
#include "test_util.hpp"

using Cx = std::complex<double>;
using inj::Box;
using inj::Interval;
using inj::LinearOperator;
using inj::MapSpec;
using inj::MinorSign;
using inj::WitnessPair;

namespace {

const std::vector<std::string> kXY = {"x", "y"};
const double kSqrt2 = std::sqrt(2.0);

MapSpec z_squared() {
    return inj::make_complex_function("x^2 - y^2", "2*x*y", inj::test::unit_square());
}

MapSpec linear_mix(double dz_coeff, double dzbar_coeff) {
    // f = a z + b conj(z): u = (a + b) x, v = (a - b) y
    std::ostringstream u, v;
    u.precision(17);
    v.precision(17);
    u << (dz_coeff + dzbar_coeff) << "*x";
    v << (dz_coeff - dzbar_coeff) << "*y";
    return inj::make_complex_function(u.str(), v.str(), inj::test::unit_square());
}

} // namespace

TEST_CASE("witness pair normalization and degeneracy") {
    const WitnessPair w = WitnessPair::make(Cx(1.0, 0.0), Cx(0.0, 1.0));
    CHECK(std::abs(std::norm(w.w1) + std::norm(w.w2) - 1.0) < 1e-12);
    CHECK(w.delta == doctest::Approx(0.5));
    CHECK(w.valid());

    const WitnessPair bad = WitnessPair::make(Cx(1.0, 0.0), Cx(1.0, 0.0));
    CHECK_FALSE(bad.valid());
    CHECK_THROWS_AS(inj::eq3_margin(z_squared(), bad, Cx(0.5, 0.0)),
                    inj::DegenerateWitness);

    const auto l = WitnessPair::make(Cx(1.0, 2.0), Cx(3.0, 4.0)).matrix();
    CHECK(l(0, 0) == doctest::Approx(1.0 / std::sqrt(30.0)));
    CHECK(l(1, 0) == doctest::Approx(2.0 / std::sqrt(30.0)));
    CHECK(l(0, 1) == doctest::Approx(3.0 / std::sqrt(30.0)));
    CHECK(l(1, 1) == doctest::Approx(4.0 / std::sqrt(30.0)));
}

TEST_CASE("sylvester margin on reference maps") {
    const std::vector<std::string> id_comps = {"x", "y"};
    const MapSpec ident = inj::make_real_map(kXY, id_comps, inj::test::unit_square());
    const LinearOperator eye = LinearOperator::identity(2);
    const double origin[2] = {0.0, 0.0};
    CHECK(inj::sylvester_margin(ident, eye, origin).value.lo == doctest::Approx(2.0));

    // squaring map at z = 1: M = 4 I, minors (4, 16)
    const MapSpec sq = z_squared();
    const double at[2] = {1.0, 0.0};
    CHECK(inj::sylvester_margin(sq, eye, at).value.lo == doctest::Approx(4.0));

    // negative-definite branch: minors of -2I are (-2, 4), signed (2, 4)
    const std::vector<std::string> neg_comps = {"-x", "-y"};
    const MapSpec neg = inj::make_real_map(kXY, neg_comps, inj::test::unit_square());
    const auto m = inj::sylvester_margin(neg, eye, origin, MinorSign::Negative);
    CHECK(m.value.lo == doctest::Approx(2.0));

    LinearOperator singular(2);
    singular(0, 0) = 1.0;
    singular(0, 1) = 2.0;
    singular(1, 0) = 2.0;
    singular(1, 1) = 4.0;
    CHECK_THROWS_AS(inj::sylvester_margin(ident, singular, origin), inj::SingularA);
}

TEST_CASE("sign symmetry: negative branch equals positive branch on -M") {
    inj::RngStream rng(400);
    for (int k = 0; k < 1000; ++k) {
        const int n = 2 + static_cast<int>(rng.below(3));
        inj::SquareMatrix<double> m(n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) m(i, j) = m(j, i) = rng.uniform(-2.0, 2.0);
        inj::SquareMatrix<double> neg(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) neg(i, j) = -m(i, j);
        CHECK(inj::minors_margin(m, MinorSign::Negative) ==
              inj::minors_margin(neg, MinorSign::Positive));
    }
}

TEST_CASE("eq3 margins on the reference functions") {
    const WitnessPair w = WitnessPair::make(Cx(1.0, 0.0), Cx(0.0, 1.0));

    // identity: margin 2 scaled by the 1/sqrt(2) normalization
    const MapSpec ident = linear_mix(1.0, 0.0);
    CHECK(inj::eq3_margin(ident, w, Cx(0.2, 0.3)).value.lo ==
          doctest::Approx(kSqrt2).epsilon(1e-12));

    // conjugation: LHS 0, RHS 2, margin -2 (scaled)
    const MapSpec conj_map = inj::make_complex_function("x", "-y", inj::test::unit_square());
    CHECK(inj::eq3_margin(conj_map, w, Cx(0.0, 0.0)).value.lo ==
          doctest::Approx(-kSqrt2).epsilon(1e-12));

    // f = z + 0.25 conj(z): margin 1.5 (scaled)
    const MapSpec mix = linear_mix(1.0, 0.25);
    CHECK(inj::eq3_margin(mix, w, Cx(-0.4, 0.1)).value.lo ==
          doctest::Approx(1.5 / kSqrt2).epsilon(1e-12));
}

TEST_CASE("eq3 homogeneity before normalization") {
    inj::RngStream rng(500);
    for (int k = 0; k < 2000; ++k) {
        const Cx dz(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
        const Cx dzbar(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
        const Cx w1(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        const Cx w2(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        const double t = rng.uniform(0.1, 5.0);
        const auto base = inj::eq3_sides(dz, dzbar, w1, w2);
        const auto scaled = inj::eq3_sides(dz, dzbar, t * w1, t * w2);
        const double margin = base.lhs - base.rhs;
        const double scaled_margin = scaled.lhs - scaled.rhs;
        CHECK(scaled_margin ==
              doctest::Approx(t * margin).epsilon(1e-10).scale(std::abs(margin) + 1.0));
    }
}

TEST_CASE("mocanu margins and specialization identities") {
    // f = z + 0.5 conj(z), gamma = 0
    CHECK(inj::mocanu_margin(linear_mix(1.0, 0.5), 0.0, inj::MocanuVariant::Standard,
                             Cx(0.1, 0.1))
              .value.lo == doctest::Approx(0.5));
    // identity: margin 1
    CHECK(inj::mocanu_margin(linear_mix(1.0, 0.0), 0.0, inj::MocanuVariant::Standard,
                             Cx(0.0, 0.0))
              .value.lo == doctest::Approx(1.0));
    // f = conj(z) + 0.5 z, conjugate variant: re(dzbar) - |dz| = 1 - 0.5
    CHECK(inj::mocanu_margin(linear_mix(0.5, 1.0), 0.0, inj::MocanuVariant::Conjugate,
                             Cx(0.3, -0.3))
              .value.lo == doctest::Approx(0.5));

    // the two-witness sides collapse to the mocanu sides at
    // w1 = e^{i gamma}, w2 = i e^{i gamma} (unnormalized)
    inj::RngStream rng(600);
    for (int k = 0; k < 2000; ++k) {
        const Cx dz(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
        const Cx dzbar(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
        const double gamma = rng.uniform(0.0, 6.283185307179586);
        const Cx rot = std::polar(1.0, gamma);
        const auto sides = inj::eq3_sides(dz, dzbar, rot, Cx(0.0, 1.0) * rot);
        CHECK(std::abs(sides.lhs - 2.0 * (dz * rot).real()) < 1e-12);
        CHECK(std::abs(sides.rhs - 2.0 * std::abs(dzbar)) < 1e-12);

        // conjugate family: w1 = e^{i gamma}, w2 = -i e^{i gamma}
        const auto csides = inj::eq3_sides(dz, dzbar, rot, Cx(0.0, -1.0) * rot);
        CHECK(std::abs(csides.lhs - 2.0 * (dzbar * std::conj(rot)).real()) < 1e-12);
        CHECK(std::abs(csides.rhs - 2.0 * std::abs(dz)) < 1e-12);
    }
}

TEST_CASE("anww margin with holomorphy check") {
    const MapSpec sq = z_squared();
    CHECK(inj::anww_margin(sq, 0.0, Cx(0.5, 0.2)).value.lo == doctest::Approx(1.0));

    // rotation by e^{i gamma} realigns the derivative of f = iz
    const MapSpec rot = inj::make_complex_function("-y", "x", inj::test::unit_square());
    CHECK(std::abs(inj::anww_margin(rot, 0.0, Cx(0.1, 0.1)).value.lo) < 1e-14);
    CHECK(inj::anww_margin(rot, -1.5707963267948966, Cx(0.1, 0.1)).value.lo ==
          doctest::Approx(1.0));

    // interval mode over the off-axis box: margin >= 2 * 0.1
    const Box box({Interval(0.1, 1.0), Interval(-1.0, 1.0)});
    const auto m = inj::anww_margin(sq, 0.0, box);
    CHECK(m.value.lo == doctest::Approx(0.2).epsilon(1e-9));
    CHECK(m.value.lo <= 0.2);

    // non-holomorphic input is rejected
    const MapSpec conj_map = inj::make_complex_function("x", "-y", inj::test::unit_square());
    CHECK_THROWS_AS(inj::anww_margin(conj_map, 0.0, Cx(0.0, 0.0)), inj::NotHolomorphic);
    CHECK_THROWS_AS(inj::anww_margin(conj_map, 0.0, inj::test::unit_square()),
                    inj::NotHolomorphic);

    // anww equals eq3 with the canonical witness when dzbar = 0:
    // the modulus side vanishes identically
    inj::RngStream rng(700);
    for (int k = 0; k < 500; ++k) {
        const Cx dz(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
        const double gamma = rng.uniform(0.0, 6.283185307179586);
        const Cx r = std::polar(1.0, gamma);
        const auto sides = inj::eq3_sides(dz, Cx(0.0), r, Cx(0.0, 1.0) * r);
        CHECK(sides.rhs == 0.0);
        CHECK(std::abs(sides.lhs - 2.0 * (dz * r).real()) < 1e-12);
    }
}

TEST_CASE("determinant form on the reference functions") {
    const WitnessPair w = WitnessPair::make(Cx(1.0, 0.0), Cx(0.0, 1.0));

    // identity map: matrix 2I scaled by the normalization squared
    const auto id_res = inj::det_form_check(linear_mix(1.0, 0.0), w, Cx(0.0, 0.0));
    CHECK(id_res.det_value == doctest::Approx(4.0 / 2.0));  // 4 * (1/sqrt2)^2 * (1/sqrt2)^2 * 2
    CHECK(id_res.re_df_w1 == doctest::Approx(1.0 / kSqrt2));

    // conjugation: df(w1) = conj(w1), df(w2) = conj(w2)
    const MapSpec conj_map = inj::make_complex_function("x", "-y", inj::test::unit_square());
    const auto c_res = inj::det_form_check(conj_map, w, Cx(0.2, -0.2));
    CHECK(c_res.det_value == doctest::Approx(-4.0 / 2.0));
    CHECK(c_res.det_value < 0.0);  // consistent with the negative margin

    // f = z + 0.25 conj(z): positive det and re df(w1), margin 1.5 > 0
    const auto m_res = inj::det_form_check(linear_mix(1.0, 0.25), w, Cx(0.0, 0.0));
    CHECK(m_res.det_value > 0.0);
    CHECK(m_res.re_df_w1 > 0.0);
    CHECK(m_res.det_value == doctest::Approx(4.0 * 1.25 * 0.75 / 2.0));
}

TEST_CASE("determinant form equals det(J L + L^T J^T) and the squared sides") {
    inj::RngStream rng(800);
    for (int k = 0; k < 10000; ++k) {
        const MapSpec f = inj::test::random_complex_function(rng, inj::test::unit_square());
        const Cx z(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        const WitnessPair w = WitnessPair::make(
            Cx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)),
            Cx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)));

        const auto res = inj::det_form_check(f, w, z);

        // route 1: assemble J L + L^T J^T from the jacobian
        const double at[2] = {z.real(), z.imag()};
        const auto j = inj::jacobian(f, at);
        const auto l = w.matrix();
        const auto jl = j * l;
        const auto sym = jl + jl.transposed();
        const double det_matrix = inj::determinant(sym);
        CHECK(res.det_value ==
              doctest::Approx(det_matrix).epsilon(1e-9).scale(std::abs(det_matrix) + 1.0));

        // route 2: LHS^2 - RHS^2 of the two-witness inequality
        const auto wp = inj::wirtinger(f, z);
        const auto sides = inj::eq3_sides(wp.dz, wp.dzbar, w.w1, w.w2);
        const double diff = sides.lhs * sides.lhs - sides.rhs * sides.rhs;
        CHECK(res.det_value ==
              doctest::Approx(diff).epsilon(1e-9).scale(std::abs(diff) + 1.0));
    }
}

TEST_CASE("squared-form equivalence where the LHS is positive") {
    inj::RngStream rng(900);
    int tested = 0;
    while (tested < 10000) {
        const MapSpec f = inj::test::random_complex_function(rng, inj::test::unit_square());
        const Cx z(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        const WitnessPair w = WitnessPair::make(
            Cx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)),
            Cx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)));
        if (!w.valid()) continue;
        const auto wp = inj::wirtinger(f, z);
        const auto sides = inj::eq3_sides(wp.dz, wp.dzbar, w.w1, w.w2);
        if (sides.lhs <= 0.0) continue;
        const double margin = sides.lhs - sides.rhs;
        if (std::abs(margin) <= 1e-9) continue;
        ++tested;
        const auto res = inj::det_form_check(f, w, z);
        CHECK((margin > 0.0) == (res.det_value > 0.0));
    }
}

TEST_CASE("sylvester margin agrees with the eigenvalue oracle") {
    inj::RngStream rng(1000);
    int tested = 0;
    while (tested < 10000) {
        const int n = 2 + static_cast<int>(rng.below(3));
        std::vector<std::string> vars(kXY.begin(), kXY.end());
        static const std::vector<std::string> all = {"x", "y", "z", "w"};
        vars.assign(all.begin(), all.begin() + n);
        std::vector<std::string> comps;
        inj::MapSpec t;
        t.kind = inj::MapSpec::Kind::RealMap;
        t.variables = vars;
        std::vector<Interval> dims;
        for (int i = 0; i < n; ++i) {
            t.components.push_back(inj::test::random_poly_expr(rng, vars.size(), 3));
            dims.emplace_back(-1.0, 1.0);
        }
        t.domain = Box(std::move(dims));
        const LinearOperator a = inj::test::random_operator(rng, n);
        std::vector<double> at(static_cast<std::size_t>(n));
        for (double& v : at) v = rng.uniform(-1.0, 1.0);

        double margin;
        try {
            margin = inj::sylvester_margin(t, a, at).value.lo;
        } catch (const inj::Error&) {
            continue;
        }
        if (!std::isfinite(margin) || std::abs(margin) <= 1e-9) continue;

        const auto j = inj::jacobian(t, at);
        const auto m = a.transposed() * j + j.transposed() * a;
        const double lam = inj::test::min_eigenvalue_oracle(m);
        ++tested;
        CHECK((margin > 0.0) == (lam > 0.0));
    }
}

TEST_CASE("interval margins bound sampled pointwise margins") {
    inj::RngStream rng(1100);
    const WitnessPair w = WitnessPair::make(Cx(0.9, 0.1), Cx(-0.2, 1.0));
    const LinearOperator eye = LinearOperator::identity(2);
    for (int trial = 0; trial < 40; ++trial) {
        const MapSpec f = inj::test::random_complex_function(rng, inj::test::unit_square());
        const Box box({inj::test::random_subinterval(rng, -1.0, 1.0),
                       inj::test::random_subinterval(rng, -1.0, 1.0)});
        Interval eq3_iv, moc_iv, syl_iv;
        try {
            eq3_iv = inj::eq3_margin(f, w, box).value;
            moc_iv = inj::mocanu_margin(f, 0.7, inj::MocanuVariant::Standard, box).value;
            syl_iv = inj::sylvester_margin(f, eye, box).value;
        } catch (const inj::Error&) {
            continue;
        }
        for (int s = 0; s < 100; ++s) {
            const Cx z(box.dims[0].lo + rng.uniform() * box.dims[0].width(),
                       box.dims[1].lo + rng.uniform() * box.dims[1].width());
            const double at[2] = {z.real(), z.imag()};
            CHECK(inj::eq3_margin(f, w, z).value.lo >= eq3_iv.lo - 1e-12);
            CHECK(inj::mocanu_margin(f, 0.7, inj::MocanuVariant::Standard, z).value.lo >=
                  moc_iv.lo - 1e-12);
            CHECK(inj::sylvester_margin(f, eye, at).value.lo >= syl_iv.lo - 1e-12);
        }
    }
}

TEST_CASE("interval minors enclose point minors for orders 1 through 8") {
    // exercises both the cofactor route (m <= 4) and interval LU (m >= 5)
    inj::RngStream rng(1200);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(8));
        inj::SquareMatrix<double> mid(n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) mid(i, j) = mid(j, i) = rng.uniform(-2.0, 2.0);
        // diagonal dominance on half the trials keeps LU pivots usable
        if (trial % 2 == 0)
            for (int i = 0; i < n; ++i) mid(i, i) += 2.0 * n;
        inj::SquareMatrix<inj::Interval> iv(n);
        const double w = rng.uniform(0.0, 0.05);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                iv(i, j) = Interval(mid(i, j) - w, mid(i, j) + w);
        const auto exact = inj::leading_minors(mid);
        const auto bounds = inj::leading_minors(iv);
        for (int m = 0; m < n; ++m)
            CHECK(bounds[static_cast<std::size_t>(m)].contains(
                exact[static_cast<std::size_t>(m)]));
    }
}

TEST_CASE("segment condition on reference maps") {
    const std::vector<std::string> id_comps = {"x", "y"};
    const MapSpec ident = inj::make_real_map(kXY, id_comps, inj::test::unit_square());
    const LinearOperator eye = LinearOperator::identity(2);
    const double x[2] = {0.1, 0.2}, y[2] = {0.7, -0.4};
    const double d2 = 0.6 * 0.6 + 0.6 * 0.6;
    CHECK(inj::segment_condition(ident, eye, x, y, 9) == doctest::Approx(d2));

    const std::vector<std::string> neg_comps = {"-x", "-y"};
    const MapSpec neg = inj::make_real_map(kXY, neg_comps, inj::test::unit_square());
    CHECK(inj::segment_condition(neg, eye, x, y, 9) == doctest::Approx(-d2));

    // squaring map along the real axis: inner product is 2 * x(t) * |d|^2
    const MapSpec sq = z_squared();
    const double a[2] = {1.0, 0.0}, b[2] = {2.0, 0.0};
    const double v = inj::segment_condition(sq, eye, a, b, 9);
    CHECK(v == doctest::Approx(2.0 * 1.1));  // first interior sample at t = 0.1
    CHECK(v > 2.0);
    CHECK(v < 4.0);

    CHECK_THROWS_AS(inj::segment_condition(sq, eye, a, a, 9), inj::DomainError);
    CHECK_THROWS_AS(inj::segment_condition(sq, eye, a, b, 1), inj::DomainError);
}
