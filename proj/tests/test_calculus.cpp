#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "inj/calculus.hpp"
#include "inj/oracle.hpp"
#include "test_util.hpp"

using Cx = std::complex<double>;
using inj::Box;
using inj::Interval;
using inj::MapSpec;

namespace {

const std::vector<std::string> kXY = {"x", "y"};

MapSpec z_squared() {
    return inj::make_complex_function("x^2 - y^2", "2*x*y", inj::test::unit_square());
}

} // namespace

TEST_CASE("jacobian of the identity map") {
    const std::vector<std::string> comps = {"x", "y"};
    const MapSpec m = inj::make_real_map(kXY, comps, inj::test::unit_square());
    const double at[2] = {0.3, -0.7};
    const auto j = inj::jacobian(m, at);
    CHECK(j(0, 0) == 1.0);
    CHECK(j(0, 1) == 0.0);
    CHECK(j(1, 0) == 0.0);
    CHECK(j(1, 1) == 1.0);
}

TEST_CASE("jacobian of the squaring map at 1+2i") {
    const MapSpec m = z_squared();
    const double at[2] = {1.0, 2.0};
    const auto j = inj::jacobian(m, at);
    CHECK(j(0, 0) == doctest::Approx(2.0));
    CHECK(j(0, 1) == doctest::Approx(-4.0));
    CHECK(j(1, 0) == doctest::Approx(4.0));
    CHECK(j(1, 1) == doctest::Approx(2.0));
}

TEST_CASE("jacobian against central differences") {
    const std::vector<std::string> comps = {"x + y^2", "sin(x)"};
    const MapSpec m = inj::make_real_map(
        kXY, comps, Box({Interval(-2.0, 2.0), Interval(-2.0, 2.0)}));
    const double at[2] = {0.0, 1.0};
    const auto j = inj::jacobian(m, at);
    CHECK(j(0, 0) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(j(0, 1) == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(j(1, 0) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(j(1, 1) == doctest::Approx(0.0).epsilon(1e-9));

    const auto fd = inj::fd_jacobian(m, at, 1e-6);
    for (int i = 0; i < 2; ++i)
        for (int c = 0; c < 2; ++c)
            CHECK(std::abs(j(i, c) - fd(i, c)) /
                      std::max({1.0, std::abs(j(i, c)), std::abs(fd(i, c))}) <
                  1e-6);
}

TEST_CASE("wirtinger derivatives of basic functions") {
    const MapSpec sq = z_squared();
    const auto w = inj::wirtinger(sq, Cx(1.0, 2.0));
    CHECK(std::abs(w.dz - Cx(2.0, 4.0)) < 1e-12);
    CHECK(std::abs(w.dzbar) < 1e-12);

    const MapSpec conj_map = inj::make_complex_function("x", "-y", inj::test::unit_square());
    const auto wc = inj::wirtinger(conj_map, Cx(0.3, 0.4));
    CHECK(std::abs(wc.dz) < 1e-15);
    CHECK(std::abs(wc.dzbar - Cx(1.0, 0.0)) < 1e-15);

    // f = z + 0.5 conj(z): u = 1.5 x, v = 0.5 y
    const MapSpec mix = inj::make_complex_function("1.5*x", "0.5*y", inj::test::unit_square());
    const auto wm = inj::wirtinger(mix, Cx(-0.2, 0.9));
    CHECK(std::abs(wm.dz - Cx(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(wm.dzbar - Cx(0.5, 0.0)) < 1e-15);

    // cross-check against finite differences of the partials
    const double at[2] = {-0.2, 0.9};
    const auto fd = inj::fd_jacobian(mix, at, 1e-6);
    const Cx fd_dz(0.5 * (fd(0, 0) + fd(1, 1)), 0.5 * (fd(1, 0) - fd(0, 1)));
    const Cx fd_dzbar(0.5 * (fd(0, 0) - fd(1, 1)), 0.5 * (fd(1, 0) + fd(0, 1)));
    CHECK(std::abs(wm.dz - fd_dz) < 1e-9);
    CHECK(std::abs(wm.dzbar - fd_dzbar) < 1e-9);
}

TEST_CASE("differential examples") {
    inj::WirtingerPair idw;
    idw.dz = Cx(1.0, 0.0);
    idw.dzbar = Cx(0.0, 0.0);
    const Cx w(0.3, -0.8);
    CHECK(std::abs(inj::differential(idw, w) - w) < 1e-15);

    inj::WirtingerPair cw;
    cw.dz = Cx(0.0, 0.0);
    cw.dzbar = Cx(1.0, 0.0);
    CHECK(std::abs(inj::differential(cw, Cx(0.0, 1.0)) - Cx(0.0, -1.0)) < 1e-15);

    const auto wp = inj::wirtinger(z_squared(), Cx(1.0, 2.0));
    CHECK(std::abs(inj::differential(wp, Cx(1.0, 0.0)) - Cx(2.0, 4.0)) < 1e-12);
}

TEST_CASE("differential agrees with the real-linear jacobian action") {
    inj::RngStream rng(314);
    for (int k = 0; k < 2000; ++k) {
        const MapSpec f = inj::test::random_complex_function(rng, inj::test::unit_square());
        const Cx z(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        const Cx dir(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
        const auto w = inj::wirtinger(f, z);
        const Cx via_wirtinger = inj::differential(w, dir);

        const double at[2] = {z.real(), z.imag()};
        const auto j = inj::jacobian(f, at);
        const Cx via_jacobian(j(0, 0) * dir.real() + j(0, 1) * dir.imag(),
                              j(1, 0) * dir.real() + j(1, 1) * dir.imag());
        const double scale = std::max(1.0, std::abs(via_jacobian));
        CHECK(std::abs(via_wirtinger - via_jacobian) / scale < 1e-12);
    }
}

TEST_CASE("cauchy-riemann residual vanishes for holomorphic polynomials") {
    inj::RngStream rng(2718);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> coeffs(1 + rng.below(5));
        for (double& c : coeffs) c = rng.uniform(-2.0, 2.0);
        const MapSpec f = inj::test::holomorphic_poly(coeffs, inj::test::unit_square());
        for (int k = 0; k < 100; ++k) {
            const Cx z(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
            CHECK(std::abs(inj::wirtinger(f, z).dzbar) < 1e-10);
        }
    }
}

TEST_CASE("interval jacobian encloses sampled point jacobians") {
    inj::RngStream rng(161803);
    for (int trial = 0; trial < 50; ++trial) {
        const MapSpec f =
            inj::test::random_complex_function(rng, inj::test::unit_square(), 3, false);
        const Box box({inj::test::random_subinterval(rng, -1.0, 1.0),
                       inj::test::random_subinterval(rng, -1.0, 1.0)});
        inj::SquareMatrix<Interval> enc(2);
        try {
            enc = inj::jacobian(f, box);
        } catch (const inj::Error&) {
            continue;
        }
        for (int s = 0; s < 100; ++s) {
            const double at[2] = {
                box.dims[0].lo + rng.uniform() * box.dims[0].width(),
                box.dims[1].lo + rng.uniform() * box.dims[1].width()};
            const auto j = inj::jacobian(f, at);
            for (int i = 0; i < 2; ++i)
                for (int c = 0; c < 2; ++c) CHECK(enc(i, c).contains(j(i, c)));
        }
    }
}

TEST_CASE("wirtinger box encloses pointwise wirtinger derivatives") {
    const MapSpec sq = z_squared();
    const Box box({Interval(0.1, 1.0), Interval(-1.0, 1.0)});
    const auto wb = inj::wirtinger(sq, box);
    inj::RngStream rng(55);
    for (int s = 0; s < 200; ++s) {
        const Cx z(rng.uniform(0.1, 1.0), rng.uniform(-1.0, 1.0));
        const auto wp = inj::wirtinger(sq, z);
        CHECK(wb.dz.re.contains(wp.dz.real()));
        CHECK(wb.dz.im.contains(wp.dz.imag()));
        CHECK(wb.dzbar.re.contains(wp.dzbar.real()));
        CHECK(wb.dzbar.im.contains(wp.dzbar.imag()));
    }
}
