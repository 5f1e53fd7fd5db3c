#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "inj/certify.hpp"
#include "test_util.hpp"

using inj::Box;
using inj::Certificate;
using inj::CertifyOptions;
using inj::Criterion;
using inj::CriterionAnww;
using inj::CriterionMocanu;
using inj::CriterionSylvester;
using inj::Interval;
using inj::LinearOperator;
using inj::MapSpec;
using inj::Verdict;

namespace {

MapSpec z_squared(Box domain) {
    return inj::make_complex_function("x^2 - y^2", "2*x*y", std::move(domain));
}

CertifyOptions quick_opts(std::uint64_t pairs = 20000, std::uint64_t seed = 9) {
    CertifyOptions o;
    o.oracle.pairs = pairs;
    o.oracle.seed = seed;
    return o;
}

bool same_certificate(const Certificate& a, const Certificate& b) {
    return a.verdict == b.verdict && a.criterion == b.criterion &&
           a.margin_lower_bound == b.margin_lower_bound &&
           a.boxes_processed == b.boxes_processed &&
           a.max_depth_reached == b.max_depth_reached && a.note == b.note &&
           a.refutation.has_value() == b.refutation.has_value() &&
           (!a.refutation || (a.refutation->x1 == b.refutation->x1 &&
                              a.refutation->x2 == b.refutation->x2));
}

} // namespace

TEST_CASE("identity certifies in one box") {
    const MapSpec ident = inj::make_complex_function("x", "y", inj::test::unit_square());
    const Certificate cert = certify(ident, CriterionAnww{0.0}, quick_opts());
    CHECK(cert.verdict == Verdict::Certified);
    REQUIRE(cert.margin_lower_bound.has_value());
    CHECK(*cert.margin_lower_bound == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(*cert.margin_lower_bound <= 1.0);
    CHECK(cert.boxes_processed == 1);
    CHECK(cert.max_depth_reached == 0);
}

TEST_CASE("squaring map on a sign-straddling box is refuted via a collision") {
    const MapSpec sq = z_squared(inj::test::unit_square());
    const Certificate cert = certify(sq, CriterionAnww{0.0}, quick_opts());
    CHECK(cert.verdict == Verdict::Refuted);
    REQUIRE(cert.refutation.has_value());
    CHECK(cert.refutation->value_gap <= inj::kCollisionTol);
    CHECK(cert.refutation->separation >= inj::kSeparationMin);
}

TEST_CASE("squaring map certifies off the axis with the expected bound") {
    const MapSpec sq = z_squared(Box({Interval(0.1, 1.0), Interval(-1.0, 1.0)}));
    const Certificate cert = certify(sq, CriterionAnww{0.0}, quick_opts());
    CHECK(cert.verdict == Verdict::Certified);
    REQUIRE(cert.margin_lower_bound.has_value());
    CHECK(*cert.margin_lower_bound == doctest::Approx(0.2).epsilon(1e-9));
    CHECK(*cert.margin_lower_bound <= 0.2);
}

TEST_CASE("verify_box margins match the criterion dispatch") {
    const MapSpec sq = z_squared(Box({Interval(0.1, 1.0), Interval(-1.0, 1.0)}));
    const inj::Margin m = verify_box(sq, Criterion(CriterionAnww{0.0}), sq.domain);
    CHECK(m.value.lo == doctest::Approx(0.2).epsilon(1e-9));

    const MapSpec ident = inj::make_complex_function("x", "y", inj::test::unit_square());
    const inj::Margin s = verify_box(
        ident, Criterion(CriterionSylvester{LinearOperator::identity(2), inj::MinorSign::Positive}),
        ident.domain);
    CHECK(s.value.lo == doctest::Approx(2.0).epsilon(1e-12));

    const inj::Margin straddle =
        verify_box(z_squared(inj::test::unit_square()), Criterion(CriterionAnww{0.0}),
                   inj::test::unit_square());
    CHECK(straddle.value.lo <= 0.0);
    CHECK(straddle.value.hi >= 0.0);
}

TEST_CASE("an injective map that fails the criterion stays UNKNOWN") {
    // f = z + 1.1 conj(z) is linear with determinant 1 - 1.21 < 0: injective,
    // but the margin 1 - 1.1 is negative everywhere.
    const MapSpec f = inj::make_complex_function("2.1*x", "-0.1*y", inj::test::unit_square());
    const Certificate cert =
        certify(f, CriterionMocanu{0.0, inj::MocanuVariant::Standard}, quick_opts(50000));
    CHECK(cert.verdict == Verdict::Unknown);
    CHECK_FALSE(cert.refutation.has_value());
    CHECK(!cert.note.empty());
}

TEST_CASE("non-holomorphic input surfaces as UNKNOWN under anww") {
    const MapSpec conj_map = inj::make_complex_function("x", "-y", inj::test::unit_square());
    const Certificate cert = certify(conj_map, CriterionAnww{0.0}, quick_opts());
    CHECK(cert.verdict == Verdict::Unknown);
    CHECK(cert.note.find("holomorphy") != std::string::npos);
}

TEST_CASE("budget misconfiguration and exhaustion") {
    const MapSpec sq = z_squared(Box({Interval(0.001, 1.0), Interval(-1.0, 1.0)}));
    CertifyOptions bad = quick_opts();
    bad.budget.max_boxes = 0;
    CHECK_THROWS_AS(certify(sq, CriterionAnww{0.0}, bad), inj::BudgetMisconfigured);

    // mocanu on the squaring map needs subdivision; a tiny budget gives UNKNOWN
    CertifyOptions tiny = quick_opts();
    tiny.budget.max_depth = 2;
    const MapSpec hard = z_squared(Box({Interval(0.05, 1.0), Interval(-1.0, 1.0)}));
    const Certificate cert =
        certify(hard, CriterionMocanu{0.0, inj::MocanuVariant::Standard}, tiny);
    CHECK(cert.verdict == Verdict::Unknown);
}

TEST_CASE("monotone refinement: deeper budgets never loosen the bound") {
    // interval overestimation of |dzbar| forces real subdivision here
    const MapSpec sq = z_squared(Box({Interval(0.3, 1.0), Interval(-0.4, 0.4)}));
    double previous = -1e300;
    for (int depth : {3, 5, 8, 12}) {
        CertifyOptions o = quick_opts();
        o.budget.max_depth = depth;
        const Certificate cert =
            certify(sq, CriterionMocanu{0.0, inj::MocanuVariant::Standard}, o);
        if (cert.verdict == Verdict::Certified) {
            REQUIRE(cert.margin_lower_bound.has_value());
            CHECK(*cert.margin_lower_bound >= previous);
            previous = *cert.margin_lower_bound;
        }
    }
    CHECK(previous > 0.0);  // the deepest run certified
}

TEST_CASE("determinism: identical inputs and both execution modes agree") {
    const MapSpec sq = z_squared(Box({Interval(0.05, 1.0), Interval(-1.0, 1.0)}));
    const CertifyOptions o = quick_opts();
    const Certificate a = certify(sq, CriterionAnww{0.0}, o);
    const Certificate b = certify(sq, CriterionAnww{0.0}, o);
    const Certificate c = certify_serial(sq, CriterionAnww{0.0}, o);
    CHECK(same_certificate(a, b));
    CHECK(same_certificate(a, c));

    const MapSpec ref = z_squared(inj::test::unit_square());
    const Certificate r1 = certify(ref, CriterionAnww{0.0}, o);
    const Certificate r2 = certify_serial(ref, CriterionAnww{0.0}, o);
    CHECK(same_certificate(r1, r2));
}

TEST_CASE("two-witness criterion certifies conjugation with the right pair") {
    // conj(z) is injective; the witness family (1, -i)/sqrt(2) certifies it
    const MapSpec conj_map = inj::make_complex_function("x", "-y", inj::test::unit_square());
    const inj::WitnessPair w =
        inj::WitnessPair::make(std::complex<double>(1.0, 0.0), std::complex<double>(0.0, -1.0));
    const Certificate cert = certify(conj_map, inj::CriterionEq3{w}, quick_opts());
    CHECK(cert.verdict == Verdict::Certified);
    REQUIRE(cert.margin_lower_bound.has_value());
    CHECK(*cert.margin_lower_bound == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));

    // the canonical pair (1, i)/sqrt(2) instead sees a negative margin
    // everywhere; conjugation is injective, so the verdict stays UNKNOWN
    const inj::WitnessPair bad =
        inj::WitnessPair::make(std::complex<double>(1.0, 0.0), std::complex<double>(0.0, 1.0));
    const Certificate anti = certify(conj_map, inj::CriterionEq3{bad}, quick_opts());
    CHECK(anti.verdict == Verdict::Unknown);
    CHECK_FALSE(anti.refutation.has_value());
}

TEST_CASE("sylvester certification in higher dimensions") {
    const std::vector<std::string> vars = {"x", "y", "z", "w"};
    const std::vector<std::string> comps = {"x + 0.1*sin(y)", "y + 0.1*sin(z)",
                                            "z + 0.1*sin(w)", "w + 0.1*sin(x)"};
    std::vector<inj::Interval> dims(4, Interval(-1.0, 1.0));
    const MapSpec t = inj::make_real_map(vars, comps, Box(std::move(dims)));
    const Certificate cert = certify(
        t, inj::CriterionSylvester{LinearOperator::identity(4), inj::MinorSign::Positive},
        quick_opts());
    CHECK(cert.verdict == Verdict::Certified);
    REQUIRE(cert.margin_lower_bound.has_value());
    CHECK(*cert.margin_lower_bound > 0.0);
}

TEST_CASE("certified instances survive the collision oracle") {
    // light version of the end-to-end soundness gate
    inj::RngStream rng(12);
    int certified = 0;
    for (int trial = 0; trial < 40 && certified < 5; ++trial) {
        std::vector<double> coeffs = {0.0, rng.uniform(0.5, 2.0), rng.uniform(-0.3, 0.3),
                                      rng.uniform(-0.2, 0.2)};
        const double cx = rng.uniform(-0.5, 0.5), cy = rng.uniform(-0.5, 0.5);
        const Box box({Interval(cx - 0.3, cx + 0.3), Interval(cy - 0.3, cy + 0.3)});
        const MapSpec f = inj::test::holomorphic_poly(coeffs, box);
        const Certificate cert = certify(f, CriterionAnww{0.0}, quick_opts());
        if (cert.verdict != Verdict::Certified) continue;
        ++certified;
        inj::OracleOptions oo;
        oo.pairs = 20000;
        oo.seed = 77 + static_cast<std::uint64_t>(trial);
        CHECK_FALSE(inj::find_collision(f, box, oo).has_value());
    }
    CHECK(certified > 0);
}
