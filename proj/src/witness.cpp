#include "inj/witness.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>

#include "inj/rng.hpp"

namespace inj {

namespace {

using Cx = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;
constexpr double kGoldenTol = 1e-6;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct SampledDerivatives {
    std::vector<Cx> dz;
    std::vector<Cx> dzbar;
};

SampledDerivatives sample_derivatives(const MapSpec& f) {
    SampledDerivatives s;
    for (Cx z : domain_sample_points(f.domain)) {
        try {
            const WirtingerPair w = wirtinger(f, z);
            s.dz.push_back(w.dz);
            s.dzbar.push_back(w.dzbar);
        } catch (const Error&) {
            // sample outside the function domain: drop it
        }
    }
    return s;
}

double worst_margin(const SampledDerivatives& s, GammaVariant variant, double gamma) {
    const Cx rot = std::polar(1.0, gamma);
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < s.dz.size(); ++i) {
        double v = 0.0;
        switch (variant) {
            case GammaVariant::Mocanu:
                v = (s.dz[i] * rot).real() - std::abs(s.dzbar[i]);
                break;
            case GammaVariant::MocanuConjugate:
                v = (s.dzbar[i] * rot).real() - std::abs(s.dz[i]);
                break;
            case GammaVariant::Anww:
                v = (s.dz[i] * rot).real();
                break;
        }
        worst = std::min(worst, v);
    }
    return worst;
}

double worst_eq3(const SampledDerivatives& s, Cx w1, Cx w2) {
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < s.dz.size(); ++i) {
        const Eq3Sides sides = eq3_sides(s.dz[i], s.dzbar[i], w1, w2);
        worst = std::min(worst, sides.lhs - sides.rhs);
    }
    return worst;
}

// Golden-section maximization of g on [a, b] to kGoldenTol; unimodality is
// heuristic here, which is fine for a candidate search.
double golden_max(const std::function<double(double)>& g, double a, double b) {
    constexpr double inv_phi = 0.6180339887498949;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double g1 = g(x1), g2 = g(x2);
    while (b - a > kGoldenTol) {
        if (g1 >= g2) {
            b = x2;
            x2 = x1;
            g2 = g1;
            x1 = b - inv_phi * (b - a);
            g1 = g(x1);
        } else {
            a = x1;
            x1 = x2;
            g1 = g2;
            x2 = a + inv_phi * (b - a);
            g2 = g(x2);
        }
    }
    return 0.5 * (a + b);
}

// Point on the unit 3-sphere from the spherical chart.
struct SpherePoint {
    Cx w1, w2;
    double delta;
};

SpherePoint sphere_point(const std::array<double, 3>& t) {
    const double a = std::cos(t[0]);
    const double s1 = std::sin(t[0]);
    const double b = s1 * std::cos(t[1]);
    const double s2 = s1 * std::sin(t[1]);
    const double c = s2 * std::cos(t[2]);
    const double d = s2 * std::sin(t[2]);
    SpherePoint p;
    p.w1 = {a, b};
    p.w2 = {c, d};
    p.delta = a * d - c * b;
    return p;
}

} // namespace

std::vector<Cx> domain_sample_points(const Box& domain) {
    if (domain.size() != 2)
        throw DimensionMismatch("witness search requires a 2-dimensional domain");
    const Interval& xs = domain.dims[0];
    const Interval& ys = domain.dims[1];
    std::vector<Cx> pts;
    pts.reserve(17 * 17 + 64);
    for (int i = 0; i < 17; ++i)
        for (int k = 0; k < 17; ++k)
            pts.emplace_back(xs.lo + xs.width() * i / 16.0, ys.lo + ys.width() * k / 16.0);
    RngStream rng(kWitnessSampleSeed);
    for (int i = 0; i < 64; ++i) {
        const double x = rng.uniform(xs.lo, xs.hi);
        const double y = rng.uniform(ys.lo, ys.hi);
        pts.emplace_back(x, y);
    }
    return pts;
}

double sampled_worst_margin(const MapSpec& f, GammaVariant variant, double gamma) {
    return worst_margin(sample_derivatives(f), variant, gamma);
}

double sampled_worst_eq3_margin(const MapSpec& f, const WitnessPair& w) {
    return worst_eq3(sample_derivatives(f), w.w1, w.w2);
}

GammaSearchResult search_gamma(const MapSpec& f, GammaVariant variant, int grid) {
    if (grid < 8) throw DomainError("search_gamma requires grid >= 8");
    const SampledDerivatives s = sample_derivatives(f);
    const auto g = [&](double gamma) { return worst_margin(s, variant, gamma); };

    double best_gamma = 0.0;
    double best_value = kNegInf;
    for (int j = 0; j < grid; ++j) {
        const double gamma = 2.0 * kPi * j / grid;
        const double v = g(gamma);
        if (v > best_value) {
            best_value = v;
            best_gamma = gamma;
        }
    }
    const double cell = 2.0 * kPi / grid;
    const double refined = golden_max(g, best_gamma - cell, best_gamma + cell);
    const double refined_value = g(refined);
    // Prefer the refined angle only on strict improvement, keeping the
    // smallest-angle tie-break of the grid scan.
    GammaSearchResult r;
    if (refined_value > best_value) {
        r.gamma = refined;
        r.margin_estimate = refined_value;
    } else {
        r.gamma = best_gamma;
        r.margin_estimate = best_value;
    }
    return r;
}

WitnessSearchResult search_witness_pair(const MapSpec& f, int starts) {
    if (starts < 1) throw DomainError("search_witness_pair requires starts >= 1");
    const SampledDerivatives s = sample_derivatives(f);

    const auto objective = [&](const std::array<double, 3>& t) {
        const SpherePoint p = sphere_point(t);
        if (std::abs(p.delta) <= kDeltaMin) return kNegInf;
        return worst_eq3(s, p.w1, p.w2);
    };

    RngStream rng(kWitnessSampleSeed ^ 0x5EEDull);
    std::array<double, 3> best_t{};
    double best_value = kNegInf;
    bool any_valid = false;

    for (int start = 0; start < starts; ++start) {
        std::array<double, 3> t{rng.uniform(0.0, kPi), rng.uniform(0.0, kPi),
                                rng.uniform(0.0, 2.0 * kPi)};
        double value = objective(t);
        for (int sweep = 0; sweep < 48; ++sweep) {
            const double before = value;
            // geometrically shrinking line-search brackets: wide sweeps find
            // the basin, narrow ones refine it
            const double h = std::max(2e-5, 0.5 * kPi * std::pow(0.72, sweep));
            for (int coord = 0; coord < 3; ++coord) {
                const auto line = [&](double x) {
                    std::array<double, 3> probe = t;
                    probe[static_cast<std::size_t>(coord)] = x;
                    return objective(probe);
                };
                const double c = t[static_cast<std::size_t>(coord)];
                const double candidate = golden_max(line, c - h, c + h);
                if (line(candidate) > value) {
                    t[static_cast<std::size_t>(coord)] = candidate;
                    value = line(candidate);
                }
            }
            if (!(value > before + 1e-12) && h <= 1e-4) break;
        }
        if (value == kNegInf) continue;
        any_valid = true;
        if (value > best_value ||
            (value == best_value && t < best_t)) {
            best_value = value;
            best_t = t;
        }
    }
    if (!any_valid) throw NoValidWitness();

    const SpherePoint p = sphere_point(best_t);
    WitnessSearchResult r;
    r.w.w1 = p.w1;
    r.w.w2 = p.w2;
    r.w.delta = p.delta;
    r.margin_estimate = worst_eq3(s, p.w1, p.w2);
    return r;
}

} // namespace inj
