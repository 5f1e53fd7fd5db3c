#ifndef INJ_WITNESS_HPP
#define INJ_WITNESS_HPP

#include <complex>
#include <vector>

#include "inj/criteria.hpp"

namespace inj {

// Heuristic parameter search.  Rigor comes from the certify pass that
// follows; here the inner "for all z" is replaced by a fixed sample of the
// domain: a 17x17 grid plus 64 pseudo-random points (seed 0xC0FFEE).

inline constexpr std::uint64_t kWitnessSampleSeed = 0xC0FFEE;

enum class GammaVariant { Mocanu, MocanuConjugate, Anww };

std::vector<std::complex<double>> domain_sample_points(const Box& domain);

// Worst-case pointwise margin of the angle criterion over the sample set.
double sampled_worst_margin(const MapSpec& f, GammaVariant variant, double gamma);

// Worst-case pointwise two-witness margin over the sample set.
double sampled_worst_eq3_margin(const MapSpec& f, const WitnessPair& w);

struct GammaSearchResult {
    double gamma = 0.0;
    double margin_estimate = 0.0;  // may be negative: no certifying angle found
};

// Scans `grid` equally spaced angles in [0, 2pi), refines the best cell by
// golden section to 1e-6, and returns the angle maximizing the sampled
// worst-case margin (ties to the smallest angle).
GammaSearchResult search_gamma(const MapSpec& f, GammaVariant variant, int grid);

struct WitnessSearchResult {
    WitnessPair w;
    double margin_estimate = 0.0;
};

// Maximizes the sampled worst-case margin over the unit sphere
// |w1|^2 + |w2|^2 = 1 by coordinate-wise golden section on spherical chart
// coordinates from `starts` seeded initial points.  Degenerate candidates
// (|delta| <= kDeltaMin) are rejected; NoValidWitness if nothing survives.
WitnessSearchResult search_witness_pair(const MapSpec& f, int starts);

} // namespace inj

#endif
