#ifndef INJ_ORACLE_HPP
#define INJ_ORACLE_HPP

#include <cstdint>
#include <optional>

#include "inj/criteria.hpp"
#include "inj/rng.hpp"

namespace inj {

// Accepted collision pairs must be numerically unambiguous.
inline constexpr double kCollisionTol = 1e-9;
inline constexpr double kSeparationMin = 1e-4;

struct Collision {
    std::vector<double> x1;
    std::vector<double> x2;
    double value_gap = 0.0;   // |f(x1) - f(x2)|
    double separation = 0.0;  // |x1 - x2|
};

struct OracleOptions {
    std::uint64_t pairs = 100000;
    std::uint64_t seed = 0;
    bool parallel = true;
};

// Empirical falsifier: samples random pairs, buckets map values on a hash
// grid to surface near-collisions, refines candidates by damped Newton and
// returns a pair iff |f(x1) - f(x2)| <= kCollisionTol and
// |x1 - x2| >= kSeparationMin.  Absence of a collision proves nothing.
// The result is the collision earliest in the sample stream, independent
// of worker count.
std::optional<Collision> find_collision(const MapSpec& m, const Box& box,
                                        const OracleOptions& opts);

// Plain-loop reference implementation with identical semantics.
std::optional<Collision> find_collision_serial(const MapSpec& m, const Box& box,
                                               const OracleOptions& opts);

struct MonotonicityReport {
    double min_inner = 0.0;
    // The sampled pair attaining the minimum; meaningful as a violation
    // witness when min_inner < 0.
    std::vector<double> x1;
    std::vector<double> x2;
    bool violated() const { return min_inner < 0.0; }
};

// min over sampled pairs of <T(x) - T(y), A(x - y)>.
MonotonicityReport check_relative_monotonicity(const MapSpec& t, const LinearOperator& a,
                                               const Box& box, const OracleOptions& opts);
MonotonicityReport check_relative_monotonicity_serial(const MapSpec& t,
                                                      const LinearOperator& a,
                                                      const Box& box,
                                                      const OracleOptions& opts);

// Central-difference Jacobian, the derivative cross-check oracle.
SquareMatrix<double> fd_jacobian(const MapSpec& m, std::span<const double> at, double step);

} // namespace inj

#endif
