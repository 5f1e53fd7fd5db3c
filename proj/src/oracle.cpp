#include "inj/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

namespace inj {

namespace {

constexpr int kNewtonMaxIter = 50;
constexpr int kNewtonMaxHalvings = 8;
constexpr std::size_t kMaxGapCandidates = 256;
constexpr std::size_t kMaxBucketCandidates = 128;
constexpr std::size_t kMaxBucketScan = 8;

double norm2(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

// Coordinates of sample point `p` in the box; pure function of (seed, p).
std::vector<double> sample_point(const CounterRng& rng, const Box& box, std::uint64_t p) {
    const int n = box.size();
    std::vector<double> x(static_cast<std::size_t>(n));
    for (int d = 0; d < n; ++d) {
        const Interval& iv = box.dims[static_cast<std::size_t>(d)];
        x[static_cast<std::size_t>(d)] =
            rng.uniform(p * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(d),
                        iv.lo, iv.hi);
    }
    return x;
}

bool valid_value(std::span<const double> v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

// Solve the (m x m) system s * y = r by Gaussian elimination with partial
// pivoting; false when singular.
bool solve_small(std::vector<double>& s, std::vector<double>& y, int m) {
    for (int k = 0; k < m; ++k) {
        int pivot = k;
        double best = std::abs(s[static_cast<std::size_t>(k * m + k)]);
        for (int i = k + 1; i < m; ++i) {
            const double cand = std::abs(s[static_cast<std::size_t>(i * m + k)]);
            if (cand > best) {
                best = cand;
                pivot = i;
            }
        }
        if (best < 1e-300) return false;
        if (pivot != k) {
            for (int j = 0; j < m; ++j)
                std::swap(s[static_cast<std::size_t>(k * m + j)],
                          s[static_cast<std::size_t>(pivot * m + j)]);
            std::swap(y[static_cast<std::size_t>(k)], y[static_cast<std::size_t>(pivot)]);
        }
        const double p = s[static_cast<std::size_t>(k * m + k)];
        for (int i = k + 1; i < m; ++i) {
            const double f = s[static_cast<std::size_t>(i * m + k)] / p;
            if (f == 0.0) continue;
            for (int j = k; j < m; ++j)
                s[static_cast<std::size_t>(i * m + j)] -= f * s[static_cast<std::size_t>(k * m + j)];
            y[static_cast<std::size_t>(i)] -= f * y[static_cast<std::size_t>(k)];
        }
    }
    for (int i = m - 1; i >= 0; --i) {
        double acc = y[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < m; ++j)
            acc -= s[static_cast<std::size_t>(i * m + j)] * y[static_cast<std::size_t>(j)];
        y[static_cast<std::size_t>(i)] = acc / s[static_cast<std::size_t>(i * m + i)];
    }
    return true;
}

void clamp_to_box(std::vector<double>& x, const Box& box) {
    for (int d = 0; d < box.size(); ++d) {
        const Interval& iv = box.dims[static_cast<std::size_t>(d)];
        double& v = x[static_cast<std::size_t>(d)];
        v = std::clamp(v, iv.lo, iv.hi);
    }
}

// Penalty-free Gauss-Newton polish of a pair that already meets both
// thresholds.  Returns false when the pair collapses onto the diagonal,
// which unmasks tolerance-only pseudo-collisions near critical points.
bool polish(const MapSpec& m, const Box& box, std::vector<double>& x1,
            std::vector<double>& x2) {
    const int n = m.dimension();
    for (int iter = 0; iter < 20; ++iter) {
        if (distance(x1, x2) < kSeparationMin) return false;
        std::vector<double> r;
        try {
            const std::vector<double> f1 = eval_map(m, x1);
            const std::vector<double> f2 = eval_map(m, x2);
            r.assign(static_cast<std::size_t>(n), 0.0);
            for (int i = 0; i < n; ++i)
                r[static_cast<std::size_t>(i)] =
                    f1[static_cast<std::size_t>(i)] - f2[static_cast<std::size_t>(i)];
        } catch (const Error&) {
            return false;
        }
        const double rnorm = norm2(r);

        SquareMatrix<double> j1(n), j2(n);
        try {
            j1 = jacobian(m, x1);
            j2 = jacobian(m, x2);
        } catch (const Error&) {
            return false;
        }
        const int cols = 2 * n;
        std::vector<double> jac(static_cast<std::size_t>(n * cols), 0.0);
        for (int i = 0; i < n; ++i)
            for (int d = 0; d < n; ++d) {
                jac[static_cast<std::size_t>(i * cols + d)] = j1(i, d);
                jac[static_cast<std::size_t>(i * cols + n + d)] = -j2(i, d);
            }
        std::vector<double> jjt(static_cast<std::size_t>(n * n), 0.0);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                double acc = 0.0;
                for (int c = 0; c < cols; ++c)
                    acc += jac[static_cast<std::size_t>(i * cols + c)] *
                           jac[static_cast<std::size_t>(k * cols + c)];
                jjt[static_cast<std::size_t>(i * n + k)] = acc;
            }
        std::vector<double> y = r;
        if (!solve_small(jjt, y, n)) {
            // no usable step; an already-exact collision stands as it is
            return rnorm <= kCollisionTol;
        }
        bool moved = false;
        for (int d = 0; d < n; ++d) {
            double s1 = 0.0, s2 = 0.0;
            for (int i = 0; i < n; ++i) {
                s1 += jac[static_cast<std::size_t>(i * cols + d)] * y[static_cast<std::size_t>(i)];
                s2 += jac[static_cast<std::size_t>(i * cols + n + d)] * y[static_cast<std::size_t>(i)];
            }
            x1[static_cast<std::size_t>(d)] -= s1;
            x2[static_cast<std::size_t>(d)] -= s2;
            if (s1 != 0.0 || s2 != 0.0) moved = true;
        }
        clamp_to_box(x1, box);
        clamp_to_box(x2, box);
        if (!moved) break;
    }
    return distance(x1, x2) >= kSeparationMin;
}

// Damped min-norm Gauss-Newton on f(x1) - f(x2) = 0 with a penalty that
// keeps the iterate off the diagonal.  Candidates that fail to converge
// are discarded so the oracle never reports a spurious collision.
std::optional<Collision> refine_candidate(const MapSpec& m, const Box& box,
                                          std::vector<double> x1, std::vector<double> x2) {
    const int n = m.dimension();
    const double sep_target = 2.0 * kSeparationMin;

    auto residual = [&](const std::vector<double>& a, const std::vector<double>& b,
                        std::vector<double>& r, bool& penalty_active) -> bool {
        try {
            const std::vector<double> fa = eval_map(m, a);
            const std::vector<double> fb = eval_map(m, b);
            if (!valid_value(fa) || !valid_value(fb)) return false;
            r.assign(static_cast<std::size_t>(n + 1), 0.0);
            for (int i = 0; i < n; ++i)
                r[static_cast<std::size_t>(i)] = fa[static_cast<std::size_t>(i)] -
                                                 fb[static_cast<std::size_t>(i)];
            const double sep = distance(a, b);
            penalty_active = sep < sep_target;
            if (penalty_active) r[static_cast<std::size_t>(n)] = sep_target - sep;
            return true;
        } catch (const Error&) {
            return false;
        }
    };

    std::vector<double> r;
    bool penalty = false;
    if (!residual(x1, x2, r, penalty)) return std::nullopt;
    double rnorm = norm2(r);

    for (int iter = 0; iter < kNewtonMaxIter; ++iter) {
        const double sep = distance(x1, x2);
        if (norm2(std::span<const double>(r.data(), static_cast<std::size_t>(n))) <=
                kCollisionTol &&
            sep >= kSeparationMin) {
            // Tolerance alone can be met spuriously near critical points
            // (think x^3 around the origin).  A genuine collision survives
            // penalty-free polishing; a pseudo-collision collapses onto the
            // diagonal and fails the separation threshold.
            if (!polish(m, box, x1, x2)) return std::nullopt;
            const double psep = distance(x1, x2);
            const std::vector<double> f1 = eval_map(m, x1);
            const std::vector<double> f2 = eval_map(m, x2);
            std::vector<double> gap(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i)
                gap[static_cast<std::size_t>(i)] = f1[static_cast<std::size_t>(i)] -
                                                   f2[static_cast<std::size_t>(i)];
            Collision c;
            c.x1 = x1;
            c.x2 = x2;
            c.value_gap = norm2(gap);
            c.separation = psep;
            if (c.value_gap <= kCollisionTol && c.separation >= kSeparationMin &&
                box.contains(x1) && box.contains(x2))
                return c;
            return std::nullopt;
        }

        SquareMatrix<double> j1(n), j2(n);
        try {
            j1 = jacobian(m, x1);
            j2 = jacobian(m, x2);
        } catch (const Error&) {
            return std::nullopt;
        }

        // Augmented Jacobian rows: n residual rows [J1, -J2], plus the
        // separation-penalty row when active.
        const int rows = penalty ? n + 1 : n;
        const int cols = 2 * n;
        std::vector<double> jac(static_cast<std::size_t>(rows * cols), 0.0);
        for (int i = 0; i < n; ++i)
            for (int d = 0; d < n; ++d) {
                jac[static_cast<std::size_t>(i * cols + d)] = j1(i, d);
                jac[static_cast<std::size_t>(i * cols + n + d)] = -j2(i, d);
            }
        if (penalty) {
            const double sd = std::max(sep, 1e-12);
            for (int d = 0; d < n; ++d) {
                const double u = (x1[static_cast<std::size_t>(d)] -
                                  x2[static_cast<std::size_t>(d)]) / sd;
                jac[static_cast<std::size_t>(n * cols + d)] = -u;
                jac[static_cast<std::size_t>(n * cols + n + d)] = u;
            }
        }

        // Min-norm step: delta = -J^T (J J^T)^{-1} r.
        std::vector<double> jjt(static_cast<std::size_t>(rows * rows), 0.0);
        for (int i = 0; i < rows; ++i)
            for (int k = 0; k < rows; ++k) {
                double acc = 0.0;
                for (int c = 0; c < cols; ++c)
                    acc += jac[static_cast<std::size_t>(i * cols + c)] *
                           jac[static_cast<std::size_t>(k * cols + c)];
                jjt[static_cast<std::size_t>(i * rows + k)] = acc;
            }
        std::vector<double> y(r.begin(), r.begin() + rows);
        if (!solve_small(jjt, y, rows)) return std::nullopt;

        std::vector<double> step(static_cast<std::size_t>(cols), 0.0);
        for (int c = 0; c < cols; ++c) {
            double acc = 0.0;
            for (int i = 0; i < rows; ++i)
                acc += jac[static_cast<std::size_t>(i * cols + c)] * y[static_cast<std::size_t>(i)];
            step[static_cast<std::size_t>(c)] = -acc;
        }

        // Damped line search: halve on residual increase.
        double lambda = 1.0;
        bool improved = false;
        for (int h = 0; h <= kNewtonMaxHalvings; ++h) {
            std::vector<double> n1 = x1, n2 = x2;
            for (int d = 0; d < n; ++d) {
                n1[static_cast<std::size_t>(d)] += lambda * step[static_cast<std::size_t>(d)];
                n2[static_cast<std::size_t>(d)] += lambda * step[static_cast<std::size_t>(n + d)];
            }
            clamp_to_box(n1, box);
            clamp_to_box(n2, box);
            std::vector<double> rn;
            bool pn = false;
            if (residual(n1, n2, rn, pn)) {
                const double rnn = norm2(rn);
                if (rnn < rnorm) {
                    x1 = std::move(n1);
                    x2 = std::move(n2);
                    r = std::move(rn);
                    penalty = pn;
                    rnorm = rnn;
                    improved = true;
                    break;
                }
            }
            lambda *= 0.5;
        }
        if (!improved) return std::nullopt;
    }
    return std::nullopt;
}

// Hash of the quantized value vector.
std::uint64_t cell_key(std::span<const double> v, double cell) {
    std::uint64_t h = 1469598103934665603ull;
    for (double x : v) {
        const auto q = static_cast<std::int64_t>(std::floor(x / cell));
        auto u = static_cast<std::uint64_t>(q);
        for (int b = 0; b < 8; ++b) {
            h ^= (u >> (8 * b)) & 0xffu;
            h *= 1099511628211ull;
        }
    }
    return h;
}

struct Candidate {
    std::uint64_t first;   // earlier point index
    std::uint64_t second;  // later point index
};

std::optional<Collision> find_collision_impl(const MapSpec& m, const Box& box,
                                             const OracleOptions& opts, bool parallel) {
    if (opts.pairs < 1) throw DomainError("find_collision requires pairs >= 1");
    if (box.size() != m.dimension())
        throw DimensionMismatch("box dimension does not match the map");
    const CounterRng rng(opts.seed);
    const std::uint64_t npoints = 2 * opts.pairs;
    const int n = m.dimension();

    // Phase 1 (parallel kernel): evaluate the map at every sample point.
    std::vector<double> pts(npoints * static_cast<std::uint64_t>(n));
    std::vector<double> vals(npoints * static_cast<std::uint64_t>(n));
    std::vector<unsigned char> ok(npoints, 0);
    const auto body = [&](std::int64_t pi) {
        const auto p = static_cast<std::uint64_t>(pi);
        const std::vector<double> x = sample_point(rng, box, p);
        for (int d = 0; d < n; ++d)
            pts[p * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(d)] =
                x[static_cast<std::size_t>(d)];
        try {
            const std::vector<double> f = eval_map(m, x);
            if (valid_value(f)) {
                for (int d = 0; d < n; ++d)
                    vals[p * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(d)] =
                        f[static_cast<std::size_t>(d)];
                ok[p] = 1;
            }
        } catch (const Error&) {
            // point outside the function domain: skip it
        }
    };
    if (parallel) {
#pragma omp parallel for schedule(static)
        for (std::int64_t p = 0; p < static_cast<std::int64_t>(npoints); ++p) body(p);
    } else {
        for (std::int64_t p = 0; p < static_cast<std::int64_t>(npoints); ++p) body(p);
    }

    auto point = [&](std::uint64_t p) {
        return std::span<const double>(pts.data() + p * static_cast<std::uint64_t>(n),
                                       static_cast<std::size_t>(n));
    };
    auto value = [&](std::uint64_t p) {
        return std::span<const double>(vals.data() + p * static_cast<std::uint64_t>(n),
                                       static_cast<std::size_t>(n));
    };

    // Phase 2 (serial, deterministic): collect refinement candidates.
    std::vector<Candidate> candidates;

    // (a) hash-grid near-duplicates across all sampled points
    const double cell = kCollisionTol * 1e3;
    std::unordered_map<std::uint64_t, std::vector<std::uint64_t>> buckets;
    buckets.reserve(npoints * 2);
    std::size_t bucket_candidates = 0;
    for (std::uint64_t p = 0; p < npoints; ++p) {
        if (!ok[p]) continue;
        std::vector<std::uint64_t>& b = buckets[cell_key(value(p), cell)];
        if (bucket_candidates < kMaxBucketCandidates) {
            const std::size_t scan = std::min(b.size(), kMaxBucketScan);
            for (std::size_t s = 0; s < scan; ++s) {
                const std::uint64_t q = b[s];
                if (distance(point(q), point(p)) >= 0.5 * kSeparationMin) {
                    candidates.push_back({q, p});
                    ++bucket_candidates;
                }
            }
        }
        b.push_back(p);
    }

    // (b) the sampled pairs with the smallest value gaps
    struct GapEntry {
        double gap;
        std::uint64_t pair;
    };
    std::vector<GapEntry> gaps;
    gaps.reserve(static_cast<std::size_t>(opts.pairs));
    for (std::uint64_t k = 0; k < opts.pairs; ++k) {
        const std::uint64_t p = 2 * k, q = 2 * k + 1;
        if (!ok[p] || !ok[q]) continue;
        if (distance(point(p), point(q)) < 0.5 * kSeparationMin) continue;
        std::vector<double> g(static_cast<std::size_t>(n));
        for (int d = 0; d < n; ++d)
            g[static_cast<std::size_t>(d)] = vals[p * static_cast<std::uint64_t>(n) +
                                                  static_cast<std::uint64_t>(d)] -
                                             vals[q * static_cast<std::uint64_t>(n) +
                                                  static_cast<std::uint64_t>(d)];
        gaps.push_back({norm2(g), k});
    }
    const std::size_t keep = std::min(gaps.size(), kMaxGapCandidates);
    std::partial_sort(gaps.begin(), gaps.begin() + static_cast<std::ptrdiff_t>(keep),
                      gaps.end(), [](const GapEntry& a, const GapEntry& b) {
                          if (a.gap != b.gap) return a.gap < b.gap;
                          return a.pair < b.pair;
                      });
    for (std::size_t i = 0; i < keep; ++i)
        candidates.push_back({2 * gaps[i].pair, 2 * gaps[i].pair + 1});

    // Phase 3: refine; report the accepted collision earliest in the stream.
    std::optional<Collision> best;
    std::pair<std::uint64_t, std::uint64_t> best_key{0, 0};
    for (const Candidate& c : candidates) {
        const std::uint64_t lo = std::min(c.first, c.second);
        const std::uint64_t hi = std::max(c.first, c.second);
        const std::pair<std::uint64_t, std::uint64_t> key{hi, lo};
        if (best && best_key <= key) continue;
        std::vector<double> x1(point(c.first).begin(), point(c.first).end());
        std::vector<double> x2(point(c.second).begin(), point(c.second).end());
        if (std::optional<Collision> col = refine_candidate(m, box, std::move(x1), std::move(x2))) {
            best = std::move(col);
            best_key = key;
        }
    }
    return best;
}

MonotonicityReport monotonicity_impl(const MapSpec& t, const LinearOperator& a,
                                     const Box& box, const OracleOptions& opts,
                                     bool parallel) {
    if (opts.pairs < 1) throw DomainError("check_relative_monotonicity requires pairs >= 1");
    const int n = t.dimension();
    if (box.size() != n || a.order() != n)
        throw DimensionMismatch("box and operator must match the map dimension");
    const CounterRng rng(opts.seed);

    const std::uint64_t total = opts.pairs;
    std::vector<double> inner(total, std::numeric_limits<double>::infinity());
    const auto body = [&](std::int64_t ki) {
        const auto k = static_cast<std::uint64_t>(ki);
        std::vector<double> x(static_cast<std::size_t>(n)), y(static_cast<std::size_t>(n));
        for (int d = 0; d < n; ++d) {
            const Interval& iv = box.dims[static_cast<std::size_t>(d)];
            x[static_cast<std::size_t>(d)] = rng.uniform(
                k * 2 * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(d), iv.lo,
                iv.hi);
            y[static_cast<std::size_t>(d)] = rng.uniform(
                k * 2 * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(n + d),
                iv.lo, iv.hi);
        }
        try {
            const std::vector<double> tx = eval_map(t, x);
            const std::vector<double> ty = eval_map(t, y);
            double acc = 0.0;
            for (int i = 0; i < n; ++i) {
                double ad = 0.0;
                for (int j = 0; j < n; ++j)
                    ad += a(i, j) * (x[static_cast<std::size_t>(j)] - y[static_cast<std::size_t>(j)]);
                acc += (tx[static_cast<std::size_t>(i)] - ty[static_cast<std::size_t>(i)]) * ad;
            }
            if (std::isfinite(acc)) inner[k] = acc;
        } catch (const Error&) {
            // skip samples outside the function domain
        }
    };
    if (parallel) {
#pragma omp parallel for schedule(static)
        for (std::int64_t k = 0; k < static_cast<std::int64_t>(total); ++k) body(k);
    } else {
        for (std::int64_t k = 0; k < static_cast<std::int64_t>(total); ++k) body(k);
    }

    std::uint64_t arg = 0;
    double best = inner.empty() ? 0.0 : inner[0];
    for (std::uint64_t k = 1; k < total; ++k) {
        if (inner[k] < best) {
            best = inner[k];
            arg = k;
        }
    }

    MonotonicityReport rep;
    rep.min_inner = best;
    rep.x1.resize(static_cast<std::size_t>(n));
    rep.x2.resize(static_cast<std::size_t>(n));
    for (int d = 0; d < n; ++d) {
        const Interval& iv = box.dims[static_cast<std::size_t>(d)];
        rep.x1[static_cast<std::size_t>(d)] = rng.uniform(
            arg * 2 * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(d), iv.lo,
            iv.hi);
        rep.x2[static_cast<std::size_t>(d)] = rng.uniform(
            arg * 2 * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(n + d),
            iv.lo, iv.hi);
    }
    return rep;
}

} // namespace

std::optional<Collision> find_collision(const MapSpec& m, const Box& box,
                                        const OracleOptions& opts) {
    return find_collision_impl(m, box, opts, opts.parallel);
}

std::optional<Collision> find_collision_serial(const MapSpec& m, const Box& box,
                                               const OracleOptions& opts) {
    return find_collision_impl(m, box, opts, false);
}

MonotonicityReport check_relative_monotonicity(const MapSpec& t, const LinearOperator& a,
                                               const Box& box, const OracleOptions& opts) {
    return monotonicity_impl(t, a, box, opts, opts.parallel);
}

MonotonicityReport check_relative_monotonicity_serial(const MapSpec& t,
                                                      const LinearOperator& a,
                                                      const Box& box,
                                                      const OracleOptions& opts) {
    return monotonicity_impl(t, a, box, opts, false);
}

SquareMatrix<double> fd_jacobian(const MapSpec& m, std::span<const double> at, double step) {
    if (step <= 0.0) throw DomainError("fd_jacobian requires step > 0");
    const int n = m.dimension();
    if (static_cast<int>(at.size()) != n)
        throw DimensionMismatch("evaluation point dimension does not match the map");
    SquareMatrix<double> j(n);
    std::vector<double> plus(at.begin(), at.end()), minus(at.begin(), at.end());
    for (int c = 0; c < n; ++c) {
        plus[static_cast<std::size_t>(c)] += step;
        minus[static_cast<std::size_t>(c)] -= step;
        const std::vector<double> fp = eval_map(m, plus);
        const std::vector<double> fm = eval_map(m, minus);
        for (int i = 0; i < n; ++i)
            j(i, c) = (fp[static_cast<std::size_t>(i)] - fm[static_cast<std::size_t>(i)]) /
                      (2.0 * step);
        plus[static_cast<std::size_t>(c)] = at[static_cast<std::size_t>(c)];
        minus[static_cast<std::size_t>(c)] = at[static_cast<std::size_t>(c)];
    }
    return j;
}

} // namespace inj
