// Compares the OpenMP wave kernels against their serial reference
// implementations on workloads heavy enough to show the difference:
// a subdivision-bound certification and a large collision scan.

#include <benchmark/benchmark.h>

#include "inj/certify.hpp"

namespace {

using inj::Box;
using inj::CertifyOptions;
using inj::CriterionMocanu;
using inj::Interval;
using inj::MapSpec;

MapSpec hard_instance() {
    // |dzbar| interval overestimation forces deep subdivision near x = 0
    return inj::make_complex_function("x^2 - y^2", "2*x*y",
                                      Box({Interval(0.02, 1.0), Interval(-1.0, 1.0)}));
}

CertifyOptions certify_opts() {
    CertifyOptions o;
    o.budget.max_depth = 14;
    o.oracle.pairs = 1000;
    o.oracle.seed = 1;
    return o;
}

void bm_certify_serial(benchmark::State& state) {
    const MapSpec f = hard_instance();
    const CriterionMocanu crit{0.0, inj::MocanuVariant::Standard};
    for (auto _ : state) {
        const auto cert = certify_serial(f, crit, certify_opts());
        benchmark::DoNotOptimize(cert.boxes_processed);
    }
}
BENCHMARK(bm_certify_serial)->Unit(benchmark::kMillisecond);

void bm_certify_openmp(benchmark::State& state) {
    const MapSpec f = hard_instance();
    const CriterionMocanu crit{0.0, inj::MocanuVariant::Standard};
    for (auto _ : state) {
        const auto cert = certify(f, crit, certify_opts());
        benchmark::DoNotOptimize(cert.boxes_processed);
    }
}
BENCHMARK(bm_certify_openmp)->Unit(benchmark::kMillisecond);

void bm_collision_scan_serial(benchmark::State& state) {
    const MapSpec f = hard_instance();
    inj::OracleOptions opts;
    opts.pairs = 200000;
    opts.seed = 2;
    for (auto _ : state) {
        const auto col = find_collision_serial(f, f.domain, opts);
        benchmark::DoNotOptimize(col.has_value());
    }
}
BENCHMARK(bm_collision_scan_serial)->Unit(benchmark::kMillisecond);

void bm_collision_scan_openmp(benchmark::State& state) {
    const MapSpec f = hard_instance();
    inj::OracleOptions opts;
    opts.pairs = 200000;
    opts.seed = 2;
    for (auto _ : state) {
        const auto col = find_collision(f, f.domain, opts);
        benchmark::DoNotOptimize(col.has_value());
    }
}
BENCHMARK(bm_collision_scan_openmp)->Unit(benchmark::kMillisecond);

void bm_monotonicity_serial(benchmark::State& state) {
    const MapSpec f = hard_instance();
    const auto eye = inj::LinearOperator::identity(2);
    inj::OracleOptions opts;
    opts.pairs = 200000;
    opts.seed = 3;
    for (auto _ : state) {
        const auto rep = check_relative_monotonicity_serial(f, eye, f.domain, opts);
        benchmark::DoNotOptimize(rep.min_inner);
    }
}
BENCHMARK(bm_monotonicity_serial)->Unit(benchmark::kMillisecond);

void bm_monotonicity_openmp(benchmark::State& state) {
    const MapSpec f = hard_instance();
    const auto eye = inj::LinearOperator::identity(2);
    inj::OracleOptions opts;
    opts.pairs = 200000;
    opts.seed = 3;
    for (auto _ : state) {
        const auto rep = check_relative_monotonicity(f, eye, f.domain, opts);
        benchmark::DoNotOptimize(rep.min_inner);
    }
}
BENCHMARK(bm_monotonicity_openmp)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
