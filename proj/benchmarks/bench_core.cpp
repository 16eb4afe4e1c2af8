#include <benchmark/benchmark.h>

#include "cantorlim/certificate.hpp"
#include "cantorlim/config_space.hpp"

#include <random>

using namespace cantorlim;

namespace {

const BuzzardParams& params() {
    static const BuzzardParams p = BuzzardParams::preset();
    return p;
}

void BM_OverlapArea(benchmark::State& state) {
    const auto& p = params();
    std::mt19937_64 g(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    AffineMap A{std::polar(1.1, 0.7), {0.3, -0.2}};
    for (auto _ : state) {
        A.beta = Complex{u(g), u(g)};
        benchmark::DoNotOptimize(overlap_area(A, p.c0));
    }
}
BENCHMARK(BM_OverlapArea);

void BM_KappaOf(benchmark::State& state) {
    const auto& p = params();
    const AffineMap A{std::polar(0.9, 0.4), {0.61, 0.13}};
    for (auto _ : state) benchmark::DoNotOptimize(kappa_of(p, A));
}
BENCHMARK(BM_KappaOf);

void BM_CertStepMiddleBand(benchmark::State& state) {
    const auto& p = params();
    const NegSequence root = constant_theta(4, 2);
    const RelativeConfig rc{root, root, AffineMap{std::polar(1.05, 0.3), {0.55, 0.31}}};
    for (auto _ : state) benchmark::DoNotOptimize(cert_step(p, rc));
}
BENCHMARK(BM_CertStepMiddleBand);

void BM_VerifySample(benchmark::State& state) {
    const auto& p = params();
    SweepSpec spec;
    spec.samples = 64;
    spec.threads = 1;
    for (auto _ : state) {
        spec.seed += 1;
        benchmark::DoNotOptimize(verify_certificate(p, spec));
    }
}
BENCHMARK(BM_VerifySample)->Unit(benchmark::kMillisecond);

void BM_LimitGeometryPerturbed(benchmark::State& state) {
    static const CantorSystem sys = make_perturbed_buzzard_system({});
    const NegSequence theta = constant_theta(4, 16, 2);
    for (auto _ : state) benchmark::DoNotOptimize(limit_geometry(sys, theta, 1e-8));
}
BENCHMARK(BM_LimitGeometryPerturbed)->Unit(benchmark::kMicrosecond);

void BM_TransitionAffinePerturbed(benchmark::State& state) {
    static const CantorSystem sys = make_perturbed_buzzard_system({});
    const NegSequence theta = constant_theta(4, 16, 2);
    for (auto _ : state) benchmark::DoNotOptimize(transition_affine(sys, theta, 7, 1e-8));
}
BENCHMARK(BM_TransitionAffinePerturbed)->Unit(benchmark::kMicrosecond);

void BM_SearchIdentity(benchmark::State& state) {
    static const CantorSystem sys = make_buzzard_system(params());
    const NegSequence root = constant_theta(4, 4);
    const RelativeConfig rc{root, root, AffineMap::identity()};
    for (auto _ : state)
        benchmark::DoNotOptimize(search_intersection(sys, sys, rc, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_SearchIdentity)->Arg(4)->Arg(8)->Unit(benchmark::kMicrosecond);

} // namespace

BENCHMARK_MAIN();
