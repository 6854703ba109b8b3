// Serial reference vs OpenMP kernels.

#include "fockwc/dynamics.hpp"
#include "fockwc/fock.hpp"

#include <benchmark/benchmark.h>

using namespace fockwc;

namespace {

OperatorSymbol contraction() {
    return OperatorSymbol(Multiplier(Scalar(1.0), Scalar(0.25), {Scalar(1.0)}),
                          AffineMap{Scalar::polar(0.5, ExactAngle::rational(1, 8)), Scalar(0.5, 0.5)});
}

OperatorSymbol rotation() {
    return OperatorSymbol::with_default_c(Scalar::polar(1.0, ExactAngle::parse("golden")), Scalar(0.0), Scalar(0.0, 2.0));
}

TruncationParams at(std::size_t n) {
    TruncationParams t;
    t.n = n;
    return t;
}

template <bool Parallel>
void BM_BuildMatrix(benchmark::State& state) {
    const OperatorSymbol op = contraction();
    const TruncationParams t = at(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(Parallel ? build_matrix(op, t) : serial::build_matrix(op, t));
}

template <bool Parallel>
void BM_SingularValue(benchmark::State& state) {
    const OperatorMatrix m = build_matrix(contraction(), at(static_cast<std::size_t>(state.range(0))));
    for (auto _ : state)
        benchmark::DoNotOptimize(Parallel ? dominant_singular_value(m, 1e-10) : serial::dominant_singular_value(m, 1e-10));
}

template <bool Parallel>
void BM_HullDistance(benchmark::State& state) {
    CoeffVector f(16), target(16);
    for (std::size_t k = 0; k < 4; ++k) {
        f[k] = 0.5;
        target[k] = cplx(0.3, -0.2 * static_cast<double>(k));
    }
    const OrbitRecord o = orbit(rotation(), f, static_cast<std::size_t>(state.range(0)) - 1, OrbitRoute::MatrixIteration, at(16));
    for (auto _ : state)
        benchmark::DoNotOptimize(Parallel ? hull_distance(o, target, 200) : serial::hull_distance(o, target, 200));
}

template <bool Parallel>
void BM_RatioExperiment(benchmark::State& state) {
    const OperatorSymbol op = contraction();
    const auto grid = static_cast<std::size_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(Parallel ? ratio_experiment(op, cplx(1.0, 0.0), 1.0, 200, grid)
                                          : serial::ratio_experiment(op, cplx(1.0, 0.0), 1.0, 200, grid));
}

} // namespace

BENCHMARK(BM_BuildMatrix<false>)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BuildMatrix<true>)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SingularValue<false>)->Arg(96)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SingularValue<true>)->Arg(96)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HullDistance<false>)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HullDistance<true>)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RatioExperiment<false>)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RatioExperiment<true>)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
