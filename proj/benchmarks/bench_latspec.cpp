#include <benchmark/benchmark.h>

#include <vector>

#include "latspec/center_operator.hpp"
#include "latspec/frechet.hpp"
#include "latspec/oracle.hpp"

namespace {

using namespace latspec;

void BM_ExprEval(benchmark::State& state) {
    const auto e = expr::Expr::parse("(-1)^n * (2 + 1/n) + sin(n)/n", "n");
    double n = 1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(e.eval(Complex(n, 0.0)));
        n += 1.0;
    }
}
BENCHMARK(BM_ExprEval);

void BM_GeneratorConstruction(benchmark::State& state) {
    const auto e = expr::Expr::parse("1 + 1/n", "n");
    for (auto _ : state) {
        benchmark::DoNotOptimize(AtomicSymbol::generator(e, state.range(0)));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_GeneratorConstruction)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_AnalyzeExact(benchmark::State& state) {
    CenterOperator T;
    std::vector<Complex> prefix;
    for (int k = 1; k <= 32; ++k) prefix.emplace_back(1.0 / k, 0.0);
    T.atomic = AtomicSymbol::convergent_tail(prefix, Complex(0.0, 0.0));
    SpectralSet set = SpectralSet::segment(Complex(0.0, 0.0), Complex(1.5, 0.0));
    set.add(ClosedDisc{Complex(0.0, 1.0), 0.25});
    T.nonatomic = std::move(set);
    for (auto _ : state) {
        benchmark::DoNotOptimize(analyze(T));
    }
}
BENCHMARK(BM_AnalyzeExact);

void BM_AnalyzeGenerator(benchmark::State& state) {
    AnalysisConfig cfg;
    cfg.horizon = state.range(0);
    CenterOperator T;
    T.atomic = AtomicSymbol::generator(expr::Expr::parse("(-1)^n * (1 + 1/n)", "n"),
                                       state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(analyze(T, cfg));
    }
}
BENCHMARK(BM_AnalyzeGenerator)->Arg(1000)->Arg(10000);

std::vector<Complex> oracle_samples(long n) {
    std::vector<Complex> out;
    out.reserve(static_cast<std::size_t>(n));
    for (long k = 1; k <= n; ++k)
        out.emplace_back((k % 2 == 0 ? 1.0 : -1.0) * (1.0 + 1.0 / static_cast<double>(k)), 0.0);
    return out;
}

void BM_QuotientNormOracle(benchmark::State& state) {
    const auto samples = oracle_samples(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(oracle::quotient_norm_oracle(samples, 64));
    }
}
BENCHMARK(BM_QuotientNormOracle)->Arg(10000)->Arg(100000);

void BM_ClusterOracle(benchmark::State& state) {
    const auto samples = oracle_samples(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(oracle::cluster_oracle(samples, 1e-3, 8));
    }
}
BENCHMARK(BM_ClusterOracle)->Arg(2000)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
