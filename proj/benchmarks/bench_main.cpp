// Microbenchmarks for the hot paths: the four conjugate formulations, the
// combined all-formulations driver, F-regularization, the discrete Legendre
// transform (brute scan vs. hull-based fast path), and group infimal
// convolution.  Fixtures are generated from fixed seeds so numbers are
// comparable across runs and machines.

#include <benchmark/benchmark.h>

#include <cstddef>
#include <utility>
#include <vector>

#include "fenchel/conjugate.hpp"
#include "fenchel/extfn.hpp"
#include "fenchel/fuzz.hpp"
#include "fenchel/geometry.hpp"
#include "fenchel/group.hpp"
#include "fenchel/regclose.hpp"

namespace {

using namespace fenchel;

struct Pair {
    ExtFn f;
    ExtFn phi;
};

Pair make_pair_fixture(std::size_t n) {
    Fuzzer fz(42);
    Carrier M = fz.carrier(n, n);
    ExtFn f = fz.function(M, Fuzzer::Profile::Any);
    ExtFn phi = fz.function(M, Fuzzer::Profile::Any);
    return Pair{std::move(f), std::move(phi)};
}

void BM_Conjugate(benchmark::State& state, Formulation form) {
    const Pair p = make_pair_fixture(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(conjugate(p.f, p.phi, form));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK_CAPTURE(BM_Conjugate, def, Formulation::Def)->Arg(64)->Arg(512);
BENCHMARK_CAPTURE(BM_Conjugate, restricted, Formulation::Restricted)->Arg(64)->Arg(512);
BENCHMARK_CAPTURE(BM_Conjugate, shift, Formulation::Shift)->Arg(64)->Arg(512);
BENCHMARK_CAPTURE(BM_Conjugate, epigraph, Formulation::Epigraph)->Arg(64)->Arg(512);

void BM_ConjugateAll(benchmark::State& state) {
    const Pair p = make_pair_fixture(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(conjugate_all(p.f, p.phi));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ConjugateAll)->Arg(64)->Arg(512);

void BM_Regularize(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const std::size_t members = static_cast<std::size_t>(state.range(1));
    Fuzzer fz(43);
    Carrier M = fz.carrier(n, n);
    ExtFn f = fz.function(M, Fuzzer::Profile::Any);
    std::vector<ExtFn> fam;
    fam.reserve(members);
    for (std::size_t j = 0; j < members; ++j) {
        fam.push_back(fz.function(M, Fuzzer::Profile::RealValued));
    }
    TestFamily F = TestFamily::with_computed_flags(M, std::move(fam));
    for (auto _ : state) {
        benchmark::DoNotOptimize(regularize(f, F));
    }
    state.SetItemsProcessed(state.iterations() * n * members);
}
BENCHMARK(BM_Regularize)->Args({64, 8})->Args({256, 8})->Args({256, 32});

IntervalGrid dense_grid(std::size_t m) {
    std::vector<Rational> pts;
    pts.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        pts.emplace_back(static_cast<long>(i));
    }
    return IntervalGrid(std::move(pts));
}

void BM_Legendre(benchmark::State& state, LegendreMethod method) {
    const std::size_t m = static_cast<std::size_t>(state.range(0));
    Fuzzer fz(44);
    IntervalGrid grid = dense_grid(m);
    std::vector<ExtReal> vals;
    vals.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        vals.emplace_back(fz.finite_value());
    }
    ExtFn g(grid.carrier(), std::move(vals));
    std::vector<Rational> slopes;
    slopes.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        slopes.emplace_back(static_cast<long>(i) - static_cast<long>(m / 2));
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(discrete_legendre_1d(grid, g, slopes, method));
    }
    state.SetItemsProcessed(state.iterations() * m);
}
BENCHMARK_CAPTURE(BM_Legendre, brute, LegendreMethod::Brute)->Arg(256)->Arg(2048);
BENCHMARK_CAPTURE(BM_Legendre, fast, LegendreMethod::Fast)->Arg(256)->Arg(2048);

void BM_InfConvolution(benchmark::State& state, GroupSpec spec) {
    Fuzzer fz(45);
    ExtFn f = fz.group_fn(spec, Fuzzer::Profile::RealValued);
    ExtFn g = fz.group_fn(spec, Fuzzer::Profile::RealValued);
    for (auto _ : state) {
        benchmark::DoNotOptimize(inf_convolution(spec, f, g));
    }
    state.SetItemsProcessed(state.iterations() * spec.size());
}
BENCHMARK_CAPTURE(BM_InfConvolution, zd1, GroupSpec::zd(1, 40));
BENCHMARK_CAPTURE(BM_InfConvolution, zd2, GroupSpec::zd(2, 8));
BENCHMARK_CAPTURE(BM_InfConvolution, dyadic, GroupSpec::dyadic(5, Rational(8)));

}  // namespace

BENCHMARK_MAIN();
