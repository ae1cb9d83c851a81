#include "psc/cohomology.hpp"
#include "psc/resolution.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace psc;

namespace {

void BM_bar_boundary_level3(benchmark::State& state) {
    DynFamily fam(Dynamics::laurent_nat_mult({2, 3, 5, 7}));
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<std::uint64_t> p(1, 8);
    std::uniform_int_distribution<int> e(-3, 3);
    BarElem<DynFamily> elem;
    elem.level = 3;
    for (int i = 0; i < 3; ++i) {
        SkewRingElem r;
        r.add_term({GroupElem{e(rng)}, FactoredNat::of_value(p(rng))}, ExactScalar::one());
        elem.add_term({FactoredNat::of_value(p(rng)), FactoredNat::of_value(p(rng)),
                       FactoredNat::of_value(p(rng))},
                      r);
    }
    for (auto _ : state) benchmark::DoNotOptimize(bar_boundary(fam, elem));
}
BENCHMARK(BM_bar_boundary_level3);

void BM_bicharacter_cocycle_window(benchmark::State& state) {
    Dynamics d = Dynamics::laurent_nat_mult({2, 3, 5, 7, 11, 13});
    Cochain xi = build_bicharacter_cochain(
        d, Bicharacter::make(2, 3, Rat(1), Rat(0), Rat(0), Rat(1)));
    auto window = tuples_over_range(static_cast<std::uint64_t>(state.range(0)), 3);
    for (auto _ : state) {
        auto r = is_cocycle(d, xi, window);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_bicharacter_cocycle_window)->Arg(8)->Arg(14);

void BM_one_cocycle_build(benchmark::State& state) {
    Dynamics d = Dynamics::laurent_nat_mult({2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43,
                                             47, 53, 59});
    std::map<std::uint64_t, CoeffElem> pv;
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59})
        pv[p] = CoeffElem::u_pow(static_cast<long long>(p % 5) - 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(build_one_cocycle(d, pv, 60));
}
BENCHMARK(BM_one_cocycle_build);

}  // namespace
