#include "psc/qn.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace psc;

namespace {

qn::Monomial rand_mono(std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint64_t> mn(1, 30);
    std::uniform_int_distribution<long long> kl(-10, 10);
    return *qn::make_monomial(ExactScalar::one(), int_of(kl(rng)),
                              FactoredNat::of_value(mn(rng)), FactoredNat::of_value(mn(rng)),
                              int_of(kl(rng)));
}

void BM_monomial_mul_twisted(benchmark::State& state) {
    Bicharacter xi = Bicharacter::make(2, 3, Rat(1), Rat(0), Rat(0), Rat(1));
    std::mt19937_64 rng(1);
    std::vector<std::pair<qn::Monomial, qn::Monomial>> pairs;
    for (int i = 0; i < 512; ++i) pairs.emplace_back(rand_mono(rng), rand_mono(rng));
    std::size_t i = 0;
    for (auto _ : state) {
        const auto& [x, y] = pairs[i++ & 511];
        benchmark::DoNotOptimize(qn::mul(x, y, xi));
    }
}
BENCHMARK(BM_monomial_mul_twisted);

void BM_equal_partition_of_unity(benchmark::State& state) {
    Bicharacter xi = Bicharacter::make(2, 3, Rat(1), Rat(0), Rat(0), Rat(1));
    const std::uint64_t m = static_cast<std::uint64_t>(state.range(0));
    qn::AlgebraElem sum;
    for (std::uint64_t k = 0; k < m; ++k)
        sum = sum + qn::AlgebraElem::diag_mono(Int(static_cast<unsigned long>(k)),
                                               FactoredNat::of_value(m));
    for (auto _ : state)
        benchmark::DoNotOptimize(qn::equal(sum, qn::AlgebraElem::one(), xi));
}
BENCHMARK(BM_equal_partition_of_unity)->Arg(6)->Arg(12)->Arg(30);

void BM_refine(benchmark::State& state) {
    Bicharacter xi = Bicharacter::make(2, 3, Rat(1), Rat(0), Rat(0), Rat(1));
    qn::Monomial x = *qn::make_monomial(ExactScalar::one(), 3, FactoredNat::of_value(4),
                                        FactoredNat::of_value(6), 1);
    FactoredNat r = FactoredNat::of_value(static_cast<std::uint64_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(qn::refine(x, r, xi));
}
BENCHMARK(BM_refine)->Arg(2)->Arg(12);

void BM_pi_witness_three_terms(benchmark::State& state) {
    Bicharacter xi = Bicharacter::make(2, 3, Rat(1), Rat(0), Rat(0), Rat(1));
    qn::AlgebraElem x =
        qn::AlgebraElem::one() +
        qn::AlgebraElem::from_monomial(
            *qn::make_monomial(ExactScalar::one(), 1, FactoredNat::of_value(2),
                               FactoredNat::of_value(3), 0)) +
        qn::AlgebraElem::from_monomial(
            *qn::make_monomial(ExactScalar::of(make_rat(1, 2)), -1, FactoredNat::of_value(5),
                               FactoredNat::of_value(1), 0));
    for (auto _ : state) benchmark::DoNotOptimize(qn::pure_infiniteness_witness(x, xi));
}
BENCHMARK(BM_pi_witness_three_terms);

}  // namespace

BENCHMARK_MAIN();
