#include <benchmark/benchmark.h>

#include "primepoly/numtheory.hpp"
#include "primepoly/wtrick.hpp"

using namespace primepoly;

namespace {

void BM_Sieve(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(nt::sieve_primes(static_cast<std::uint64_t>(state.range(0))));
}
BENCHMARK(BM_Sieve)->Arg(1'000'000)->Arg(12'000'000)->Unit(benchmark::kMillisecond);

void BM_MillerRabin(benchmark::State& state) {
  std::uint64_t x = 1'000'000'000'000'000'003ull;
  for (auto _ : state) benchmark::DoNotOptimize(nt::is_prime_u64(x += 2));
}
BENCHMARK(BM_MillerRabin);

void BM_BuildContext(benchmark::State& state) {
  const auto psi = poly::parse_polynomial("[1,0,0]");
  for (auto _ : state)
    benchmark::DoNotOptimize(
        wtrick::build_context(psi, 1, 1, 2, poly::Variant::integer_coloring, {{2, 3}, {3, 1}}, 1'000'000));
}
BENCHMARK(BM_BuildContext)->Unit(benchmark::kMicrosecond);

}  // namespace
