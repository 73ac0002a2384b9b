#include <random>

#include <benchmark/benchmark.h>

#include "primepoly/counting.hpp"

using namespace primepoly;

namespace {

spectral::DensityFunction noise(std::uint64_t N, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<spectral::Complex> v(N);
  for (auto& x : v) x = u(rng);
  return spectral::DensityFunction(std::move(v));
}

void BM_TripleBrute(benchmark::State& state) {
  const auto N = static_cast<std::uint64_t>(state.range(0));
  const auto f = noise(N, 1), g = noise(N, 2), h = noise(N, 3);
  for (auto _ : state) benchmark::DoNotOptimize(counting::triple_count_bruteforce(f, g, h));
}
BENCHMARK(BM_TripleBrute)->Arg(509)->Arg(2039)->Unit(benchmark::kMillisecond);

void BM_TripleFourier(benchmark::State& state) {
  const auto N = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    // fresh functions each round so the cached spectra are recomputed
    const auto f = noise(N, 1), g = noise(N, 2), h = noise(N, 3);
    benchmark::DoNotOptimize(counting::triple_count_fourier(f, g, h));
  }
}
BENCHMARK(BM_TripleFourier)->Arg(509)->Arg(2039)->Arg(40'009)->Unit(benchmark::kMillisecond);

void BM_MonochromaticSearch(benchmark::State& state) {
  const auto psi = poly::parse_polynomial("[1,1,0]");
  const auto c = coloring::make_coloring(coloring::Domain::integers, static_cast<std::uint64_t>(state.range(0)), 2,
                                         coloring::ColoringRule::random(7));
  for (auto _ : state) benchmark::DoNotOptimize(counting::find_monochromatic(c, psi, 1, 2));
}
BENCHMARK(BM_MonochromaticSearch)->Arg(10'000)->Unit(benchmark::kMillisecond);

void BM_BlockingPartition(benchmark::State& state) {
  const auto psi = poly::parse_polynomial("[6,0,0]");
  for (auto _ : state) {
    const auto c = coloring::blocking_partition(psi, 1, 1, 3, 100'000);
    benchmark::DoNotOptimize(counting::find_monochromatic(c, psi, 1, 1));
  }
}
BENCHMARK(BM_BlockingPartition)->Unit(benchmark::kMillisecond);

}  // namespace
