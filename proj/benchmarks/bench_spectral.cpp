#include <random>

#include <benchmark/benchmark.h>

#include "primepoly/spectral.hpp"

using namespace primepoly::spectral;

namespace {

std::vector<Complex> noise(std::size_t N) {
  std::mt19937_64 rng(N);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<Complex> v(N);
  for (auto& x : v) x = {u(rng), u(rng)};
  return v;
}

void BM_DftDirect(benchmark::State& state) {
  const auto f = noise(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(dft_direct(f));
}
BENCHMARK(BM_DftDirect)->Arg(499)->Arg(2003)->Unit(benchmark::kMillisecond);

void BM_DftChirp(benchmark::State& state) {
  const auto f = noise(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(dft_chirp(f));
}
BENCHMARK(BM_DftChirp)->Arg(499)->Arg(2003)->Arg(8009)->Arg(100'003)->Unit(benchmark::kMillisecond);

void BM_BohrSet(benchmark::State& state) {
  const std::vector<std::uint64_t> R{1, 17, 400, 1234};
  for (auto _ : state) benchmark::DoNotOptimize(bohr_set(R, Rational(1, 5), 10'007));
}
BENCHMARK(BM_BohrSet)->Unit(benchmark::kMillisecond);

}  // namespace
