#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "primepoly/counting.hpp"
#include "primepoly/errors.hpp"

using namespace primepoly;
using namespace primepoly::counting;
using spectral::Complex;
using spectral::DensityFunction;

namespace {

poly::IntPolynomial P(std::vector<std::int64_t> hf) {
  std::vector<BigInt> c(hf.begin(), hf.end());
  return poly::IntPolynomial::from_highest_first(std::move(c));
}

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::internal;
}

std::vector<Complex> random_values(std::uint64_t N, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Complex> v(N);
  for (auto& x : v) x = {u(rng), u(rng)};
  return v;
}

const std::map<std::uint64_t, unsigned> kW6{{2, 1}, {3, 1}};

const wtrick::WTrickContext& ctx6() {
  static const auto ctx =
      wtrick::build_context(P({1, 1, 0}), 1, 2, 2, poly::Variant::integer_coloring, kW6, 10'000);
  return ctx;
}

/// Every x < y <= n of one color with x + y = psi(z), W0 z + b0 prime.
std::vector<SolutionTriple> brute_solutions(const coloring::ColoringInstance& c, const std::vector<std::int64_t>& hf,
                                            std::uint64_t b0, std::uint64_t W0) {
  std::vector<SolutionTriple> out;
  for (std::uint64_t z = 1;; ++z) {
    const auto v = oracle::eval(hf, z);
    if (v > 4 * static_cast<oracle::i128>(c.n) && oracle::eval(hf, z + 1) > v) break;
    if (v < 3 || !oracle::is_prime(W0 * z + b0)) continue;
    for (std::uint64_t x = 1; 2 * x < static_cast<std::uint64_t>(v); ++x) {
      const auto y = static_cast<std::uint64_t>(v) - x;
      if (y > c.n || !c.in_domain(x) || !c.in_domain(y) || c.color(x) != c.color(y)) continue;
      out.push_back({x, y, z, c.color(x)});
    }
  }
  return out;
}

}  // namespace

TEST_CASE("triple count examples") {
  const auto d = DensityFunction::delta(7, 2);
  const auto d3 = DensityFunction::delta(7, 3);
  const auto d5 = DensityFunction::delta(7, 5);
  CHECK(std::abs(triple_count_bruteforce(d, d3, d5) - Complex(1)) < 1e-12);
  CHECK(std::abs(triple_count_fourier(d, d3, d5) - Complex(1)) < 1e-12);
  CHECK(std::abs(triple_count_bruteforce(d, d3, d)) < 1e-12);
  const auto one = DensityFunction::constant(11, 1.0);
  CHECK(std::abs(triple_count_fourier(one, one, one) - Complex(121)) < 1e-9);
  CHECK(kind_of([] {
          const auto big = DensityFunction::zeros(2049);
          triple_count_bruteforce(big, big, big);
        }) == ErrorKind::size);
}

TEST_CASE("Fourier count matches the enumeration oracle") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 60; ++trial) {
    const std::uint64_t N = 2 + rng() % 120;
    const auto f = random_values(N, rng), g = random_values(N, rng), h = random_values(N, rng);
    const auto ref = oracle::triple(f, g, h);
    const auto got = triple_count_fourier(DensityFunction(f), DensityFunction(g), DensityFunction(h));
    CHECK(std::abs(got - ref) <= 1e-9 * std::max(1.0, std::abs(ref)));
    const auto brute = triple_count_bruteforce(DensityFunction(f), DensityFunction(g), DensityFunction(h));
    CHECK(std::abs(brute - ref) <= 1e-9 * std::max(1.0, std::abs(ref)));
  }
}

TEST_CASE("the swapped pairing counts x + z = y") {
  std::mt19937_64 rng(5);
  const std::uint64_t N = 31;
  const auto f = random_values(N, rng), g = random_values(N, rng), h = random_values(N, rng);
  const auto swapped = triple_count_fourier_swapped(DensityFunction(f), DensityFunction(g), DensityFunction(h));
  CHECK(std::abs(swapped - oracle::triple(f, h, g)) < 1e-9);
  CHECK(std::abs(swapped - oracle::triple(f, g, h)) > 1e-3);
}

TEST_CASE("popularity examples") {
  const auto p = popularity({0, 1}, {0}, 5);
  CHECK(p.nu == std::vector<std::uint64_t>{1, 2, 1, 0, 0});
  CHECK_FALSE(p.bound_applies());
  CHECK(p.bound_holds_everywhere());

  const auto q = popularity({0, 1, 2, 3}, {0, 1, 2, 3}, 7);
  CHECK(q.m4 == 5);
  CHECK(q.bound_applies());
  CHECK(q.bound_holds_everywhere());
  for (std::uint64_t x = 0; x < 7; ++x) CHECK(q.nu[x] == oracle::nu({0, 1, 2, 3}, {0, 1, 2, 3}, 7, x));
}

TEST_CASE("popularity matches the oracle on random sets") {
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 40; ++trial) {
    const std::uint64_t N = 3 + rng() % 60;
    std::vector<std::uint64_t> A, U;
    for (std::uint64_t x = 0; x < N; ++x) {
      if (rng() % 2) A.push_back(x);
      if (rng() % 3) U.push_back(x);
    }
    const auto prof = popularity(A, U, N);
    for (std::uint64_t x = 0; x < N; ++x) {
      const auto ref = oracle::nu(A, U, N, x);
      CHECK(prof.nu[x] == ref);
      CHECK(popularity_at(A, U, N, x) == ref);
    }
    if (prof.bound_applies()) CHECK(prof.bound_holds_everywhere());
  }
}

TEST_CASE("monochromatic search: x^2 + x, W0 = 2") {
  const auto c = coloring::make_coloring(coloring::Domain::integers, 12, 1, coloring::ColoringRule::residue(1));
  const auto sols = find_monochromatic(c, P({1, 1, 0}), 1, 2);
  const SolutionTriple target{2, 10, 3, 1};
  CHECK(std::find(sols.begin(), sols.end(), target) != sols.end());
  for (const auto& s : sols) CHECK(verify_solution(s, c, P({1, 1, 0}), 1, 2));
  CHECK(sols == brute_solutions(c, {1, 1, 0}, 1, 2));
  const auto first = find_monochromatic(c, P({1, 1, 0}), 1, 2, SearchMode::first);
  REQUIRE(first.size() == 1);
  CHECK(first.front() == sols.front());
  CHECK_FALSE(verify_solution({2, 10, 4, 1}, c, P({1, 1, 0}), 1, 2));
}

TEST_CASE("monochromatic search agrees with the oracle on random colorings") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto c = coloring::make_coloring(coloring::Domain::integers, 300, 3, coloring::ColoringRule::random(seed));
    CHECK(find_monochromatic(c, P({1, 1, 0}), 1, 2) == brute_solutions(c, {1, 1, 0}, 1, 2));
    const auto cp = coloring::make_coloring(coloring::Domain::primes, 400, 2, coloring::ColoringRule::random(seed));
    CHECK(find_monochromatic(cp, P({1, 0, 0}), 1, 1) == brute_solutions(cp, {1, 0, 0}, 1, 1));
  }
}

TEST_CASE("the blocking partition admits no solution") {
  const auto c = coloring::blocking_partition(P({6, 0, 0}), 1, 1, 3, 3000);
  CHECK(find_monochromatic(c, P({6, 0, 0}), 1, 1).empty());
  CHECK(brute_solutions(c, {6, 0, 0}, 1, 1).empty());
}

TEST_CASE("solutions csv") {
  const std::vector<SolutionTriple> s{{2, 10, 3, 1}};
  CHECK(solutions_csv(s) == "color,x,y,z\n1,2,10,3\n");
}

TEST_CASE("lifting") {
  const auto& ctx = ctx6();
  REQUIRE(ctx.W == 6);
  REQUIRE(ctx.b == 0);
  REQUIRE(ctx.N == 3343);
  const auto s = lift_solution(3, 4, 1, ctx);
  CHECK(s.x == 18);
  CHECK(s.y == 24);
  CHECK(s.z == 6);
  // 3340 + 10 = 7 + N: a wrap-around that does not lift
  CHECK(kind_of([&] { lift_solution(3340, 10, 1, ctx); }) == ErrorKind::lifting);
  CHECK(kind_of([&] { lift_solution(3, 5, 1, ctx); }) == ErrorKind::domain);

  auto c = coloring::make_coloring(coloring::Domain::integers, ctx.n, 2, coloring::ColoringRule::interval({20}));
  CHECK(kind_of([&] { lift_solution(3, 4, 1, ctx, &c); }) == ErrorKind::lifting);
  c = coloring::make_coloring(coloring::Domain::integers, ctx.n, 2, coloring::ColoringRule::interval({100}));
  CHECK(lift_solution(3, 4, 1, ctx, &c).color == 1);
}

TEST_CASE("transference report on the W = 6 context") {
  const auto& ctx = ctx6();
  const auto c = coloring::make_coloring(coloring::Domain::integers, ctx.n, 2, coloring::ColoringRule::random(11));
  const auto t = coloring::dense_class(c, ctx);
  const auto r = transference_report(ctx, t, c);
  CHECK(r.N == ctx.N);
  CHECK(r.size_A == t.A.size());
  CHECK(r.zn_solutions > 0);
  CHECK(r.lifting_failures == 0);
  CHECK(r.distinct_count == doctest::Approx(r.raw_count - r.diagonal_exact));
  for (const auto& s : r.lifted) CHECK(verify_solution(s, c, ctx.psi, ctx.b0, ctx.W0));
  CHECK(r.smoothed_within_cap == (r.max_smoothed <= r.smoothed_cap));
  CHECK(r.to_json() == transference_report(ctx, t, c).to_json());
}
