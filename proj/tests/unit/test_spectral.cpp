#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "primepoly/errors.hpp"
#include "primepoly/spectral.hpp"

using namespace primepoly;
using namespace primepoly::spectral;

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

std::vector<Complex> random_values(std::uint64_t N, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Complex> v(N);
  for (auto& x : v) x = {u(rng), u(rng)};
  return v;
}

// Hand-assembled context: W = 1, b = 0, W0 = 1, b0 = 1, psi = x^2.
wtrick::WTrickContext toy_context(std::uint64_t K, std::uint64_t N) {
  wtrick::WTrickContext ctx;
  ctx.psi = P({1, 0, 0});
  ctx.b0 = 1;
  ctx.W0 = 1;
  ctx.W = 1;
  ctx.b = 0;
  ctx.K = K;
  ctx.N = N;
  ctx.psi_bW = poly::rescale(ctx.psi, 1, 0);
  ctx.M = poly::compute_M(ctx.psi_bW.poly, BigInt(K), BigInt(N));
  return ctx;
}

}  // namespace

TEST_CASE("dft examples") {
  auto s = DensityFunction::delta(5, 0).spectrum();
  for (auto v : s) CHECK(std::abs(v - Complex(1)) < 1e-12);
  s = DensityFunction::constant(5, 1.0).spectrum();
  CHECK(std::abs(s[0] - Complex(5)) < 1e-12);
  for (int r = 1; r < 5; ++r) CHECK(std::abs(s[r]) < 1e-12);
  const std::vector<std::uint64_t> set{1, 2};
  CHECK(std::abs(DensityFunction::indicator(5, set).spectrum()[0] - Complex(2)) < 1e-12);
}

TEST_CASE("dft matches the long-double oracle") {
  for (std::uint64_t N : {2u, 3u, 13u, 101u, 257u}) {
    const auto f = random_values(N, N);
    const auto got = dft(f);
    const auto ref = oracle::dft(f);
    std::vector<Complex> ref_d(N);
    for (std::size_t r = 0; r < N; ++r) ref_d[r] = {static_cast<double>(ref[r].real()), static_cast<double>(ref[r].imag())};
    CHECK(relative_max_error(got, ref_d) < 1e-12);
  }
}

TEST_CASE("direct and chirp transforms agree") {
  for (std::uint64_t N : {3u, 101u, 2003u, 8009u}) {
    const auto f = random_values(N, 17 + N);
    CHECK(relative_max_error(dft_chirp(f), dft_direct(f)) < 1e-9);
  }
}

TEST_CASE("inversion, Parseval, convolution theorem") {
  for (std::uint64_t N : {7u, 101u, 2003u, 4001u}) {
    const auto fv = random_values(N, 3 * N);
    const auto gv = random_values(N, 5 * N);
    const DensityFunction f(fv), g(gv);
    CHECK(relative_max_error(inverse_dft(f.spectrum()), fv) < 1e-9);

    double lhs = 0, rhs = 0;
    for (auto v : fv) lhs += std::norm(v);
    for (auto v : f.spectrum()) rhs += std::norm(v);
    CHECK(std::abs(lhs - rhs / static_cast<double>(N)) <= 1e-9 * lhs);

    const auto h = convolve(f, g);
    std::vector<Complex> prod(N);
    for (std::size_t r = 0; r < N; ++r) prod[r] = f.spectrum()[r] * g.spectrum()[r];
    CHECK(relative_max_error(h.spectrum(), prod) < 1e-9);
    CHECK(std::abs(f.mass() - f.spectrum()[0]) <= 1e-9 * std::max(1.0, std::abs(f.mass())));
  }
}

TEST_CASE("convolve examples") {
  const auto h = convolve(DensityFunction::delta(5, 1), DensityFunction::delta(5, 2));
  for (std::uint64_t x = 0; x < 5; ++x) CHECK(std::abs(h[x] - Complex(x == 3 ? 1.0 : 0.0)) < 1e-12);
  const DensityFunction f(random_values(11, 1));
  CHECK(relative_max_error(convolve(f, DensityFunction::delta(11, 0)).values(), f.values()) < 1e-12);
  CHECK(kind_of([] { convolve(DensityFunction::delta(5, 0), DensityFunction::delta(7, 0)); }) ==
        ErrorKind::modulus_mismatch);
}

TEST_CASE("poly-prime measure on the toy context") {
  const auto ctx = toy_context(1, 13);
  REQUIRE(ctx.M == 3);
  const auto m = build_poly_prime_measure(ctx);
  CHECK(m.checked_arguments == 3);
  CHECK(m.normalization == 9);
  CHECK(m.density[1].real() == doctest::Approx(std::log(2.0) / 9).epsilon(1e-14));
  CHECK(m.density[4].real() == doctest::Approx(3 * std::log(3.0) / 9).epsilon(1e-14));
  CHECK(m.density[9].real() == 0.0);  // z = 3, 4 is composite
  REQUIRE(m.support.size() == 2);
  CHECK(m.support[0].z == 1);
  CHECK(m.support[1].x == 4);
}

TEST_CASE("poly-prime measure rejects colliding arguments") {
  // N = 9 is not prime; psi(4) = 16 and psi(5) = 25 agree modulo 9
  const auto ctx = toy_context(4, 9);
  REQUIRE(ctx.M == 5);
  CHECK(kind_of([&] { build_poly_prime_measure(ctx); }) == ErrorKind::well_definedness);
}

TEST_CASE("prime-coloring measure") {
  auto ctx = toy_context(1, 13);
  const std::vector<std::uint64_t> empty;
  const auto zero = build_prime_coloring_measure(empty, ctx);
  for (auto v : zero.values()) CHECK(v == Complex(0));

  // K W = 1, psi(b)/2 = 0: a(x) = log(x)/N at primes x
  const std::vector<std::uint64_t> one{7};
  const auto a = build_prime_coloring_measure(one, ctx);
  CHECK(a[7].real() == doctest::Approx(std::log(7.0) / 13).epsilon(1e-14));
  const std::vector<std::uint64_t> composite{8};
  CHECK(build_prime_coloring_measure(composite, ctx)[8] == Complex(0));

  ctx.K = 2;  // gcd(0, 2) = 2
  CHECK(kind_of([&] { build_prime_coloring_measure(one, ctx); }) == ErrorKind::domain);
}

TEST_CASE("large spectrum") {
  CHECK(large_spectrum(DensityFunction::delta(7, 0), 0.5).size() == 7);
  const DensityFunction f(random_values(31, 9));
  double mx = 0;
  for (auto v : f.spectrum()) mx = std::max(mx, std::abs(v));
  CHECK(large_spectrum(f, mx * 1.01).empty());
  std::vector<Complex> unit(17, 1.0 / 17);
  const auto R = large_spectrum(DensityFunction(unit), 0.9);
  REQUIRE_FALSE(R.empty());
  CHECK(R.front() == 0);
  CHECK(kind_of([&] { large_spectrum(f, 0.0); }) == ErrorKind::domain);
}

TEST_CASE("Bohr sets") {
  const std::vector<std::uint64_t> none;
  CHECK(bohr_set(none, Rational(1, 10), 101).size() == 101);
  const std::vector<std::uint64_t> r1{1};
  CHECK(bohr_set(r1, Rational(1, 10), 101).size() == 21);
  const std::vector<std::uint64_t> r2{1, 2};
  const auto B = bohr_set(r2, Rational(1, 4), 101);
  CHECK(B.size() >= 7);
  CHECK(B.members.front() == 0);
  CHECK(bohr_bound_holds(B.size(), 2, Rational(1, 4), 101));
  // boundary: dist/N == eps exactly is inside
  const std::vector<std::uint64_t> r3{1};
  CHECK(in_bohr_set(10, r3, Rational(1, 10), 100));
  CHECK_FALSE(in_bohr_set(11, r3, Rational(1, 10), 100));
  CHECK(kind_of([&] { bohr_set(r1, Rational(1, 2), 101); }) == ErrorKind::domain);
}

TEST_CASE("smoothing") {
  const DensityFunction f(random_values(101, 4));
  const std::vector<std::uint64_t> none;
  const auto full = bohr_set(none, Rational(1, 5), 101);
  const auto s = smooth(f, full);
  const Complex avg = f.mass() / 101.0;
  for (auto v : s.values()) CHECK(std::abs(v - avg) < 1e-12);

  const std::vector<std::uint64_t> R{1, 5, 17};
  const auto B = bohr_set(R, Rational(1, 5), 101);
  const auto s2 = smooth(f, B);
  CHECK(std::abs(s2.mass() - f.mass()) <= 1e-9 * std::abs(f.mass()));
  const auto b = B.normalized_indicator();
  CHECK(relative_max_error(s2.values(), convolve(convolve(f, b), b).values()) < 1e-9);
}

TEST_CASE("restriction norm") {
  CHECK(restriction_norm(DensityFunction::delta(5, 0), 4) == doctest::Approx(5.0));
  CHECK(restriction_norm(DensityFunction::constant(7, 1.0 / 7), 4) == doctest::Approx(1.0));
}

TEST_CASE("parse_rational") {
  CHECK(parse_rational("1/8") == Rational(1, 8));
  CHECK(parse_rational("3") == Rational(3, 1));
  CHECK(kind_of([] { parse_rational("1/0"); }) == ErrorKind::parse);
  CHECK(kind_of([] { parse_rational("x/2"); }) == ErrorKind::parse);
}
