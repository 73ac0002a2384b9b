#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "primepoly/arcs.hpp"
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

const wtrick::WTrickContext& ctx24() {
  static const auto ctx =
      wtrick::build_context(P({1, 0, 0}), 1, 1, 2, poly::Variant::integer_coloring, {{2, 3}, {3, 1}}, 100'000);
  return ctx;
}

}  // namespace

TEST_CASE("torus norm") {
  CHECK(torus_norm(0.25L) == doctest::Approx(0.25));
  CHECK(torus_norm(0.75L) == doctest::Approx(0.25));
  CHECK(torus_norm(-1.1L) == doctest::Approx(0.1));
  CHECK(torus_norm(3.0L) == 0.0);
}

TEST_CASE("arc decomposition parameters") {
  const auto arcs = make_arcs(1'000'000, 1e12L, 1.0);
  CHECK(arcs.Q == 13);  // floor(log 10^6)
  CHECK(static_cast<double>(arcs.delta) == doctest::Approx(std::log(1e6) / 1e12).epsilon(1e-9));
  CHECK(make_arcs(1'000'000, 1e12L, 40.0).Q == (std::uint64_t{1} << 62));
}

TEST_CASE("classification examples") {
  const auto arcs = make_arcs(1'000'000, 1e12L, 1.0);
  auto c = classify_arc(0.5L, arcs);
  CHECK(c.major);
  CHECK(c.a == 1);
  CHECK(c.q == 2);
  c = classify_arc(0.0L, arcs);
  CHECK(c.major);
  CHECK(c.q == 1);
  const long double golden = (std::sqrt(5.0L) - 1) / 2;
  CHECK_FALSE(classify_arc(golden, arcs).major);
  CHECK(in_major_arc(1.0L / 3 + 1e-13L, 1, 3, arcs));
  CHECK_FALSE(in_major_arc(1.0L / 3 + 1e-9L, 1, 3, arcs));
}

TEST_CASE("the 1/(2q^2) cap binds for wide arcs") {
  // delta far above 1/2: only the cap decides membership
  const auto arcs = make_arcs(100, 2.0L, 1.0);
  CHECK(arcs.within(0.49L, 1));
  CHECK_FALSE(arcs.within(0.5L, 1));
  CHECK(arcs.within(0.12L, 2));
  CHECK_FALSE(arcs.within(0.125L, 2));
}

TEST_CASE("convergent search agrees with the exhaustive scan") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<long double> u(0, 1);
  for (const auto& arcs : {make_arcs(50, 400.0L, 1.2), make_arcs(1000, 3000.0L, 1.0), make_arcs(200, 1e5L, 2.0),
                           make_arcs(30, 50.0L, 1.0)}) {
    REQUIRE(arcs.Q <= 200);
    for (int i = 0; i < 500; ++i) {
      long double alpha = u(rng);
      if (i % 5 == 0) {  // land near rationals too
        const std::uint64_t q = 1 + rng() % arcs.Q;
        alpha = static_cast<long double>(rng() % q) / q + (u(rng) - 0.5L) * 1e-4L;
      }
      const auto fast = classify_arc(alpha, arcs);
      const auto slow = classify_arc_exhaustive(alpha, arcs, arcs.Q);
      CHECK(fast.major == slow.major);
      if (fast.major && slow.major) {
        CHECK(fast.q == slow.q);
        CHECK(fast.a == slow.a);
      }
    }
  }
}

TEST_CASE("complete Gauss sums on the W = 24 context") {
  const auto& ctx = ctx24();
  REQUIRE(ctx.K == 4);
  REQUIRE(ctx.b == 10);
  CHECK(std::abs(complete_gauss_sum(ctx, 1, 1) - Complex(1)) < 1e-12);
  CHECK(std::abs(complete_gauss_sum(ctx, 1, 2) - Complex(2)) < 1e-12);
  CHECK(std::abs(complete_gauss_sum(ctx, 1, 3)) < 1e-12);
}

TEST_CASE("Gauss sum dichotomy over divisors of W") {
  const auto& ctx = ctx24();
  for (std::uint64_t q = 1; q <= 64; ++q) {
    if (ctx.W % q) continue;
    const double expected = (ctx.K % q == 0) ? static_cast<double>(q) : 0.0;
    for (std::uint64_t a = 1; a <= q; ++a) {
      if (oracle::gcd(a, q) != 1) continue;
      CHECK_MESSAGE(std::abs(complete_gauss_sum(ctx, a, q) - Complex(expected)) <= 1e-6 * q, "q=" << q << " a=" << a);
    }
  }
}

TEST_CASE("Gauss sum against a direct oracle at q not dividing W") {
  const auto& ctx = ctx24();
  for (std::uint64_t q : {5u, 7u, 35u}) {
    for (std::uint64_t a = 1; a <= q; ++a) {
      if (oracle::gcd(a, q) != 1) continue;
      oracle::cld ref = 0;
      for (std::uint64_t s = 1; s <= q; ++s) {
        if (oracle::gcd(24 * s + 11, q) != 1) continue;
        const auto v = static_cast<std::uint64_t>(oracle::eval({24, 20, 0}, s) % q);
        ref += oracle::phase(static_cast<long double>((v * a) % q) / q);
      }
      const auto got = complete_gauss_sum(ctx, a, q);
      CHECK(std::abs(got - Complex(static_cast<double>(ref.real()), static_cast<double>(ref.imag()))) < 1e-9);
    }
  }
}

TEST_CASE("prime sum at alpha = 0 is Chebyshev theta") {
  const auto s = weighted_prime_sum(P({1, 0, 0}), 1, 1, 10'000, 0.0L);
  const double theta = static_cast<double>(oracle::theta(10'001));
  CHECK(s.real() == doctest::Approx(theta).epsilon(1e-10));
  CHECK(std::abs(s.real() - 10'000.0) <= 0.05 * 10'000);
  CHECK(std::abs(s.imag()) < 1e-9);
}

TEST_CASE("weighted poly sum at zero is mass times psi(M)") {
  const auto& ctx = ctx24();
  const auto m = build_poly_prime_measure(ctx);
  const auto s = weighted_poly_sum(ctx, 0.0L);
  const double scale = m.normalization.convert_to<double>();
  CHECK(s.real() == doctest::Approx(m.density.mass().real() * scale).epsilon(1e-9));
}

TEST_CASE("exact-phase and floating-phase sums agree") {
  const auto& ctx = ctx24();
  for (auto [num, den] : std::vector<std::pair<std::int64_t, std::uint64_t>>{{1, 3}, {2, 7}, {-5, 11}, {17, 1000}}) {
    const auto a = weighted_poly_sum_at(ctx, num, den);
    const auto b = weighted_poly_sum(ctx, static_cast<long double>(num) / den);
    CHECK(std::abs(a - b) <= 1e-6 * std::max(1.0, std::abs(a)));
  }
  const auto d = weighted_exp_sum(ctx, 0.1L, ExpSumForm::polynomial_weights);
  CHECK(std::abs(d - weighted_poly_sum(ctx, 0.1L)) < 1e-9 * std::max(1.0, std::abs(d)));
}

TEST_CASE("major arc main term") {
  const auto& ctx = ctx24();
  const auto arcs = make_arcs(ctx, 1.0);
  const double psiM = ctx.psi_bW(BigInt(ctx.M)).convert_to<double>();
  // at alpha = 0 the main term is the full length psi_{b,W}(M)
  const auto t0 = major_arc_main_term(ctx, arcs, 1, 1, 0.0L);
  CHECK(t0.real() == doctest::Approx(psiM).epsilon(1e-9));
  CHECK(major_arc_main_term(ctx, arcs, 1, 1, 0.0L, InnerSum::displayed).real() == doctest::Approx(psiM).epsilon(1e-9));
  // q = 3 divides W but not K: the Gauss factor vanishes
  CHECK(std::abs(major_arc_main_term(ctx, arcs, 1, 3, 1.0L / 3)) < 1e-6);
  CHECK(kind_of([&] { major_arc_main_term(ctx, arcs, 1, 3, 0.2L); }) == ErrorKind::domain);
}
