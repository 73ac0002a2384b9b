#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "primepoly/errors.hpp"
#include "primepoly/numtheory.hpp"
#include "primepoly/wtrick.hpp"

using namespace primepoly;
using namespace primepoly::wtrick;

namespace {

IntPolynomial P(std::vector<std::int64_t> hf) {
  std::vector<BigInt> c(hf.begin(), hf.end());
  return IntPolynomial::from_highest_first(std::move(c));
}

template <class F>
Error error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e;
  }
  FAIL("expected an Error");
  return Error(ErrorKind::internal, "");
}

// brute force c_p: returns -1 for none, -2 when an odd psi(c) is met first
std::int64_t brute_cp(const std::vector<std::int64_t>& hf, std::uint64_t b0, std::uint64_t W0, std::uint64_t p) {
  for (std::uint64_t c = 1; c <= p; ++c) {
    if ((W0 * c + b0) % p == 0) continue;
    const oracle::i128 v = oracle::eval(hf, c);
    if (v % 2 != 0) return -2;
    oracle::i128 h = (v / 2) % static_cast<oracle::i128>(p);
    if (h != 0) return static_cast<std::int64_t>(c);
  }
  return -1;
}

const std::map<std::uint64_t, unsigned> kW6{{2, 1}, {3, 1}};

}  // namespace

TEST_CASE("find_nonroot") {
  const std::vector<std::uint64_t> s1{1, 2, 3, 4, 5};
  CHECK(find_nonroot(P({2, 1}), 5, s1) == 1);
  const std::vector<std::uint64_t> s2{3, 6, 9};
  CHECK(error_of([&] { find_nonroot(P({1, 0, 0}), 3, s2); }).kind() == ErrorKind::non_distinct);
  const std::vector<std::uint64_t> s3{0, 1};
  CHECK(find_nonroot(P({1, 0}), 2, s3) == 1);
  CHECK(error_of([&] { find_nonroot(P({3, 0}), 3, s1); }).kind() == ErrorKind::degenerate_polynomial);
  const std::vector<std::uint64_t> s4{2};
  CHECK(error_of([&] { find_nonroot(P({1, 0, 1}), 5, s4); }).kind() == ErrorKind::insufficient_set);
}

TEST_CASE("select_bp examples") {
  CHECK(select_bp(P({1, 0, 0}), 1, 1, 3, 2, Variant::integer_coloring) == 3);
  CHECK(select_bp(P({1, 0, 0}), 1, 1, 3, 5, Variant::integer_coloring) == 2);
  CHECK(select_bp(P({1, 1, 0}), 1, 4, 20, 3, Variant::prime_coloring, 1) == 5);
  CHECK(error_of([] { select_bp(P({1, 1, 0}), 1, 4, 20, 3, Variant::prime_coloring); }).kind() ==
        ErrorKind::necessity_violation);
}

TEST_CASE("select_bp outputs satisfy their constraints on random instances") {
  std::mt19937_64 rng(2024);
  const auto primes = nt::sieve_primes(200).primes();
  int checked = 0;
  while (checked < 1000) {
    const int k = 2 + static_cast<int>(rng() % 2);
    std::vector<std::int64_t> hf(k + 1);
    for (auto& c : hf) c = static_cast<std::int64_t>(rng() % 11) - 5;
    hf[0] = 1 + static_cast<std::int64_t>(rng() % 6);
    const std::uint64_t W0 = 1 + rng() % 4;
    std::uint64_t b0 = 1 + rng() % W0;
    while (oracle::gcd(b0, W0) != 1) b0 = 1 + rng() % W0;
    const auto psi = P(hf);
    const auto Psi = poly::psi_bound(psi, W0, Variant::integer_coloring);
    const std::uint64_t p = primes[rng() % primes.size()];
    std::uint64_t bp = 0;
    try {
      bp = select_bp(psi, b0, W0, Psi, p, Variant::integer_coloring);
    } catch (const Error&) {
      continue;  // degenerate derivative mod p or no positive derivative
    }
    ++checked;
    REQUIRE(bp % W0 == b0 % W0);
    const oracle::i128 t = (static_cast<oracle::i128>(bp) - b0) / W0;
    std::vector<std::int64_t> d;
    for (int i = 0; i < k; ++i) d.push_back(hf[i] * (k - i));
    const oracle::i128 dv = oracle::eval(d, t);
    if (p > Psi) {
      CHECK(bp <= p - 1);
      CHECK(dv % static_cast<oracle::i128>(p) != 0);
    } else {
      CHECK(dv > 0);
      CHECK(bp % p != 0);
    }
  }
}

TEST_CASE("check_cp examples") {
  CHECK(check_cp(P({1, 1, 0}), 1, 4, 3) == std::optional<std::uint64_t>(1));
  CHECK_FALSE(check_cp(P({6, 0, 0}), 1, 1, 3).has_value());
  CHECK_FALSE(check_cp(P({1, 1, 0}), 1, 2, 3).has_value());
  CHECK(error_of([] { check_cp(P({1, 1, 1}), 1, 1, 5); }).kind() == ErrorKind::parity);
}

TEST_CASE("check_cp agrees with brute force") {
  std::mt19937_64 rng(77);
  const auto primes = nt::sieve_primes(50).primes();
  for (int trial = 0; trial < 100; ++trial) {
    // even-valued: 2 g(x) + e (x^2 + x)
    std::vector<std::int64_t> hf(3);
    for (auto& c : hf) c = 2 * (static_cast<std::int64_t>(rng() % 9) - 4);
    if (rng() % 2) {
      hf[0] += 1;
      hf[1] += 1;
    }
    if (hf[0] == 0) hf[0] = 2;
    const std::uint64_t W0 = 1 + rng() % 6;
    std::uint64_t b0 = 1 + rng() % W0;
    while (oracle::gcd(b0, W0) != 1) b0 = 1 + rng() % W0;
    for (auto p : primes) {
      const auto expect = brute_cp(hf, b0, W0, p);
      const auto got = check_cp(P(hf), b0, W0, p);
      if (expect == -1)
        CHECK_FALSE(got.has_value());
      else
        CHECK(got == std::optional<std::uint64_t>(static_cast<std::uint64_t>(expect)));
    }
  }
}

TEST_CASE("compute_K examples") {
  std::map<std::uint64_t, std::uint64_t> bp{{2, 3}, {3, 2}};
  CHECK(compute_K(bp, P({1, 0, 0}), 1, 1, 3) == 4);
  std::map<std::uint64_t, std::uint64_t> bp2{{2, 1}, {3, 1}, {5, 1}};
  CHECK(compute_K(bp2, P({1, 1, 0}), 1, 2, 6) == 1);
  std::map<std::uint64_t, std::uint64_t> bp3{{2, 1}};
  CHECK(error_of([&] { compute_K(bp3, P({1, 0, 0}), 1, 1, 3); }).kind() == ErrorKind::domain);
}

TEST_CASE("build_context: x^2 + x with W = 6") {
  const auto ctx = build_context(P({1, 1, 0}), 1, 2, 2, Variant::integer_coloring, kW6, 10'000);
  CHECK(ctx.Psi == 6);
  CHECK(ctx.bp == std::map<std::uint64_t, std::uint64_t>{{2, 1}, {3, 1}, {5, 1}});
  CHECK(ctx.K == 1);
  CHECK(ctx.W == 6);
  CHECK(ctx.b == 0);
  CHECK(oracle::gcd(2 * ctx.b + 1, 12) == 1);
  CHECK(ctx.psi_at_b() % 2 == 0);
  CHECK(ctx.N == 3343);
  CHECK(ctx.N > 3333);
  CHECK(oracle::is_prime(ctx.N));
  CHECK(ctx.psi_bW.poly == P({6, 1, 0}));
  CHECK(ctx.M == 23);
  CHECK(ctx.kappa_denominator() == 20'000);
  for (const auto& inv : context_invariants(ctx)) CHECK_MESSAGE(inv.passed, inv.name << ": " << inv.detail);
  CHECK(verify_gcd_identity(ctx) == GcdIdentity::holds);
}

TEST_CASE("build_context: x^2 with W = 24") {
  const auto ctx =
      build_context(P({1, 0, 0}), 1, 1, 2, Variant::integer_coloring, {{2, 3}, {3, 1}}, 100'000);
  CHECK(ctx.bp.at(2) == 3);
  CHECK(ctx.bp.at(3) == 2);
  CHECK(ctx.K == 4);
  CHECK(ctx.W == 24);
  CHECK(ctx.b == 10);
  CHECK(ctx.psi_bW.poly == P({24, 20, 0}));
  for (const auto& inv : context_invariants(ctx)) CHECK_MESSAGE(inv.passed, inv.name << ": " << inv.detail);
  CHECK(verify_gcd_identity(ctx) == GcdIdentity::holds);
}

TEST_CASE("gcd identity is inconclusive below the valuation") {
  const auto ctx = build_context(P({1, 0, 0}), 1, 1, 2, Variant::integer_coloring, kW6, 100'000);
  CHECK(ctx.K == 4);
  CHECK_FALSE(gcd_identity_precondition(ctx));
  CHECK(verify_gcd_identity(ctx) == GcdIdentity::inconclusive);
}

TEST_CASE("build_context: necessity violation for 6x^2") {
  const auto e = error_of(
      [] { build_context(P({6, 0, 0}), 1, 1, 2, Variant::prime_coloring, kW6, 10'000); });
  CHECK(e.kind() == ErrorKind::necessity_violation);
  REQUIRE(e.prime().has_value());
  CHECK(*e.prime() == 2);  // smallest violator; 3 is listed too
  CHECK(std::string(e.what()).find("3") != std::string::npos);
  CHECK_FALSE(check_cp(P({6, 0, 0}), 1, 1, 3).has_value());
}

TEST_CASE("build_context: precondition and hypothesis errors") {
  CHECK(error_of([] { build_context(P({1, 0, 0}), 2, 4, 2, Variant::integer_coloring, kW6, 10'000); }).kind() ==
        ErrorKind::precondition);
  // psi = x^2 + 1 with W0 = 2: psi(1) = 2 even, so parity holds; psi = x^2 + x + 1 never even
  CHECK(error_of([] { build_context(P({1, 1, 1}), 1, 2, 2, Variant::integer_coloring, kW6, 10'000); }).kind() ==
        ErrorKind::hypothesis);
  CHECK(error_of([] {
          build_context(P({1, 1, 0}), 1, 2, 2, Variant::integer_coloring, {{2, 5}, {3, 4}, {5, 2}}, 100);
        }).kind() == ErrorKind::scale);
}

TEST_CASE("prime-coloring context for x^2 + x, W0 = 4") {
  const auto ctx = build_context(P({1, 1, 0}), 1, 4, 2, Variant::prime_coloring, kW6, 50'000);
  CHECK(ctx.Psi == 20);
  CHECK(ctx.cp.at(3) == 1);
  CHECK(ctx.bp.at(3) == 5);
  for (const auto& inv : context_invariants(ctx)) CHECK_MESSAGE(inv.passed, inv.name << ": " << inv.detail);
}

TEST_CASE("context JSON round trip") {
  const auto ctx = build_context(P({1, 0, 0}), 1, 1, 3, Variant::integer_coloring, {{2, 3}, {3, 1}}, 100'000);
  const auto text = to_json(ctx);
  CHECK(context_from_json(text) == ctx);
  CHECK(text.find("\"N\": \"") != std::string::npos);
  CHECK(error_of([] { context_from_json("{"); }).kind() == ErrorKind::parse);
}

TEST_CASE("gcd identity on a randomized suite") {
  std::mt19937_64 rng(5150);
  int holds = 0, attempts = 0;
  while (holds < 50 && attempts < 5000) {
    ++attempts;
    // x^2 + x + 2c or 2(a x^2 + c x)
    std::vector<std::int64_t> hf;
    if (rng() % 2)
      hf = {1, 1, 2 * static_cast<std::int64_t>(rng() % 5)};
    else
      hf = {2 * static_cast<std::int64_t>(1 + rng() % 3), 2 * static_cast<std::int64_t>(rng() % 4), 0};
    const std::uint64_t W0 = std::vector<std::uint64_t>{1, 2, 4, 3}[rng() % 4];
    std::uint64_t b0 = 1 + rng() % W0;
    while (oracle::gcd(b0, W0) != 1) b0 = 1 + rng() % W0;
    const auto psi = P(hf);
    if (!parity_certificate(psi, b0, W0)) continue;
    const auto Psi = poly::psi_bound(psi, W0, Variant::integer_coloring);
    // exponents one above each valuation for p <= Psi, plus 2 and 3
    std::map<std::uint64_t, unsigned> w;
    try {
      for (auto p : primes_up_to(Psi)) {
        const auto bp = select_bp(psi, b0, W0, Psi, p, Variant::integer_coloring);
        const BigInt t = (BigInt(bp) - b0) / W0;
        w[p] = nt::p_adic_valuation(p, psi.derivative()(t)) + 1;
      }
      const auto ctx = build_context(psi, b0, W0, 2, Variant::integer_coloring, w, 2'000'000);
      REQUIRE(gcd_identity_precondition(ctx));
      CHECK(verify_gcd_identity(ctx) == GcdIdentity::holds);
      ++holds;
    } catch (const Error& e) {
      CHECK_MESSAGE((e.kind() == ErrorKind::scale || e.kind() == ErrorKind::hypothesis), e.what());
    }
  }
  CHECK(holds == 50);
}
