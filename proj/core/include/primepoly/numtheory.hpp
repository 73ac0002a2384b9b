#pragma once

// Exact integer number theory: sieves, primes in progressions, totient,
// valuations, CRT and the logarithmic prime weights lambda_{b,W}.

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "primepoly/bigint.hpp"

namespace primepoly::nt {

/// Primes up to a limit, held both as a membership bitset and as an
/// ascending list. Both views always agree.
class PrimeTable {
 public:
  std::uint64_t limit() const noexcept { return limit_; }
  const std::vector<std::uint64_t>& primes() const noexcept { return primes_; }
  std::size_t count() const noexcept { return primes_.size(); }

  /// Membership for 0 <= x <= limit(); values above the limit are an error.
  bool is_prime(std::uint64_t x) const;

 private:
  friend PrimeTable sieve_primes(std::uint64_t limit);
  std::uint64_t limit_ = 0;
  std::vector<bool> membership_;
  std::vector<std::uint64_t> primes_;
};

/// Sieve of Eratosthenes; segmented above 10^7 so memory stays bounded by
/// the bitset plus one cache-sized segment.
PrimeTable sieve_primes(std::uint64_t limit);

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime_u64(std::uint64_t n);

/// Smallest prime in (lo, hi], or nothing.
std::optional<std::uint64_t> prime_in_interval(std::uint64_t lo, std::uint64_t hi);

/// Prime factorization as (prime, exponent) pairs in increasing order.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);

std::uint64_t euler_phi(std::int64_t n);

/// nu_p(x): the largest v with p^v | x. Zero is rejected.
unsigned p_adic_valuation(std::uint64_t p, const BigInt& x);

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);

/// a*b mod m without overflow.
std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m);
/// Inverse of a modulo m; a and m must be coprime.
std::uint64_t invmod(std::uint64_t a, std::uint64_t m);

struct Congruence {
  BigInt residue;
  BigInt modulus;
};

/// Combine congruences with pairwise coprime moduli. Moduli sharing a
/// factor are rejected: inconsistent ones with ErrorKind::conflict,
/// consistent ones with ErrorKind::non_coprime (callers pre-merge).
Congruence crt(std::span<const Congruence> congruences);

/// lambda_{b,W}(x) = (phi(W)/W) log(Wx+b) if Wx+b is prime, else 0.
/// Requires gcd(b, W) = 1; b may exceed W.
double lambda_weight(std::uint64_t b, std::uint64_t W, std::uint64_t x);

struct WeightedAPPrimes {
  std::uint64_t b = 0;
  std::uint64_t W = 0;
  std::uint64_t limit = 0;
  std::vector<std::uint64_t> support;  ///< ascending x in [1, limit] with Wx+b prime
  std::vector<double> weights;         ///< lambda_{b,W}(x), parallel to support
};

/// All of Lambda_{b,W} on [1, M] with weights, by sieving the progression
/// Wx+b directly.
WeightedAPPrimes ap_primes(std::uint64_t b, std::uint64_t W, std::uint64_t M);

}  // namespace primepoly::nt
