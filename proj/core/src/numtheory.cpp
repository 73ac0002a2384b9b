#include "primepoly/numtheory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "primepoly/errors.hpp"

namespace primepoly::nt {

namespace {

constexpr std::uint64_t kSegmentThreshold = 10'000'000;
constexpr std::uint64_t kSegmentSize = 1u << 18;

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// Plain sieve of [0, limit] into a byte array.
std::vector<char> small_sieve(std::uint64_t limit) {
  std::vector<char> composite(limit + 1, 0);
  composite[0] = 1;
  if (limit >= 1) composite[1] = 1;
  for (std::uint64_t i = 2; i * i <= limit; ++i)
    if (!composite[i])
      for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = 1;
  return composite;
}

}  // namespace

bool PrimeTable::is_prime(std::uint64_t x) const {
  if (x > limit_)
    throw Error(ErrorKind::domain,
                std::to_string(x) + " exceeds prime table limit " + std::to_string(limit_));
  return membership_[x];
}

PrimeTable sieve_primes(std::uint64_t limit) {
  if (limit < 2) throw Error(ErrorKind::empty_table, "sieve limit must be at least 2");

  PrimeTable table;
  table.limit_ = limit;
  table.membership_.assign(limit + 1, false);
  table.primes_.reserve(static_cast<std::size_t>(1.1 * limit / std::log(static_cast<double>(limit))) + 16);

  if (limit <= kSegmentThreshold) {
    auto composite = small_sieve(limit);
    for (std::uint64_t i = 2; i <= limit; ++i)
      if (!composite[i]) {
        table.membership_[i] = true;
        table.primes_.push_back(i);
      }
    return table;
  }

  const std::uint64_t root = isqrt(limit);
  auto base_composite = small_sieve(root);
  std::vector<std::uint64_t> base;
  for (std::uint64_t i = 2; i <= root; ++i)
    if (!base_composite[i]) base.push_back(i);

  std::vector<char> segment(kSegmentSize);
  for (std::uint64_t lo = 2; lo <= limit; lo += kSegmentSize) {
    const std::uint64_t hi = std::min(limit, lo + kSegmentSize - 1);
    std::fill(segment.begin(), segment.end(), 0);
    for (std::uint64_t p : base) {
      if (p * p > hi) break;
      std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
      for (std::uint64_t j = start; j <= hi; j += p) segment[j - lo] = 1;
    }
    for (std::uint64_t x = lo; x <= hi; ++x)
      if (!segment[x - lo]) {
        table.membership_[x] = true;
        table.primes_.push_back(x);
      }
  }
  return table;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) result = mulmod(result, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return result;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t m) {
  // extended Euclid in signed 128-bit
  __int128 old_r = a % m, r = m, old_s = 1, s = 0;
  while (r != 0) {
    __int128 q = old_r / r;
    __int128 t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) throw Error(ErrorKind::domain, "no inverse: arguments not coprime");
  __int128 inv = old_s % static_cast<__int128>(m);
  if (inv < 0) inv += m;
  return static_cast<std::uint64_t>(inv);
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These twelve bases are exact for n < 3.3 * 10^24.
  for (std::uint64_t a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::optional<std::uint64_t> prime_in_interval(std::uint64_t lo, std::uint64_t hi) {
  for (std::uint64_t x = lo + 1; x <= hi && x > lo; ++x)
    if (is_prime_u64(x)) return x;
  return std::nullopt;
}

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::uint64_t euler_phi(std::int64_t n) {
  if (n <= 0) throw Error(ErrorKind::domain, "euler_phi needs n >= 1, got " + std::to_string(n));
  auto m = static_cast<std::uint64_t>(n);
  std::uint64_t phi = m;
  for (auto [p, e] : factorize(m)) phi = phi / p * (p - 1);
  return phi;
}

unsigned p_adic_valuation(std::uint64_t p, const BigInt& x) {
  if (x == 0) throw Error(ErrorKind::domain, "p-adic valuation of 0 is undefined");
  if (p < 2) throw Error(ErrorKind::domain, "valuation base must be a prime");
  BigInt v = abs(x);
  unsigned count = 0;
  while (v % p == 0) {
    v /= p;
    ++count;
  }
  return count;
}

Congruence crt(std::span<const Congruence> congruences) {
  Congruence acc{0, 1};
  for (const auto& c : congruences) {
    if (c.modulus < 1) throw Error(ErrorKind::domain, "CRT modulus must be positive");
    BigInt r = c.residue % c.modulus;
    if (r < 0) r += c.modulus;
    BigInt g = gcd(acc.modulus, c.modulus);
    if (g != 1) {
      BigInt diff = (acc.residue - r) % g;
      if (diff != 0)
        throw Error(ErrorKind::conflict, "inconsistent congruences modulo " + c.modulus.str() +
                                             " and " + acc.modulus.str());
      throw Error(ErrorKind::non_coprime, "CRT moduli " + acc.modulus.str() + " and " +
                                              c.modulus.str() + " are not coprime");
    }
    // acc.residue + acc.modulus * t == r (mod c.modulus)
    BigInt inv = 0;
    {
      BigInt old_r = acc.modulus % c.modulus, rr = c.modulus, old_s = 1, s = 0;
      while (rr != 0) {
        BigInt q = old_r / rr;
        BigInt t = old_r - q * rr;
        old_r = rr;
        rr = t;
        t = old_s - q * s;
        old_s = s;
        s = t;
      }
      inv = old_s % c.modulus;
      if (inv < 0) inv += c.modulus;
    }
    BigInt t = ((r - acc.residue) % c.modulus) * inv % c.modulus;
    if (t < 0) t += c.modulus;
    acc.residue += acc.modulus * t;
    acc.modulus *= c.modulus;
    acc.residue %= acc.modulus;
  }
  return acc;
}

double lambda_weight(std::uint64_t b, std::uint64_t W, std::uint64_t x) {
  if (W == 0) throw Error(ErrorKind::domain, "lambda weight needs W >= 1");
  if (gcd_u64(b, W) != 1)
    throw Error(ErrorKind::domain,
                "lambda weight needs gcd(b, W) = 1, got b=" + std::to_string(b) + " W=" + std::to_string(W));
  const unsigned __int128 value = static_cast<unsigned __int128>(W) * x + b;
  if (value >> 64) throw Error(ErrorKind::domain, "Wx+b exceeds 64 bits");
  const auto v = static_cast<std::uint64_t>(value);
  if (!is_prime_u64(v)) return 0.0;
  return static_cast<double>(euler_phi(static_cast<std::int64_t>(W))) / static_cast<double>(W) *
         std::log(static_cast<double>(v));
}

WeightedAPPrimes ap_primes(std::uint64_t b, std::uint64_t W, std::uint64_t M) {
  if (W == 0) throw Error(ErrorKind::domain, "ap_primes needs W >= 1");
  if (gcd_u64(b, W) != 1)
    throw Error(ErrorKind::domain,
                "ap_primes needs gcd(b, W) = 1, got b=" + std::to_string(b) + " W=" + std::to_string(W));
  const unsigned __int128 top = static_cast<unsigned __int128>(W) * M + b;
  if (top >> 63) throw Error(ErrorKind::domain, "WM+b exceeds 63 bits");

  WeightedAPPrimes out;
  out.b = b;
  out.W = W;
  out.limit = M;
  if (M == 0) return out;

  const auto max_value = static_cast<std::uint64_t>(top);
  const std::uint64_t root = isqrt(max_value);
  auto base_composite = small_sieve(std::max<std::uint64_t>(root, 2));

  // composite[x - 1] for x in [1, M]
  std::vector<bool> composite(M, false);
  for (std::uint64_t p = 2; p <= root; ++p) {
    if (base_composite[p] || W % p == 0) continue;
    // W x + b == 0 (mod p)  <=>  x == -b W^{-1} (mod p)
    const std::uint64_t inv = invmod(W % p, p);
    std::uint64_t x0 = mulmod((p - b % p) % p, inv, p);
    if (x0 == 0) x0 = p;
    for (std::uint64_t x = x0; x <= M; x += p) {
      if (W * x + b != p) composite[x - 1] = true;
    }
  }

  const double scale = static_cast<double>(euler_phi(static_cast<std::int64_t>(W))) / static_cast<double>(W);
  for (std::uint64_t x = 1; x <= M; ++x) {
    if (composite[x - 1]) continue;
    const std::uint64_t v = W * x + b;
    if (v < 2) continue;
    out.support.push_back(x);
    out.weights.push_back(scale * std::log(static_cast<double>(v)));
  }
  return out;
}

}  // namespace primepoly::nt
