#include "primepoly/arcs.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "primepoly/errors.hpp"
#include "primepoly/numtheory.hpp"

namespace primepoly::spectral {

namespace {

constexpr std::uint64_t kQCeiling = std::uint64_t{1} << 62;

// Phase e(alpha * v) for a possibly large integer v: the integer part of
// alpha is dropped first, then v is split so the product stays accurate.
Complex phase_times(long double alpha, const BigInt& v) {
  alpha -= std::floor(alpha);
  const std::uint64_t lo = mod_u64(v, std::uint64_t{1} << 32);
  const std::int64_t hi = to_i64((v - lo) / (BigInt(1) << 32));
  long double t = alpha * static_cast<long double>(lo);
  if (hi != 0) {
    const long double scaled = alpha * 4294967296.0L;
    t += (scaled - std::floor(scaled)) * static_cast<long double>(hi);
  }
  return unit_phase(t);
}

bool coprime(std::uint64_t a, std::uint64_t b) { return nt::gcd_u64(a, b) == 1; }

std::uint64_t checked_product(std::uint64_t a, std::uint64_t b) {
  const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  if (p >> 63) throw Error(ErrorKind::domain, "modulus product exceeds 63 bits");
  return static_cast<std::uint64_t>(p);
}

}  // namespace

long double torus_norm(long double t) {
  const long double f = t - std::floor(t);
  return std::min(f, 1.0L - f);
}

bool ArcDecomposition::within(long double scaled_distance, std::uint64_t q) const {
  const long double qd = static_cast<long double>(q);
  return scaled_distance <= delta && scaled_distance < 1.0L / (2.0L * qd * qd);
}

ArcDecomposition make_arcs(std::uint64_t M, long double psi_M, double B) {
  if (M < 1) throw Error(ErrorKind::domain, "arc decomposition needs M >= 1");
  if (!(psi_M > 0)) throw Error(ErrorKind::domain, "arc decomposition needs psi_{b,W}(M) > 0");
  if (!(B > 0)) throw Error(ErrorKind::domain, "arc exponent B must be positive");
  ArcDecomposition arcs;
  arcs.M = M;
  arcs.B = B;
  arcs.psi_M = psi_M;
  const long double height = std::pow(std::log(static_cast<long double>(M)), static_cast<long double>(B));
  arcs.Q = height >= static_cast<long double>(kQCeiling) ? kQCeiling : static_cast<std::uint64_t>(std::floor(height));
  arcs.delta = height / psi_M;
  return arcs;
}

ArcDecomposition make_arcs(const wtrick::WTrickContext& ctx, double B) {
  return make_arcs(ctx.M, static_cast<long double>(to_double(ctx.psi_bW(BigInt(ctx.M)))), B);
}

bool in_major_arc(long double alpha, std::uint64_t a, std::uint64_t q, const ArcDecomposition& arcs) {
  if (q < 1 || a < 1 || a > q || q > arcs.Q || !coprime(a, q)) return false;
  const long double qd = static_cast<long double>(q);
  const long double d = qd * torus_norm(alpha - static_cast<long double>(a) / qd);
  return arcs.within(d, q);
}

ArcClass classify_arc(long double alpha, const ArcDecomposition& arcs) {
  alpha -= std::floor(alpha);
  // convergents h/k of alpha via the standard recurrence
  long double x = alpha;
  long double h_prev = 1, h = 0;  // h_{-1}, h_0 (floor of alpha in [0,1) is 0)
  long double k_prev = 0, k = 1;
  for (int step = 0; step < 96; ++step) {
    if (k > static_cast<long double>(arcs.Q)) break;
    const auto q = static_cast<std::uint64_t>(k);
    std::uint64_t a = static_cast<std::uint64_t>(h) % q;
    if (a == 0) a = q;
    if (in_major_arc(alpha, a, q, arcs)) return {true, a, q};

    const long double frac = x - std::floor(x);
    if (frac < 1e-30L) break;
    x = 1.0L / frac;
    const long double digit = std::floor(x);
    const long double h_next = digit * h + h_prev;
    const long double k_next = digit * k + k_prev;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
    if (k > 1e18L) break;
  }
  return {};
}

ArcClass classify_arc_exhaustive(long double alpha, const ArcDecomposition& arcs, std::uint64_t q_limit) {
  for (std::uint64_t q = 1; q <= q_limit && q <= arcs.Q; ++q)
    for (std::uint64_t a = 1; a <= q; ++a)
      if (in_major_arc(alpha, a, q, arcs)) return {true, a, q};
  return {};
}

Complex complete_gauss_sum(const wtrick::WTrickContext& ctx, std::uint64_t a, std::uint64_t q) {
  if (q < 1) throw Error(ErrorKind::domain, "Gauss sum needs q >= 1");
  const std::uint64_t step = ctx.progression_modulus() % q;
  const std::uint64_t base = ctx.progression_residue() % q;
  Complex acc = 0;
  for (std::uint64_t s = 1; s <= q; ++s) {
    const std::uint64_t arg = (nt::mulmod(step, s, q) + base) % q;
    if (!coprime(arg, q) && q > 1) continue;
    const std::uint64_t v = ctx.psi_bW.poly.eval_mod(BigInt(s), q);
    acc += unit_phase(nt::mulmod(v, a % q, q), q);
  }
  return acc;
}

Complex weighted_poly_sum(const wtrick::WTrickContext& ctx, long double alpha) {
  const auto primes = nt::ap_primes(ctx.progression_residue(), ctx.progression_modulus(), ctx.M);
  Complex acc = 0;
  for (std::size_t i = 0; i < primes.support.size(); ++i) {
    const BigInt z(primes.support[i]);
    const BigInt value = ctx.psi_bW(z);
    const double delta = to_double(value - ctx.psi_bW(z - 1));
    acc += delta * primes.weights[i] * phase_times(alpha, value);
  }
  return acc;
}

Complex weighted_poly_sum_at(const wtrick::WTrickContext& ctx, std::int64_t num, std::uint64_t den) {
  if (den == 0) throw Error(ErrorKind::domain, "zero denominator");
  const std::int64_t reduced = num % static_cast<std::int64_t>(den);
  const std::uint64_t n = reduced < 0 ? static_cast<std::uint64_t>(reduced + static_cast<std::int64_t>(den))
                                      : static_cast<std::uint64_t>(reduced);
  const auto primes = nt::ap_primes(ctx.progression_residue(), ctx.progression_modulus(), ctx.M);
  Complex acc = 0;
  for (std::size_t i = 0; i < primes.support.size(); ++i) {
    const BigInt z(primes.support[i]);
    const BigInt value = ctx.psi_bW(z);
    const double delta = to_double(value - ctx.psi_bW(z - 1));
    acc += delta * primes.weights[i] * unit_phase(nt::mulmod(mod_u64(value, den), n, den), den);
  }
  return acc;
}

Complex weighted_prime_sum(const poly::IntPolynomial& psi, std::uint64_t b, std::uint64_t W, std::uint64_t N,
                           long double alpha) {
  const auto primes = nt::ap_primes(b, W, N);
  Complex acc = 0;
  for (std::size_t i = 0; i < primes.support.size(); ++i)
    acc += primes.weights[i] * phase_times(alpha, psi(BigInt(primes.support[i])));
  return acc;
}

Complex weighted_exp_sum(const wtrick::WTrickContext& ctx, long double alpha, ExpSumForm form) {
  if (form == ExpSumForm::polynomial_weights) return weighted_poly_sum(ctx, alpha);
  return weighted_prime_sum(ctx.psi, ctx.progression_residue(), ctx.progression_modulus(), ctx.N, alpha);
}

Complex major_arc_main_term(const wtrick::WTrickContext& ctx, const ArcDecomposition& arcs, std::uint64_t a,
                            std::uint64_t q, long double alpha, InnerSum inner) {
  if (!in_major_arc(alpha, a, q, arcs))
    throw Error(ErrorKind::domain, "alpha lies outside the major arc " + std::to_string(a) + "/" + std::to_string(q));

  const std::uint64_t WW0 = ctx.progression_modulus();
  const long double factor = static_cast<long double>(nt::euler_phi(static_cast<std::int64_t>(WW0))) /
                             static_cast<long double>(nt::euler_phi(static_cast<std::int64_t>(checked_product(WW0, q))));
  const Complex gauss = complete_gauss_sum(ctx, a, q);

  // beta = alpha - a/q taken in (-1/2, 1/2]
  long double beta = alpha - static_cast<long double>(a) / static_cast<long double>(q);
  beta -= std::round(beta);

  const BigInt length_big = ctx.psi_bW(BigInt(ctx.M));
  Complex tail = 0;
  if (inner == InnerSum::linear) {
    const long double L = static_cast<long double>(to_double(length_big));
    if (beta == 0) {
      tail = static_cast<double>(L);
    } else {
      // sum_{x=1}^{L} e(beta x) = e(beta) (e(beta L) - 1) / (e(beta) - 1)
      const Complex eb = unit_phase(beta);
      tail = eb * (phase_times(beta, length_big) - Complex(1)) / (eb - Complex(1));
    }
  } else {
    const std::uint64_t L = to_u64(length_big);
    for (std::uint64_t x = 1; x <= L; ++x) tail += phase_times(beta, ctx.psi_bW(BigInt(x)));
  }
  return static_cast<double>(factor) * gauss * tail;
}

}  // namespace primepoly::spectral
