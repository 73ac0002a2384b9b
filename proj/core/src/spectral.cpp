#include "primepoly/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "primepoly/errors.hpp"
#include "primepoly/numtheory.hpp"

namespace primepoly::spectral {

DensityFunction::DensityFunction(std::vector<Complex> values) : values_(std::move(values)) {
  if (values_.empty()) throw Error(ErrorKind::domain, "density function needs N >= 1");
}

DensityFunction DensityFunction::zeros(std::uint64_t N) { return DensityFunction(std::vector<Complex>(N)); }

DensityFunction DensityFunction::delta(std::uint64_t N, std::uint64_t at) {
  std::vector<Complex> v(N);
  v[at % N] = 1.0;
  return DensityFunction(std::move(v));
}

DensityFunction DensityFunction::constant(std::uint64_t N, Complex value) {
  return DensityFunction(std::vector<Complex>(N, value));
}

DensityFunction DensityFunction::indicator(std::uint64_t N, std::span<const std::uint64_t> set) {
  std::vector<Complex> v(N);
  for (auto x : set) v[x % N] = 1.0;
  return DensityFunction(std::move(v));
}

DensityFunction DensityFunction::from_spectrum(std::vector<Complex> spectrum) {
  DensityFunction f(inverse_dft(spectrum));
  std::call_once(f.cache_->once, [&] { f.cache_->spectrum = std::move(spectrum); });
  return f;
}

const std::vector<Complex>& DensityFunction::spectrum() const {
  std::call_once(cache_->once, [this] { cache_->spectrum = dft(values_); });
  return cache_->spectrum;
}

Complex DensityFunction::mass() const {
  Complex acc = 0;
  for (const auto& v : values_) acc += v;
  return acc;
}

DensityFunction convolve(const DensityFunction& f, const DensityFunction& g) {
  const std::uint64_t N = f.modulus();
  if (g.modulus() != N)
    throw Error(ErrorKind::modulus_mismatch, "convolution of functions on Z_" + std::to_string(N) + " and Z_" +
                                                 std::to_string(g.modulus()));
  if (N <= kDirectDftLimit) {
    std::vector<Complex> out(N);
    const auto& fv = f.values();
    const auto& gv = g.values();
    for (std::uint64_t y = 0; y < N; ++y) {
      if (fv[y] == Complex(0)) continue;
      for (std::uint64_t x = 0; x < N; ++x) out[x] += fv[y] * gv[(x + N - y) % N];
    }
    return DensityFunction(std::move(out));
  }
  const auto& fs = f.spectrum();
  const auto& gs = g.spectrum();
  std::vector<Complex> prod(N);
  for (std::uint64_t r = 0; r < N; ++r) prod[r] = fs[r] * gs[r];
  return DensityFunction::from_spectrum(std::move(prod));
}

PolyPrimeMeasure build_poly_prime_measure(const wtrick::WTrickContext& ctx) {
  const std::uint64_t N = ctx.N;
  if (N < 2) throw Error(ErrorKind::domain, "measure needs N >= 2");
  if (ctx.M < 1) throw Error(ErrorKind::domain, "measure needs M >= 1");

  const auto primes = nt::ap_primes(ctx.progression_residue(), ctx.progression_modulus(), ctx.M);
  const BigInt norm = ctx.psi_bW(BigInt(ctx.M));
  if (norm <= 0) throw Error(ErrorKind::domain, "psi_{b,W}(M) must be positive");
  const double norm_d = to_double(norm);

  // owner[x] = z + 1 for the z mapped onto x, 0 when free
  std::vector<std::uint64_t> owner(N, 0);
  std::vector<std::uint64_t> residue_of(ctx.M + 1, 0);
  BigInt prev = ctx.psi_bW(BigInt(0));
  std::vector<double> delta(ctx.M + 1, 0.0);
  for (std::uint64_t z = 1; z <= ctx.M; ++z) {
    const BigInt value = ctx.psi_bW(BigInt(z));
    const std::uint64_t x = mod_u64(value, N);
    if (owner[x] != 0)
      throw Error(ErrorKind::well_definedness, "psi_{b,W}(" + std::to_string(owner[x] - 1) + ") and psi_{b,W}(" +
                                                   std::to_string(z) + ") collide modulo N=" + std::to_string(N));
    owner[x] = z + 1;
    residue_of[z] = x;
    delta[z] = to_double(value - prev);
    prev = value;
  }

  PolyPrimeMeasure out;
  out.normalization = norm;
  out.checked_arguments = ctx.M;
  std::vector<Complex> values(N);
  for (std::size_t i = 0; i < primes.support.size(); ++i) {
    const std::uint64_t z = primes.support[i];
    const double w = delta[z] * primes.weights[i] / norm_d;
    values[residue_of[z]] = w;
    out.support.push_back({z, residue_of[z], w});
  }
  out.density = DensityFunction(std::move(values));
  return out;
}

DensityFunction build_prime_coloring_measure(std::span<const std::uint64_t> A, const wtrick::WTrickContext& ctx) {
  const std::uint64_t N = ctx.N;
  const std::uint64_t shift = ctx.half_psi_b();
  const std::uint64_t modulus = ctx.K * ctx.W;
  if (nt::gcd_u64(shift, modulus) != 1)
    throw Error(ErrorKind::domain, "gcd(psi(b)/2, KW) = " + std::to_string(nt::gcd_u64(shift, modulus)) + " != 1");
  std::vector<Complex> values(N);
  for (auto x : A) {
    if (x >= N) throw Error(ErrorKind::domain, "element of A outside Z_N");
    const unsigned __int128 v = static_cast<unsigned __int128>(modulus) * x + shift;
    if (v < 2) continue;
    values[x] = nt::lambda_weight(shift, modulus, x) / static_cast<double>(N);
  }
  return DensityFunction(std::move(values));
}

std::vector<std::uint64_t> large_spectrum(const DensityFunction& f, double eta) {
  if (!(eta > 0)) throw Error(ErrorKind::domain, "large spectrum threshold must be positive");
  std::vector<std::uint64_t> out;
  const auto& s = f.spectrum();
  for (std::uint64_t r = 0; r < s.size(); ++r)
    if (std::abs(s[r]) >= eta) out.push_back(r);
  return out;
}

bool in_bohr_set(std::uint64_t x, std::span<const std::uint64_t> R, Rational epsilon, std::uint64_t N) {
  const auto p = static_cast<unsigned __int128>(epsilon.numerator());
  const auto q = static_cast<unsigned __int128>(epsilon.denominator());
  for (auto r : R) {
    const std::uint64_t t = nt::mulmod(x % N, r % N, N);
    const std::uint64_t dist = std::min(t, N - t);
    // dist / N <= p / q
    if (static_cast<unsigned __int128>(dist) * q > p * N) return false;
  }
  return true;
}

bool bohr_bound_holds(std::size_t size, std::size_t num_frequencies, Rational epsilon, std::uint64_t N) {
  const auto e = static_cast<unsigned>(num_frequencies);
  const BigInt lhs = BigInt(size) * boost::multiprecision::pow(BigInt(epsilon.denominator()), e);
  const BigInt rhs = boost::multiprecision::pow(BigInt(epsilon.numerator()), e) * N;
  return lhs >= rhs;
}

BohrStructure bohr_set(std::span<const std::uint64_t> R, Rational epsilon, std::uint64_t N,
                       std::optional<double> eta) {
  if (!(epsilon > 0 && epsilon < Rational(1, 2)))
    throw Error(ErrorKind::domain, "Bohr radius must lie in (0, 1/2)");
  if (N < 1) throw Error(ErrorKind::domain, "Bohr set needs N >= 1");
  BohrStructure out;
  out.eta = eta;
  out.frequencies.assign(R.begin(), R.end());
  out.epsilon = epsilon;
  out.N = N;
  for (std::uint64_t x = 0; x < N; ++x)
    if (in_bohr_set(x, R, epsilon, N)) out.members.push_back(x);
  if (!bohr_bound_holds(out.members.size(), R.size(), epsilon, N))
    throw Error(ErrorKind::internal, "Bohr set of size " + std::to_string(out.members.size()) +
                                         " breaks the pigeonhole bound");
  return out;
}

DensityFunction BohrStructure::normalized_indicator() const {
  std::vector<Complex> v(N);
  const double w = 1.0 / static_cast<double>(members.size());
  for (auto x : members) v[x] = w;
  return DensityFunction(std::move(v));
}

DensityFunction smooth(const DensityFunction& f, const BohrStructure& bohr) {
  if (f.modulus() != bohr.N) throw Error(ErrorKind::modulus_mismatch, "Bohr set and function moduli differ");
  const auto b = bohr.normalized_indicator();
  const auto& fs = f.spectrum();
  const auto& bs = b.spectrum();
  std::vector<Complex> prod(fs.size());
  for (std::size_t r = 0; r < fs.size(); ++r) prod[r] = fs[r] * bs[r] * bs[r];
  return DensityFunction::from_spectrum(std::move(prod));
}

double restriction_norm(const DensityFunction& f, double rho) {
  if (!(rho > 0)) throw Error(ErrorKind::domain, "restriction exponent must be positive");
  long double acc = 0;
  for (const auto& v : f.spectrum()) acc += std::pow(static_cast<long double>(std::abs(v)), rho);
  return static_cast<double>(acc);
}

std::pair<double, std::uint64_t> max_nontrivial_coefficient(const DensityFunction& f) {
  const auto& s = f.spectrum();
  double best = 0;
  std::uint64_t arg = 0;
  for (std::uint64_t r = 1; r < s.size(); ++r)
    if (std::abs(s[r]) > best) {
      best = std::abs(s[r]);
      arg = r;
    }
  return {best, arg};
}

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(std::stoll(text), 1);
    const std::int64_t p = std::stoll(text.substr(0, slash));
    const std::int64_t q = std::stoll(text.substr(slash + 1));
    if (q == 0) throw Error(ErrorKind::parse, "zero denominator in '" + text + "'");
    return Rational(p, q);
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::parse, "not a rational p/q: '" + text + "'");
  }
}

}  // namespace primepoly::spectral
