#include "primepoly/dft.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "primepoly/errors.hpp"

namespace primepoly::spectral {

namespace {

constexpr long double kTwoPi = 2.0L * std::numbers::pi_v<long double>;

}  // namespace

Complex unit_phase(std::uint64_t num, std::uint64_t den) {
  const std::uint64_t r = num % den;
  const long double angle = kTwoPi * static_cast<long double>(r) / static_cast<long double>(den);
  return {static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle))};
}

Complex unit_phase(long double t) {
  long double frac = t - std::floor(t);
  const long double angle = kTwoPi * frac;
  return {static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle))};
}

std::vector<Complex> dft_direct(std::span<const Complex> f) {
  const std::size_t N = f.size();
  std::vector<Complex> table(N);
  for (std::size_t j = 0; j < N; ++j) table[j] = std::conj(unit_phase(j, N));
  std::vector<Complex> out(N);
  for (std::size_t r = 0; r < N; ++r) {
    Complex acc = 0;
    std::size_t idx = 0;
    for (std::size_t x = 0; x < N; ++x) {
      acc += f[x] * table[idx];
      idx += r;
      if (idx >= N) idx -= N;
    }
    out[r] = acc;
  }
  return out;
}

void fft_pow2(std::vector<Complex>& a, int sign) {
  const std::size_t L = a.size();
  if (L == 0 || (L & (L - 1)) != 0) throw Error(ErrorKind::internal, "fft_pow2 length must be a power of two");
  for (std::size_t i = 1, j = 0; i < L; ++i) {
    std::size_t bit = L >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  std::vector<Complex> roots(L / 2);
  for (std::size_t k = 0; k < L / 2; ++k) {
    Complex w = unit_phase(k, L);
    roots[k] = sign < 0 ? std::conj(w) : w;
  }
  for (std::size_t len = 2; len <= L; len <<= 1) {
    const std::size_t step = L / len;
    for (std::size_t i = 0; i < L; i += len)
      for (std::size_t k = 0; k < len / 2; ++k) {
        const Complex u = a[i + k];
        const Complex v = a[i + k + len / 2] * roots[k * step];
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
      }
  }
}

std::vector<Complex> dft_chirp(std::span<const Complex> f) {
  const std::uint64_t N = f.size();
  if (N == 0) return {};
  std::size_t L = 1;
  while (L < 2 * N - 1) L <<= 1;

  // w(j) = e(-j^2 / 2N), with j^2 reduced mod 2N exactly
  const std::uint64_t twoN = 2 * N;
  std::vector<Complex> w(N);
  for (std::uint64_t j = 0; j < N; ++j) {
    const auto sq = static_cast<std::uint64_t>(static_cast<unsigned __int128>(j) * j % twoN);
    w[j] = std::conj(unit_phase(sq, twoN));
  }

  std::vector<Complex> a(L, 0.0), c(L, 0.0);
  for (std::uint64_t x = 0; x < N; ++x) a[x] = f[x] * w[x];
  c[0] = std::conj(w[0]);
  for (std::uint64_t j = 1; j < N; ++j) {
    c[j] = std::conj(w[j]);
    c[L - j] = std::conj(w[j]);
  }
  fft_pow2(a, -1);
  fft_pow2(c, -1);
  for (std::size_t i = 0; i < L; ++i) a[i] *= c[i];
  fft_pow2(a, +1);
  const double scale = 1.0 / static_cast<double>(L);
  std::vector<Complex> out(N);
  for (std::uint64_t r = 0; r < N; ++r) out[r] = w[r] * a[r] * scale;
  return out;
}

std::vector<Complex> dft(std::span<const Complex> f) {
  return f.size() <= kDirectDftLimit ? dft_direct(f) : dft_chirp(f);
}

std::vector<Complex> inverse_dft(std::span<const Complex> spectrum) {
  std::vector<Complex> conj_in(spectrum.begin(), spectrum.end());
  for (auto& v : conj_in) v = std::conj(v);
  auto out = dft(conj_in);
  const double scale = 1.0 / static_cast<double>(spectrum.size());
  for (auto& v : out) v = std::conj(v) * scale;
  return out;
}

double relative_max_error(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw Error(ErrorKind::modulus_mismatch, "length mismatch");
  double diff = 0.0, ref = 1.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff = std::max(diff, std::abs(a[i] - b[i]));
    ref = std::max(ref, std::abs(b[i]));
  }
  return diff / ref;
}

}  // namespace primepoly::spectral
