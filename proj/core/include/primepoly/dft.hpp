#pragma once

// Discrete Fourier transform over Z_N with the convention
//   f^(r) = sum_x f(x) e(-x r / N),   e(t) = exp(2 pi i t).

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace primepoly::spectral {

using Complex = std::complex<double>;

/// e(num/den) with the argument reduced modulo 1 in exact integers first.
Complex unit_phase(std::uint64_t num, std::uint64_t den);
/// e(t) for real t, reduced modulo 1 before the trig call.
Complex unit_phase(long double t);

/// Lengths up to this use the quadratic transform in dft().
inline constexpr std::size_t kDirectDftLimit = 2048;

std::vector<Complex> dft_direct(std::span<const Complex> f);

/// Chirp (Bluestein) transform: x r = (x^2 + r^2 - (r-x)^2)/2 turns the
/// length-N transform into a power-of-two cyclic convolution.
std::vector<Complex> dft_chirp(std::span<const Complex> f);

std::vector<Complex> dft(std::span<const Complex> f);

/// f(x) = N^{-1} sum_r f^(r) e(x r / N).
std::vector<Complex> inverse_dft(std::span<const Complex> spectrum);

/// In-place radix-2 FFT; size must be a power of two. sign = -1 is the
/// forward direction.
void fft_pow2(std::vector<Complex>& a, int sign);

/// max_r |a(r) - b(r)| / max(1, max_r |b(r)|)
double relative_max_error(std::span<const Complex> a, std::span<const Complex> b);

}  // namespace primepoly::spectral
