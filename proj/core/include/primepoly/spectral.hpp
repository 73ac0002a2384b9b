#pragma once

// Functions on Z_N, their spectra, the weighted prime-polynomial measure,
// large spectra, Bohr sets and Bohr smoothing.

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include <boost/rational.hpp>

#include "primepoly/dft.hpp"
#include "primepoly/wtrick.hpp"

namespace primepoly::spectral {

using Rational = boost::rational<std::int64_t>;

/// Complex-valued function on Z_N; value at x is stored at index x mod N.
/// The spectrum is computed on first request and shared between copies.
class DensityFunction {
 public:
  DensityFunction() = default;
  explicit DensityFunction(std::vector<Complex> values);

  static DensityFunction zeros(std::uint64_t N);
  static DensityFunction delta(std::uint64_t N, std::uint64_t at);
  static DensityFunction constant(std::uint64_t N, Complex value);
  static DensityFunction indicator(std::uint64_t N, std::span<const std::uint64_t> set);
  /// Inverse transform of a given spectrum; the spectrum is kept as the cache.
  static DensityFunction from_spectrum(std::vector<Complex> spectrum);

  std::uint64_t modulus() const noexcept { return values_.size(); }
  const std::vector<Complex>& values() const noexcept { return values_; }
  Complex operator[](std::uint64_t x) const { return values_[x % values_.size()]; }

  const std::vector<Complex>& spectrum() const;
  /// sum_x f(x); equals spectrum()[0].
  Complex mass() const;

 private:
  struct Cache {
    std::once_flag once;
    std::vector<Complex> spectrum;
  };
  std::vector<Complex> values_;
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

/// (f*g)(x) = sum_y f(y) g(x-y). Direct below the DFT cutoff, spectral above.
DensityFunction convolve(const DensityFunction& f, const DensityFunction& g);

struct MeasurePoint {
  std::uint64_t z = 0;  ///< argument in [1, M]
  std::uint64_t x = 0;  ///< psi_{b,W}(z) mod N
  double weight = 0;    ///< value of the measure at x
};

/// The normalized measure carried by psi_{b,W}(z), z prime-progression,
/// weighted by psi^Delta_{b,W}(z-1) lambda(z) / psi_{b,W}(M).
struct PolyPrimeMeasure {
  DensityFunction density;
  std::vector<MeasurePoint> support;  ///< only z with W W0 z + W0 b + b0 prime
  BigInt normalization;               ///< psi_{b,W}(M)
  std::uint64_t checked_arguments = 0;  ///< every z in [1, M] checked for collisions
};

/// Builds the measure and checks that z -> psi_{b,W}(z) mod N is injective on
/// [1, M]; a collision raises ErrorKind::well_definedness.
PolyPrimeMeasure build_poly_prime_measure(const wtrick::WTrickContext& ctx);

/// a(x) = 1_A(x) lambda_{psi(b)/2, KW}(x) / N.
DensityFunction build_prime_coloring_measure(std::span<const std::uint64_t> A,
                                             const wtrick::WTrickContext& ctx);

/// {r : |f^(r)| >= eta}, ascending.
std::vector<std::uint64_t> large_spectrum(const DensityFunction& f, double eta);

struct BohrStructure {
  std::optional<double> eta;
  std::vector<std::uint64_t> frequencies;
  Rational epsilon;
  std::uint64_t N = 0;
  std::vector<std::uint64_t> members;  ///< ascending; always contains 0

  std::size_t size() const noexcept { return members.size(); }
  /// 1_B / |B|
  DensityFunction normalized_indicator() const;
};

/// ||x r / N|| <= epsilon for all r in R, decided in exact integers.
bool in_bohr_set(std::uint64_t x, std::span<const std::uint64_t> R, Rational epsilon, std::uint64_t N);

/// |B| >= epsilon^{|R|} N, compared exactly.
bool bohr_bound_holds(std::size_t size, std::size_t num_frequencies, Rational epsilon, std::uint64_t N);

/// Exact membership scan. Requires 0 < epsilon < 1/2. A breach of the
/// pigeonhole bound is ErrorKind::internal.
BohrStructure bohr_set(std::span<const std::uint64_t> R, Rational epsilon, std::uint64_t N,
                       std::optional<double> eta = std::nullopt);

/// f * b * b with b the normalized Bohr indicator, via f^ . b^^2.
DensityFunction smooth(const DensityFunction& f, const BohrStructure& bohr);

/// sum_r |f^(r)|^rho
double restriction_norm(const DensityFunction& f, double rho);

/// max_{r != 0} |f^(r)| and the frequency attaining it (0 if N == 1).
std::pair<double, std::uint64_t> max_nontrivial_coefficient(const DensityFunction& f);

Rational parse_rational(const std::string& text);

}  // namespace primepoly::spectral
