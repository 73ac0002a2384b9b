#pragma once

// Additive triple counts, the popularity function nu_{A,A,-U}, monochromatic
// solutions of x + y = psi(z), lifting from Z_N back to Z, and the end-to-end
// transference report.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "primepoly/coloring.hpp"
#include "primepoly/spectral.hpp"

namespace primepoly::counting {

using spectral::Complex;
using spectral::DensityFunction;

/// sum_{x,y in Z_N} f(x) g(y) h(x+y). Quadratic; ErrorKind::size for N > 2048.
Complex triple_count_bruteforce(const DensityFunction& f, const DensityFunction& g, const DensityFunction& h);

/// The same count as N^{-1} sum_r f^(-r) g^(-r) h^(r).
Complex triple_count_fourier(const DensityFunction& f, const DensityFunction& g, const DensityFunction& h);

/// N^{-1} sum_r f^(r) g^(-r) h^(r), the pairing with f^(r) in place of
/// f^(-r). It counts x + z = y rather than x + y = z and is kept only to
/// document that mismatch.
Complex triple_count_fourier_swapped(const DensityFunction& f, const DensityFunction& g, const DensityFunction& h);

/// Brute force when N <= 2048, spectral otherwise.
Complex triple_count(const DensityFunction& f, const DensityFunction& g, const DensityFunction& h);

struct PopularityProfile {
  std::uint64_t N = 0;
  std::size_t size_A = 0;
  std::size_t size_U = 0;
  std::vector<std::uint64_t> nu;  ///< nu(x) for x in Z_N
  /// 4 * min{|A|, |U|, (2|A|+|U|-N)/4}; the bound is (m4/4)^3 / N.
  std::int64_t m4 = 0;

  bool bound_applies() const { return m4 > 0; }
  double bound() const;
  /// 64 N nu(x) >= m4^3, exact; true when the bound is vacuous.
  bool bound_holds_at(std::uint64_t x) const;
  bool bound_holds_everywhere() const;
};

/// nu(x) = #{(x1,x2,x3) : x1,x2 in A, x3 in U, x1 + x2 - x3 = x} on Z_N.
PopularityProfile popularity(const std::vector<std::uint64_t>& A, const std::vector<std::uint64_t>& U,
                             std::uint64_t N);

/// nu(x) at one point in O(N + |A| |U|)-ish time, for large N.
std::uint64_t popularity_at(const std::vector<std::uint64_t>& A, const std::vector<std::uint64_t>& U,
                            std::uint64_t N, std::uint64_t x);

struct SolutionTriple {
  std::uint64_t x = 0;
  std::uint64_t y = 0;
  std::uint64_t z = 0;
  std::uint32_t color = 0;
  bool operator==(const SolutionTriple&) const = default;
};

enum class SearchMode { all, first };

/// Triples x < y of one color with x + y = psi(z), z >= 1, W0 z + b0 prime,
/// x, y <= n. z runs in the outer loop until psi is increasing and exceeds
/// 2n. Results are ordered by z, then x.
std::vector<SolutionTriple> find_monochromatic(const coloring::ColoringInstance& coloring,
                                               const poly::IntPolynomial& psi, std::uint64_t b0,
                                               std::uint64_t W0, SearchMode mode = SearchMode::all);

/// Exact re-check of a triple against its defining conditions.
bool verify_solution(const SolutionTriple& s, const coloring::ColoringInstance& coloring,
                     const poly::IntPolynomial& psi, std::uint64_t b0, std::uint64_t W0);

/// "color,x,y,z" lines under a header.
std::string solutions_csv(const std::vector<SolutionTriple>& solutions);

/// Maps a Z_N solution x' + y' = psi_{b,W}(z') back to x = W x' + psi(b)/2,
/// y = W y' + psi(b)/2, z = W z' + b and re-verifies everything in Z.
/// ErrorKind::lifting if psi_{b,W}(z') - x' - y' is a nonzero multiple of N,
/// or if any lifted condition fails; ErrorKind::domain if the input is not a
/// solution modulo N. With a coloring, x and y must share a color.
SolutionTriple lift_solution(std::uint64_t xp, std::uint64_t yp, std::uint64_t zp, const wtrick::WTrickContext& ctx,
                             const coloring::ColoringInstance* coloring = nullptr);

struct TransferenceOptions {
  double eta = 0.2;
  spectral::Rational epsilon{1, 8};
  std::size_t max_listed_solutions = 20;
};

struct TransferenceReport {
  poly::Variant variant = poly::Variant::integer_coloring;
  std::uint64_t N = 0;
  std::uint64_t K = 1;
  std::uint64_t W = 1;
  double kappa = 0;
  std::size_t size_A = 0;
  std::uint32_t color = 0;

  double measure_mass = 0;       ///< sum of the measure
  std::size_t measure_support = 0;

  // weighted counts (x, y in A for the integer variant)
  double raw_count = 0;          ///< sum_{x,y} f(x) f(y) measure(x+y)
  double diagonal_exact = 0;     ///< x = y part
  double distinct_count = 0;     ///< raw - diagonal_exact
  double diagonal_corrected = 0;  ///< raw - sum_z measure(z)
  double smoothed_count = 0;
  double count_difference = 0;   ///< raw - smoothed

  // spectra and smoothing
  double eta = 0;
  std::string epsilon;
  std::size_t large_spectrum_size = 0;
  std::size_t bohr_size = 0;
  bool bohr_bound = false;
  double max_nontrivial = 0;        ///< max_{r != 0} |measure^(r)|
  double max_smoothed = 0;          ///< max_x measure'(x)
  double smoothed_cap = 0;          ///< (1 + 2 kappa) / N
  bool smoothed_within_cap = false;
  std::size_t size_U = 0;           ///< #{x : measure'(x) >= kappa/N}
  double U_floor = 0;               ///< (1 - 3 kappa) N
  bool U_meets_floor = false;
  std::uint64_t nu0 = 0;
  double nu_bound = 0;
  bool nu_bound_holds = false;
  double lower_bound_target = 0;    ///< kappa^4 N / 3, or kappa^6 / (3N)
  double lower_bound_value = 0;     ///< the quantity compared with it
  bool lower_bound_met = false;
  double empirical_C = 0;           ///< |difference| / (K (eps^2 eta^-rho + eta^{1/(rho+1)}) N^{+-1})

  // prime variant
  double a_mass = 0;
  double a_mass_floor = 0;          ///< 1/(3mK)
  std::size_t a_large_spectrum_size = 0;
  std::size_t a_bohr_size = 0;
  double max_a_smoothed = 0;
  double a_smoothed_cap = 0;        ///< 2/N
  bool a_smoothed_within_cap = false;
  std::size_t size_A_prime = 0;
  double A_prime_floor = 0;         ///< 2 kappa N
  bool A_prime_meets_floor = false;

  // lifting
  std::uint64_t zn_solutions = 0;
  std::uint64_t lifting_failures = 0;
  /// K | W, the hypothesis under which every Z_N solution lifts; without it
  /// psi_{b,W}(z') - x' - y' may be a nonzero multiple of N.
  bool lifting_hypothesis = true;
  std::vector<SolutionTriple> lifted;  ///< first few, in search order

  std::string to_json() const;
};

/// Runs dense measure, spectrum, Bohr set, smoothing, counts, popularity and
/// lifting for one context and transferred set. Asymptotic bounds are
/// recorded, never enforced.
TransferenceReport transference_report(const wtrick::WTrickContext& ctx, const coloring::TransferredSet& t,
                                       const coloring::ColoringInstance& coloring,
                                       const TransferenceOptions& options = {});

}  // namespace primepoly::counting
