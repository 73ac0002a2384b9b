#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "primepoly/bigint.hpp"

namespace primepoly::poly {

/// Polynomial with arbitrary-precision integer coefficients.
///
/// Stored lowest degree first. The zero polynomial has degree -1; any other
/// polynomial keeps its highest stored coefficient nonzero.
class IntPolynomial {
 public:
  IntPolynomial() = default;

  /// From coefficients ordered highest degree first, e.g. {1, 1, 0} is x^2+x.
  static IntPolynomial from_highest_first(std::vector<BigInt> coefficients);
  static IntPolynomial from_lowest_first(std::vector<BigInt> coefficients);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }

  /// Coefficient of x^i (zero past the degree).
  BigInt coefficient(int i) const;
  const BigInt& leading() const;
  const std::vector<BigInt>& lowest_first() const noexcept { return coeffs_; }
  std::vector<BigInt> highest_first() const;

  BigInt operator()(const BigInt& x) const;
  BigInt operator()(std::int64_t x) const { return (*this)(BigInt(x)); }

  /// Value modulo m in [0, m).
  std::uint64_t eval_mod(const BigInt& x, std::uint64_t m) const;

  /// Coefficients reduced into [0, p); the result is normalized so its
  /// degree is the degree over Z_p.
  IntPolynomial reduce_mod(std::uint64_t p) const;

  IntPolynomial derivative() const;

  bool operator==(const IntPolynomial&) const = default;

  /// e.g. "x^2 + x", "6x^2", "2x - 3"
  std::string to_string() const;
  /// e.g. "[1,1,0]"
  std::string to_literal() const;

 private:
  explicit IntPolynomial(std::vector<BigInt> lowest_first);
  void normalize();
  std::vector<BigInt> coeffs_;
};

/// Parses the config literal "[a_k, ..., a_1, a_0]" (highest degree first).
IntPolynomial parse_polynomial(std::string_view literal);

BigInt eval(const IntPolynomial& p, const BigInt& x);
IntPolynomial derivative(const IntPolynomial& p);

/// poly(x+1) - poly(x).
BigInt forward_difference(const IntPolynomial& p, const BigInt& x);

/// psi_{b,W}(x) = (psi(Wx+b) - psi(b)) / W together with its provenance.
struct RescaledPolynomial {
  IntPolynomial base;
  BigInt W;
  BigInt b;
  IntPolynomial poly;

  BigInt operator()(const BigInt& x) const { return poly(x); }
  BigInt operator()(std::int64_t x) const { return poly(x); }

  bool operator==(const RescaledPolynomial&) const = default;
};

/// Exact rescaling. Verifies W * psi_{b,W}(x) == psi(Wx+b) - psi(b)
/// coefficientwise, zero constant term, linear coefficient psi'(b), and
/// W | coefficient of x^i for i >= 2; any mismatch is ErrorKind::construction.
RescaledPolynomial rescale(const IntPolynomial& psi, const BigInt& W, const BigInt& b);

enum class Variant { integer_coloring, prime_coloring };

std::string_view to_string(Variant v);
Variant parse_variant(std::string_view text);

/// Psi = max{(k+1)W0, |a_1|, ..., |a_k|} for integer colorings and
/// max{(2k+1)W0, ...} for prime colorings. The constant term is excluded.
std::uint64_t psi_bound(const IntPolynomial& psi, std::uint64_t W0, Variant variant);

/// M = max{x >= 1 : psi_{b,W}(x) < K N}, by doubling then bisection.
/// ErrorKind::empty_range when psi_{b,W}(1) >= K N.
std::uint64_t compute_M(const RescaledPolynomial& rescaled, const BigInt& K, const BigInt& N);
std::uint64_t compute_M(const IntPolynomial& increasing, const BigInt& K, const BigInt& N);

}  // namespace primepoly::poly
