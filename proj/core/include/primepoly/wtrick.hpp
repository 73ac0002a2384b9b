#pragma once

// Parameter construction for the W-trick: non-root search, the residues
// b_p and c_p, the multiplier K, the smooth modulus W with its CRT residue
// b, the prime modulus N and the cutoff M.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "primepoly/polynomial.hpp"

namespace primepoly::wtrick {

using poly::IntPolynomial;
using poly::RescaledPolynomial;
using poly::Variant;

/// Which branch of the parity hypothesis on psi is satisfied.
enum class ParityBranch {
  w0_even_psi_one_even,   ///< 2 | W0 and psi(1) even
  w0_even_psi_zero_even,  ///< 2 | W0 and psi(0) even (psi(1) odd)
  w0_odd_psi_b0_minus_one_even,
};

struct ParityCertificate {
  ParityBranch branch;
};

std::optional<ParityCertificate> parity_certificate(const IntPolynomial& psi, std::uint64_t b0,
                                                    std::uint64_t W0);

/// How the prime modulus N was located.
struct NSearch {
  unsigned widenings = 0;     ///< 0 when N lies in (2n/W, (2+kappa)n/W]
  std::uint64_t lower = 0;    ///< floor(2n/W); N > lower
  std::uint64_t upper = 0;    ///< upper end of the interval that contained N
  bool operator==(const NSearch&) const = default;
};

struct WTrickContext {
  Variant variant = Variant::integer_coloring;
  IntPolynomial psi;
  std::uint64_t b0 = 1;
  std::uint64_t W0 = 1;
  std::uint64_t m = 1;
  std::uint64_t Psi = 0;
  std::map<std::uint64_t, std::uint64_t> bp;
  std::map<std::uint64_t, std::uint64_t> cp;
  std::uint64_t K = 1;
  std::map<std::uint64_t, unsigned> w_config;  ///< prime -> exponent; W = prod p^e
  std::uint64_t W = 1;
  std::uint64_t b = 0;
  std::uint64_t n = 0;
  std::uint64_t N = 0;
  NSearch n_search;
  RescaledPolynomial psi_bW;
  std::uint64_t M = 0;

  /// kappa = 1 / (10^4 K m), kept exact through its denominator.
  std::uint64_t kappa_denominator() const { return 10'000 * K * m; }
  double kappa() const { return 1.0 / static_cast<double>(kappa_denominator()); }

  /// W0 b + b0, the residue of the progression carrying z.
  std::uint64_t progression_residue() const { return W0 * b + b0; }
  /// W W0, its modulus.
  std::uint64_t progression_modulus() const { return W * W0; }

  BigInt psi_at_b() const { return psi(BigInt(b)); }
  /// psi(b)/2; psi(b) is even for every valid context.
  std::uint64_t half_psi_b() const;

  bool k_divides_w() const { return W % K == 0; }

  bool operator==(const WTrickContext&) const = default;
};

/// Smallest s in S with h(s) != 0 mod p. S must hold distinct residues mod p
/// and have at least deg(h)+1 elements; h must be nonzero mod p.
std::uint64_t find_nonroot(const IntPolynomial& h, std::uint64_t p, std::span<const std::uint64_t> S);

/// Smallest 1 <= c <= p with p !| W0 c + b0 and p !| psi(c)/2, if any.
/// ErrorKind::parity if psi(c) is odd for a candidate that has to be tested.
std::optional<std::uint64_t> check_cp(const IntPolynomial& psi, std::uint64_t b0, std::uint64_t W0,
                                      std::uint64_t p);

/// The residue b_p, chosen as the smallest value meeting every constraint for
/// its regime (p > Psi via the non-root lemma, p <= Psi by upward scan).
/// cp is consulted only for prime colorings with p <= Psi.
std::uint64_t select_bp(const IntPolynomial& psi, std::uint64_t b0, std::uint64_t W0, std::uint64_t Psi,
                        std::uint64_t p, Variant variant, std::optional<std::uint64_t> cp = std::nullopt);

/// K = prod_{p <= Psi} p^{nu_p(psi'((b_p - b0)/W0))}.
std::uint64_t compute_K(const std::map<std::uint64_t, std::uint64_t>& bp, const IntPolynomial& psi,
                        std::uint64_t b0, std::uint64_t W0, std::uint64_t Psi);

/// w_config with exponent 1 for every prime <= w.
std::map<std::uint64_t, unsigned> uniform_w_config(std::uint64_t w, unsigned exponent = 1);

WTrickContext build_context(const IntPolynomial& psi, std::uint64_t b0, std::uint64_t W0, std::uint64_t m,
                            Variant variant, const std::map<std::uint64_t, unsigned>& w_config,
                            std::uint64_t n);

struct InvariantCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Every structural invariant of a context, each evaluated in exact
/// integer arithmetic.
std::vector<InvariantCheck> context_invariants(const WTrickContext& ctx);

enum class GcdIdentity { holds, fails, inconclusive };
std::string_view to_string(GcdIdentity g);

/// gcd(psi'(b), W) == K and gcd(psi'(b), a_1 W^{k-1}) == gcd(psi'(b), W).
/// Inconclusive unless every p <= Psi with nu_p > 0 has exponent above nu_p
/// in W and every p <= Psi dividing a_1 or psi'(b_p ...) lies in W.
GcdIdentity verify_gcd_identity(const WTrickContext& ctx);
bool gcd_identity_precondition(const WTrickContext& ctx);

/// JSON document with every integer written as a decimal string.
std::string to_json(const WTrickContext& ctx);
WTrickContext context_from_json(const std::string& text);

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

}  // namespace primepoly::wtrick
