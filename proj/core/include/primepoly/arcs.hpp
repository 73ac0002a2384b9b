#pragma once

// Major/minor arc classification, complete Gauss sums and the weighted
// exponential sums over prime values of psi_{b,W}.

#include <cstdint>
#include <optional>

#include "primepoly/dft.hpp"
#include "primepoly/wtrick.hpp"

namespace primepoly::spectral {

/// Major arcs M_{a,q} = {alpha : q ||alpha - a/q|| <= (log M)^B / psi_{b,W}(M)}
/// for 1 <= a <= q <= (log M)^B, gcd(a, q) = 1, with the right-hand side
/// additionally held strictly below 1/(2q^2).
struct ArcDecomposition {
  std::uint64_t M = 0;
  double B = 2;
  long double psi_M = 0;   ///< psi_{b,W}(M)
  std::uint64_t Q = 0;     ///< floor((log M)^B), saturated at 2^62
  long double delta = 0;   ///< (log M)^B / psi_{b,W}(M)

  /// True iff q ||alpha - a/q|| satisfies both the delta threshold and the cap.
  bool within(long double scaled_distance, std::uint64_t q) const;
};

ArcDecomposition make_arcs(const wtrick::WTrickContext& ctx, double B);
ArcDecomposition make_arcs(std::uint64_t M, long double psi_M, double B);

struct ArcClass {
  bool major = false;
  std::uint64_t a = 0;
  std::uint64_t q = 0;
};

/// Smallest q (then smallest a) whose arc contains alpha; the candidates are
/// the continued-fraction convergents of alpha, which is enough because the
/// threshold is nonincreasing in q.
ArcClass classify_arc(long double alpha, const ArcDecomposition& arcs);

/// Reference classifier scanning every (a, q) with q <= q_limit; for tests.
ArcClass classify_arc_exhaustive(long double alpha, const ArcDecomposition& arcs, std::uint64_t q_limit);

bool in_major_arc(long double alpha, std::uint64_t a, std::uint64_t q, const ArcDecomposition& arcs);

/// sum_{1<=s<=q, gcd(W W0 s + W0 b + b0, q) = 1} e(psi_{b,W}(s) a / q)
Complex complete_gauss_sum(const wtrick::WTrickContext& ctx, std::uint64_t a, std::uint64_t q);

/// sum_{x=1}^{M} psi^Delta_{b,W}(x-1) lambda_{W0 b + b0, W W0}(x) e(alpha psi_{b,W}(x))
Complex weighted_poly_sum(const wtrick::WTrickContext& ctx, long double alpha);
/// Same sum at alpha = num/den, with phases reduced in exact integers.
Complex weighted_poly_sum_at(const wtrick::WTrickContext& ctx, std::int64_t num, std::uint64_t den);

/// sum_{x=1}^{N} lambda_{b,W}(x) e(alpha psi(x))
Complex weighted_prime_sum(const poly::IntPolynomial& psi, std::uint64_t b, std::uint64_t W, std::uint64_t N,
                           long double alpha);

enum class ExpSumForm {
  prime_weights,       ///< sum over x <= N of lambda_{b,W}(x) e(alpha psi(x))
  polynomial_weights,  ///< the psi^Delta-weighted sum over x <= M
};

/// Context-driven dispatcher. The prime-weight form uses the progression
/// W0 b + b0 modulo W W0, the original psi and length N.
Complex weighted_exp_sum(const wtrick::WTrickContext& ctx, long double alpha, ExpSumForm form);

enum class InnerSum {
  linear,     ///< sum_{x=1}^{psi(M)} e((alpha - a/q) x)
  displayed,  ///< sum_{x=1}^{psi(M)} e((alpha - a/q) psi_{b,W}(x))
};

/// phi(W W0)/phi(W W0 q) * (Gauss-type sum) * inner sum. alpha must lie in
/// M_{a,q}; otherwise ErrorKind::domain.
Complex major_arc_main_term(const wtrick::WTrickContext& ctx, const ArcDecomposition& arcs, std::uint64_t a,
                            std::uint64_t q, long double alpha, InnerSum inner = InnerSum::linear);

/// ||t||, distance to the nearest integer.
long double torus_norm(long double t);

}  // namespace primepoly::spectral
