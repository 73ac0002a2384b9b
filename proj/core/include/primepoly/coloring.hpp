#pragma once

// Colorings of [1, n] or of the primes up to n, the 3p blocking partition,
// and the pigeonhole selection of a dense class with its transferred set.

#include <cstdint>
#include <string>
#include <vector>

#include "primepoly/wtrick.hpp"

namespace primepoly::coloring {

enum class Domain { integers, primes };

std::string_view to_string(Domain d);
Domain parse_domain(std::string_view text);

/// An m-coloring. colors[x] is the color of x in [1, m], or 0 when x is not
/// in the domain (x = 0, composites in the prime domain).
struct ColoringInstance {
  Domain domain = Domain::integers;
  std::uint64_t n = 0;
  std::uint32_t m = 1;
  std::vector<std::uint32_t> colors;  ///< size n + 1
  std::string provenance;

  std::uint32_t color(std::uint64_t x) const { return x <= n ? colors[x] : 0; }
  bool in_domain(std::uint64_t x) const { return color(x) != 0; }
  std::vector<std::uint64_t> members(std::uint32_t c) const;
  std::uint64_t domain_size() const;

  bool operator==(const ColoringInstance&) const = default;
};

struct ColoringRule {
  enum class Kind { random, residue, interval };
  Kind kind = Kind::random;
  std::uint64_t seed = 0;              ///< random
  std::uint64_t modulus = 1;           ///< residue
  std::vector<std::uint64_t> cuts;     ///< interval: ascending, at most m - 1

  static ColoringRule random(std::uint64_t seed);
  static ColoringRule residue(std::uint64_t modulus);
  static ColoringRule interval(std::vector<std::uint64_t> cuts);

  /// e.g. "random(42)", "residue(2)", "interval(5,9)"
  std::string describe() const;
};

ColoringRule parse_rule(std::string_view text);

/// random: independent uniform colors from mt19937_64(seed), drawn in
///         increasing order of the domain elements;
/// residue(q): ((x - 1) mod q) mod m + 1;
/// interval(c_1 < ... < c_r): 1 + #{i : c_i < x}.
ColoringInstance make_coloring(Domain domain, std::uint64_t n, std::uint32_t m, const ColoringRule& rule);

/// T = psi(floor((p - b0) / W0)) and whether W0 divides p - b0.
struct BlockingThreshold {
  BigInt T;
  bool exact_division = true;
};
BlockingThreshold blocking_threshold(const poly::IntPolynomial& psi, std::uint64_t b0, std::uint64_t W0,
                                     std::uint64_t p);

/// The 3p-coloring of the primes up to n with j = x mod p (0 read as p):
///   X_j       for 2x <= T,
///   X_{p+j}   for x > T,
///   X_{2p+j}  for T/2 < x <= T.
/// ErrorKind::inapplicable when c_p exists.
ColoringInstance blocking_partition(const poly::IntPolynomial& psi, std::uint64_t b0, std::uint64_t W0,
                                    std::uint64_t p, std::uint64_t n);

/// A = {(x - psi(b)/2)/W : x in X_i, psi(W) <= x <= n, x = psi(b)/2 mod KW}.
struct TransferredSet {
  std::uint32_t color = 0;
  std::vector<std::uint64_t> sources;  ///< the x, ascending
  std::vector<std::uint64_t> A;        ///< parallel to sources
  std::vector<std::uint64_t> class_counts;  ///< per color 1..m (index 0 unused)
  std::uint64_t total = 0;                  ///< sum of class_counts
  // prime variant only
  std::vector<double> class_log_sums;  ///< per color, sum of log x
  double threshold = 0;                ///< (1 - kappa) n / (m phi(KW))
  bool threshold_met = true;
};

/// Smallest color attaining the largest count. ErrorKind::scale unless
/// 4 m K |A| >= N, or when n/(mKW) <= psi(W).
TransferredSet dense_class(const ColoringInstance& coloring, const wtrick::WTrickContext& ctx);

/// Class with the largest sum of log x over the same residue window. The
/// threshold is enforced (ErrorKind::scale) only for n >= 10^6.
TransferredSet dense_prime_class(const ColoringInstance& coloring, const wtrick::WTrickContext& ctx);

/// Element-wise membership check of a transferred set against its definition.
bool verify_transferred_set(const TransferredSet& t, const ColoringInstance& coloring,
                            const wtrick::WTrickContext& ctx);

/// Header "domain n m rule", then one "element color" line per element.
std::string write_coloring(const ColoringInstance& c);
/// ErrorKind::parse with the 1-based line number on malformed input.
ColoringInstance read_coloring(const std::string& text);

}  // namespace primepoly::coloring
