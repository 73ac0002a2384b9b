#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace primepoly {

enum class ErrorKind {
  domain,
  empty_table,
  conflict,
  non_coprime,
  empty_range,
  construction,
  degenerate_polynomial,
  insufficient_set,
  non_distinct,
  necessity_violation,
  hypothesis,
  precondition,
  scale,
  parity,
  well_definedness,
  size,
  modulus_mismatch,
  lifting,
  inapplicable,
  parse,
  usage,
  internal,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library. The kind is the stable,
/// machine-checkable part; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what,
        std::optional<std::uint64_t> prime = std::nullopt)
      : std::runtime_error(what), kind_(kind), prime_(prime) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// Offending prime for necessity violations (and a few other
  /// per-prime failures), when there is one.
  std::optional<std::uint64_t> prime() const noexcept { return prime_; }

 private:
  ErrorKind kind_;
  std::optional<std::uint64_t> prime_;
};

}  // namespace primepoly
