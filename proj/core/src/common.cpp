#include <limits>

#include "primepoly/bigint.hpp"
#include "primepoly/errors.hpp"

namespace primepoly {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::empty_table: return "empty_table";
    case ErrorKind::conflict: return "conflict";
    case ErrorKind::non_coprime: return "non_coprime";
    case ErrorKind::empty_range: return "empty_range";
    case ErrorKind::construction: return "construction";
    case ErrorKind::degenerate_polynomial: return "degenerate_polynomial";
    case ErrorKind::insufficient_set: return "insufficient_set";
    case ErrorKind::non_distinct: return "non_distinct";
    case ErrorKind::necessity_violation: return "necessity_violation";
    case ErrorKind::hypothesis: return "hypothesis";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::scale: return "scale";
    case ErrorKind::parity: return "parity";
    case ErrorKind::well_definedness: return "well_definedness";
    case ErrorKind::size: return "size";
    case ErrorKind::modulus_mismatch: return "modulus_mismatch";
    case ErrorKind::lifting: return "lifting";
    case ErrorKind::inapplicable: return "inapplicable";
    case ErrorKind::parse: return "parse";
    case ErrorKind::usage: return "usage";
    case ErrorKind::internal: return "internal";
  }
  return "unknown";
}

std::uint64_t to_u64(const BigInt& v) {
  if (v < 0 || v > std::numeric_limits<std::uint64_t>::max())
    throw Error(ErrorKind::domain, "integer " + v.str() + " does not fit in 64 unsigned bits");
  return v.convert_to<std::uint64_t>();
}

std::int64_t to_i64(const BigInt& v) {
  if (v < std::numeric_limits<std::int64_t>::min() || v > std::numeric_limits<std::int64_t>::max())
    throw Error(ErrorKind::domain, "integer " + v.str() + " does not fit in 64 signed bits");
  return v.convert_to<std::int64_t>();
}

double to_double(const BigInt& v) { return v.convert_to<double>(); }

std::string to_string(const BigInt& v) { return v.str(); }

BigInt parse_bigint(const std::string& text) {
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
  if (i == text.size()) throw Error(ErrorKind::parse, "not an integer: '" + text + "'");
  for (std::size_t j = i; j < text.size(); ++j)
    if (text[j] < '0' || text[j] > '9') throw Error(ErrorKind::parse, "not an integer: '" + text + "'");
  return BigInt(text);
}

std::uint64_t mod_u64(const BigInt& v, std::uint64_t m) {
  BigInt r = v % m;
  if (r < 0) r += m;
  return r.convert_to<std::uint64_t>();
}

BigInt gcd(const BigInt& a, const BigInt& b) { return boost::multiprecision::gcd(a, b); }

}  // namespace primepoly
