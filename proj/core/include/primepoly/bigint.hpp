#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace primepoly {

using BigInt = boost::multiprecision::cpp_int;

/// Narrowing conversions that refuse to wrap.
std::uint64_t to_u64(const BigInt& v);
std::int64_t to_i64(const BigInt& v);
double to_double(const BigInt& v);

std::string to_string(const BigInt& v);
BigInt parse_bigint(const std::string& text);

/// Least nonnegative residue of v modulo m (m > 0).
std::uint64_t mod_u64(const BigInt& v, std::uint64_t m);

BigInt gcd(const BigInt& a, const BigInt& b);

}  // namespace primepoly
