#include "primepoly/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "primepoly/errors.hpp"

namespace primepoly::poly {

IntPolynomial::IntPolynomial(std::vector<BigInt> lowest_first) : coeffs_(std::move(lowest_first)) {
  normalize();
}

void IntPolynomial::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

IntPolynomial IntPolynomial::from_highest_first(std::vector<BigInt> coefficients) {
  std::reverse(coefficients.begin(), coefficients.end());
  return IntPolynomial(std::move(coefficients));
}

IntPolynomial IntPolynomial::from_lowest_first(std::vector<BigInt> coefficients) {
  return IntPolynomial(std::move(coefficients));
}

BigInt IntPolynomial::coefficient(int i) const {
  if (i < 0 || i > degree()) return 0;
  return coeffs_[static_cast<std::size_t>(i)];
}

const BigInt& IntPolynomial::leading() const {
  if (coeffs_.empty()) throw Error(ErrorKind::domain, "zero polynomial has no leading coefficient");
  return coeffs_.back();
}

std::vector<BigInt> IntPolynomial::highest_first() const {
  return {coeffs_.rbegin(), coeffs_.rend()};
}

BigInt IntPolynomial::operator()(const BigInt& x) const {
  BigInt acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::uint64_t IntPolynomial::eval_mod(const BigInt& x, std::uint64_t m) const {
  const unsigned __int128 mod = m;
  const unsigned __int128 xr = mod_u64(x, m);
  unsigned __int128 acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = (acc * xr + mod_u64(*it, m)) % mod;
  return static_cast<std::uint64_t>(acc);
}

IntPolynomial IntPolynomial::reduce_mod(std::uint64_t p) const {
  std::vector<BigInt> reduced;
  reduced.reserve(coeffs_.size());
  for (const auto& c : coeffs_) reduced.emplace_back(mod_u64(c, p));
  return IntPolynomial(std::move(reduced));
}

IntPolynomial IntPolynomial::derivative() const {
  if (coeffs_.size() <= 1) return IntPolynomial();
  std::vector<BigInt> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<unsigned>(i);
  return IntPolynomial(std::move(d));
}

std::string IntPolynomial::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const BigInt& c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    BigInt mag = abs(c);
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    if (mag != 1 || i == 0) out << mag;
    if (i >= 1) out << "x";
    if (i >= 2) out << "^" << i;
    first = false;
  }
  return out.str();
}

std::string IntPolynomial::to_literal() const {
  std::ostringstream out;
  out << "[";
  auto hf = highest_first();
  if (hf.empty()) hf.emplace_back(0);
  for (std::size_t i = 0; i < hf.size(); ++i) out << (i ? "," : "") << hf[i];
  out << "]";
  return out.str();
}

IntPolynomial parse_polynomial(std::string_view literal) {
  std::string text;
  for (char c : literal)
    if (!std::isspace(static_cast<unsigned char>(c))) text.push_back(c);
  if (text.size() < 2 || text.front() != '[' || text.back() != ']')
    throw Error(ErrorKind::parse, "polynomial literal must look like [a_k,...,a_0], got '" +
                                      std::string(literal) + "'");
  text = text.substr(1, text.size() - 2);
  std::vector<BigInt> coeffs;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    coeffs.push_back(parse_bigint(text.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return IntPolynomial::from_highest_first(std::move(coeffs));
}

BigInt eval(const IntPolynomial& p, const BigInt& x) { return p(x); }

IntPolynomial derivative(const IntPolynomial& p) { return p.derivative(); }

BigInt forward_difference(const IntPolynomial& p, const BigInt& x) { return p(x + 1) - p(x); }

RescaledPolynomial rescale(const IntPolynomial& psi, const BigInt& W, const BigInt& b) {
  if (W < 1) throw Error(ErrorKind::domain, "rescale needs W >= 1");
  if (b < 0) throw Error(ErrorKind::domain, "rescale needs b >= 0");

  // Horner in polynomial arithmetic: acc <- acc * (W x + b) + a_i
  std::vector<BigInt> acc;
  for (int i = psi.degree(); i >= 0; --i) {
    std::vector<BigInt> next(acc.size() + 1, 0);
    for (std::size_t j = 0; j < acc.size(); ++j) {
      next[j] += acc[j] * b;
      next[j + 1] += acc[j] * W;
    }
    next[0] += psi.coefficient(i);
    acc = std::move(next);
  }
  if (!acc.empty()) acc[0] -= psi(b);

  std::vector<BigInt> scaled(acc.size());
  for (std::size_t j = 0; j < acc.size(); ++j) {
    if (acc[j] % W != 0)
      throw Error(ErrorKind::construction, "psi(Wx+b) - psi(b) not divisible by W at x^" + std::to_string(j));
    scaled[j] = acc[j] / W;
  }

  RescaledPolynomial out{psi, W, b, IntPolynomial::from_lowest_first(std::move(scaled))};
  if (out.poly.coefficient(0) != 0)
    throw Error(ErrorKind::construction, "rescaled polynomial has a nonzero constant term");
  if (out.poly.coefficient(1) != psi.derivative()(b))
    throw Error(ErrorKind::construction, "linear coefficient of psi_{b,W} differs from psi'(b)");
  for (int i = 2; i <= out.poly.degree(); ++i)
    if (out.poly.coefficient(i) % W != 0)
      throw Error(ErrorKind::construction, "W does not divide the x^" + std::to_string(i) + " coefficient");
  return out;
}

std::string_view to_string(Variant v) {
  return v == Variant::integer_coloring ? "integer-coloring" : "prime-coloring";
}

Variant parse_variant(std::string_view text) {
  if (text == "integer-coloring" || text == "integer") return Variant::integer_coloring;
  if (text == "prime-coloring" || text == "prime") return Variant::prime_coloring;
  throw Error(ErrorKind::parse, "unknown variant '" + std::string(text) + "'");
}

std::uint64_t psi_bound(const IntPolynomial& psi, std::uint64_t W0, Variant variant) {
  const int k = psi.degree();
  if (k < 1) throw Error(ErrorKind::domain, "psi must have degree at least 1");
  const std::uint64_t factor = variant == Variant::integer_coloring ? k + 1 : 2 * k + 1;
  BigInt bound = BigInt(factor) * W0;
  for (int i = 1; i <= k; ++i) bound = std::max<BigInt>(bound, abs(psi.coefficient(i)));
  return to_u64(bound);
}

std::uint64_t compute_M(const IntPolynomial& increasing, const BigInt& K, const BigInt& N) {
  const BigInt cap = K * N;
  if (increasing(1) >= cap)
    throw Error(ErrorKind::empty_range, "psi_{b,W}(1) = " + increasing(1).str() + " is not below KN = " + cap.str());
  std::uint64_t lo = 1;  // increasing(lo) < cap
  std::uint64_t hi = 2;
  while (increasing(BigInt(hi)) < cap) {
    lo = hi;
    if (hi > (std::uint64_t{1} << 62)) throw Error(ErrorKind::domain, "M exceeds 2^62");
    hi *= 2;
  }
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (increasing(BigInt(mid)) < cap)
      lo = mid;
    else
      hi = mid;
  }
  if (!(increasing(BigInt(lo)) < cap && increasing(BigInt(lo + 1)) >= cap))
    throw Error(ErrorKind::internal, "compute_M post-condition failed");
  return lo;
}

std::uint64_t compute_M(const RescaledPolynomial& rescaled, const BigInt& K, const BigInt& N) {
  return compute_M(rescaled.poly, K, N);
}

}  // namespace primepoly::poly
