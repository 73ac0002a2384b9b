#include "primepoly/wtrick.hpp"

#include <sstream>

#include "primepoly/errors.hpp"
#include "primepoly/numtheory.hpp"

namespace primepoly::wtrick {

namespace {

constexpr std::uint64_t kScanLimit = 1'000'000;

IntPolynomial multiply(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const auto& x = a.lowest_first();
  const auto& y = b.lowest_first();
  std::vector<BigInt> out(x.size() + y.size() - 1, 0);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) out[i + j] += x[i] * y[j];
  return IntPolynomial::from_lowest_first(std::move(out));
}

// t = (b_p - b0) / W0, exact.
BigInt shifted_argument(std::uint64_t bp, std::uint64_t b0, std::uint64_t W0) {
  BigInt diff = BigInt(bp) - BigInt(b0);
  if (diff % W0 != 0)
    throw Error(ErrorKind::domain, "b_p=" + std::to_string(bp) + " is not congruent to b0 modulo W0");
  return diff / W0;
}

bool is_even(const BigInt& v) { return (v % 2) == 0; }

// Strictly increasing on the integers >= 1 and positive at 1.
void require_increasing(const IntPolynomial& p) {
  if (p(1) <= 0) throw Error(ErrorKind::precondition, "psi_{b,W}(1) is not positive");
  // p(x+1) - p(x) as a polynomial
  IntPolynomial shifted = poly::rescale(p, 1, 1).poly;  // p(x+1) - p(1)
  std::vector<BigInt> diff(std::max(shifted.lowest_first().size(), p.lowest_first().size()), 0);
  for (int i = 0; i <= shifted.degree(); ++i) diff[i] += shifted.coefficient(i);
  diff[0] += p(1);
  for (int i = 0; i <= p.degree(); ++i) diff[i] -= p.coefficient(i);
  IntPolynomial delta = IntPolynomial::from_lowest_first(std::move(diff));
  if (delta.is_zero() || delta.leading() <= 0)
    throw Error(ErrorKind::precondition, "psi_{b,W} is not eventually increasing");
  BigInt bound = 1;
  for (int i = 0; i < delta.degree(); ++i) {
    BigInt q = abs(delta.coefficient(i)) / delta.leading() + 2;
    if (q > bound) bound = q;
  }
  if (bound > kScanLimit) throw Error(ErrorKind::precondition, "monotonicity range too large to certify");
  for (std::uint64_t x = 1; x <= bound.convert_to<std::uint64_t>(); ++x)
    if (delta(BigInt(x)) <= 0)
      throw Error(ErrorKind::precondition, "psi_{b,W} is not increasing at x=" + std::to_string(x));
}

}  // namespace

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
  if (limit < 2) return {};
  return nt::sieve_primes(limit).primes();
}

std::uint64_t WTrickContext::half_psi_b() const {
  BigInt v = psi_at_b();
  if (v < 0 || !is_even(v)) throw Error(ErrorKind::domain, "psi(b) must be even and nonnegative, got " + v.str());
  return to_u64(v / 2);
}

std::optional<ParityCertificate> parity_certificate(const IntPolynomial& psi, std::uint64_t b0,
                                                    std::uint64_t W0) {
  if (W0 % 2 == 0) {
    if (is_even(psi(1))) return ParityCertificate{ParityBranch::w0_even_psi_one_even};
    if (is_even(psi(0))) return ParityCertificate{ParityBranch::w0_even_psi_zero_even};
    return std::nullopt;
  }
  if (is_even(psi(BigInt(b0) - 1))) return ParityCertificate{ParityBranch::w0_odd_psi_b0_minus_one_even};
  return std::nullopt;
}

std::uint64_t find_nonroot(const IntPolynomial& h, std::uint64_t p, std::span<const std::uint64_t> S) {
  const IntPolynomial reduced = h.reduce_mod(p);
  if (reduced.is_zero())
    throw Error(ErrorKind::degenerate_polynomial, "polynomial vanishes identically modulo " + std::to_string(p));
  std::vector<std::uint64_t> residues;
  residues.reserve(S.size());
  for (auto s : S) residues.push_back(s % p);
  std::sort(residues.begin(), residues.end());
  if (std::adjacent_find(residues.begin(), residues.end()) != residues.end())
    throw Error(ErrorKind::non_distinct, "candidate set repeats a residue modulo " + std::to_string(p));
  if (S.size() < static_cast<std::size_t>(reduced.degree()) + 1)
    throw Error(ErrorKind::insufficient_set, "candidate set has " + std::to_string(S.size()) +
                                                 " elements, need at least deg+1 = " +
                                                 std::to_string(reduced.degree() + 1));
  std::optional<std::uint64_t> best;
  for (auto s : S)
    if (reduced.eval_mod(BigInt(s), p) != 0 && (!best || s < *best)) best = s;
  if (!best) throw Error(ErrorKind::internal, "no non-root found; root count exceeds degree");
  return *best;
}

std::optional<std::uint64_t> check_cp(const IntPolynomial& psi, std::uint64_t b0, std::uint64_t W0,
                                      std::uint64_t p) {
  for (std::uint64_t c = 1; c <= p; ++c) {
    if ((static_cast<unsigned __int128>(W0) * c + b0) % p == 0) continue;
    BigInt v = psi(BigInt(c));
    if (!is_even(v))
      throw Error(ErrorKind::parity, "psi(" + std::to_string(c) + ") = " + v.str() + " is odd", p);
    if (mod_u64(v / 2, p) != 0) return c;
  }
  return std::nullopt;
}

std::uint64_t select_bp(const IntPolynomial& psi, std::uint64_t b0, std::uint64_t W0, std::uint64_t Psi,
                        std::uint64_t p, Variant variant, std::optional<std::uint64_t> cp) {
  const IntPolynomial dpsi = psi.derivative();
  std::uint64_t chosen = 0;

  if (p > Psi) {
    // Non-root lemma over t = (b_p - b0)/W0 with 1 <= b_p <= p-1.
    const IntPolynomial h = variant == Variant::integer_coloring ? dpsi : multiply(dpsi, psi);
    if (p <= b0) throw Error(ErrorKind::internal, "prime below b0 in the large-prime regime");
    std::vector<std::uint64_t> ts;
    for (std::uint64_t t = 0; W0 * t + b0 <= p - 1; ++t) ts.push_back(t);
    chosen = W0 * find_nonroot(h, p, ts) + b0;
  } else if (variant == Variant::integer_coloring) {
    const bool parity_rule = p == 2 && W0 % 2 == 0;
    for (std::uint64_t t = 0; t < kScanLimit; ++t) {
      const std::uint64_t cand = W0 * t + b0;
      if (cand % p == 0) continue;
      if (dpsi(BigInt(t)) <= 0) continue;
      if (parity_rule && !is_even(psi(BigInt(t)))) continue;
      chosen = cand;
      break;
    }
  } else {
    if (!cp)
      throw Error(ErrorKind::necessity_violation,
                  "no c_p exists for p=" + std::to_string(p) + "; the prime-coloring hypothesis fails", p);
    const std::uint64_t period = p * W0;
    std::uint64_t cand = (W0 * *cp + b0) % period;
    if (cand == 0) cand = period;
    // For p = 2 the class of t mod p does not fix psi(t)/2 mod 2, so that is tested directly.
    for (std::uint64_t j = 0; j < kScanLimit; ++j, cand += period) {
      const BigInt t = shifted_argument(cand, b0, W0);
      const BigInt v = psi(t);
      if (dpsi(t) > 0 && is_even(v) && mod_u64(v / 2, p) != 0) {
        chosen = cand;
        break;
      }
    }
  }
  if (chosen == 0) throw Error(ErrorKind::construction, "no admissible b_p found for p=" + std::to_string(p), p);

  // Re-verify every defining constraint.
  const BigInt t = shifted_argument(chosen, b0, W0);
  const BigInt d = dpsi(t);
  bool ok = chosen >= 1 && chosen % W0 == b0 % W0;
  if (p > Psi) {
    ok = ok && chosen <= p - 1 && mod_u64(d, p) != 0;
    if (variant == Variant::prime_coloring) ok = ok && mod_u64(psi(t), p) != 0;
  } else {
    ok = ok && d > 0 && chosen % p != 0;
    if (variant == Variant::integer_coloring && p == 2 && W0 % 2 == 0) ok = ok && is_even(psi(t));
    if (variant == Variant::prime_coloring)
      ok = ok && (chosen % (p * W0)) == (W0 * *cp + b0) % (p * W0) && mod_u64(psi(t) / 2, p) != 0;
  }
  if (!ok) throw Error(ErrorKind::internal, "selected b_p fails its constraints for p=" + std::to_string(p), p);
  return chosen;
}

std::uint64_t compute_K(const std::map<std::uint64_t, std::uint64_t>& bp, const IntPolynomial& psi,
                        std::uint64_t b0, std::uint64_t W0, std::uint64_t Psi) {
  const IntPolynomial dpsi = psi.derivative();
  BigInt K = 1;
  for (std::uint64_t p : primes_up_to(Psi)) {
    auto it = bp.find(p);
    if (it == bp.end()) throw Error(ErrorKind::domain, "b_p missing for p=" + std::to_string(p), p);
    const BigInt d = dpsi(shifted_argument(it->second, b0, W0));
    if (d == 0) throw Error(ErrorKind::domain, "psi'((b_p-b0)/W0) vanishes for p=" + std::to_string(p), p);
    K *= boost::multiprecision::pow(BigInt(p), nt::p_adic_valuation(p, d));
  }
  return to_u64(K);
}

std::map<std::uint64_t, unsigned> uniform_w_config(std::uint64_t w, unsigned exponent) {
  std::map<std::uint64_t, unsigned> out;
  for (auto p : primes_up_to(w)) out[p] = exponent;
  return out;
}

WTrickContext build_context(const IntPolynomial& psi, std::uint64_t b0, std::uint64_t W0, std::uint64_t m,
                            Variant variant, const std::map<std::uint64_t, unsigned>& w_config,
                            std::uint64_t n) {
  if (W0 < 1 || b0 < 1 || b0 > W0)
    throw Error(ErrorKind::precondition, "need 1 <= b0 <= W0");
  if (nt::gcd_u64(b0, W0) != 1)
    throw Error(ErrorKind::precondition, "need gcd(b0, W0) = 1, got gcd(" + std::to_string(b0) + ", " +
                                             std::to_string(W0) + ") = " + std::to_string(nt::gcd_u64(b0, W0)));
  if (m < 1) throw Error(ErrorKind::precondition, "color count m must be positive");
  if (psi.degree() < 1 || psi.leading() <= 0)
    throw Error(ErrorKind::precondition, "psi needs degree >= 1 and a positive leading coefficient");
  if (n < 1) throw Error(ErrorKind::precondition, "n must be positive");
  for (auto [p, e] : w_config)
    if (!nt::is_prime_u64(p) || e < 1)
      throw Error(ErrorKind::precondition, "w_config entries must be prime -> positive exponent");

  if (!parity_certificate(psi, b0, W0))
    throw Error(ErrorKind::hypothesis, "parity hypothesis on psi fails for b0=" + std::to_string(b0) +
                                           ", W0=" + std::to_string(W0));

  WTrickContext ctx;
  ctx.variant = variant;
  ctx.psi = psi;
  ctx.b0 = b0;
  ctx.W0 = W0;
  ctx.m = m;
  ctx.n = n;
  ctx.w_config = w_config;
  ctx.Psi = poly::psi_bound(psi, W0, variant);

  const auto small = primes_up_to(ctx.Psi);
  if (variant == Variant::prime_coloring) {
    std::vector<std::uint64_t> violators;
    for (auto p : small) {
      auto c = check_cp(psi, b0, W0, p);
      if (c)
        ctx.cp[p] = *c;
      else
        violators.push_back(p);
    }
    if (!violators.empty()) {
      std::ostringstream msg;
      msg << "c_p does not exist for p in {";
      for (std::size_t i = 0; i < violators.size(); ++i) msg << (i ? ", " : "") << violators[i];
      msg << "}";
      throw Error(ErrorKind::necessity_violation, msg.str(), violators.front());
    }
  }

  for (auto p : small) {
    std::optional<std::uint64_t> cp;
    if (auto it = ctx.cp.find(p); it != ctx.cp.end()) cp = it->second;
    ctx.bp[p] = select_bp(psi, b0, W0, ctx.Psi, p, variant, cp);
  }
  for (auto [p, e] : w_config)
    if (!ctx.bp.count(p)) ctx.bp[p] = select_bp(psi, b0, W0, ctx.Psi, p, variant);

  ctx.K = compute_K(ctx.bp, psi, b0, W0, ctx.Psi);

  BigInt W = 1;
  std::vector<nt::Congruence> congruences;
  for (auto [p, e] : w_config) {
    const BigInt pe = boost::multiprecision::pow(BigInt(p), e);
    W *= pe;
    congruences.push_back({shifted_argument(ctx.bp.at(p), b0, W0), pe});
  }
  ctx.W = to_u64(W);
  ctx.b = to_u64(nt::crt(congruences).residue);

  if (!is_even(ctx.psi_at_b()))
    throw Error(ErrorKind::hypothesis,
                "psi(b) is odd for the CRT residue b=" + std::to_string(ctx.b) + "; add 2 to w_config");
  if (nt::gcd_u64(ctx.progression_residue(), ctx.progression_modulus()) != 1)
    throw Error(ErrorKind::internal, "gcd(W0 b + b0, W W0) != 1");
  if (variant == Variant::prime_coloring) {
    const auto g = nt::gcd_u64(ctx.half_psi_b(), ctx.K * ctx.W);
    if (g != 1)
      throw Error(ErrorKind::construction, "gcd(psi(b)/2, KW) = " + std::to_string(g) + " for b=" +
                                               std::to_string(ctx.b) + "; raise the exponent of " +
                                               std::to_string(g % 2 == 0 ? 2 : g) + " in w_config");
  }

  // N: smallest prime above 2n/W, then the narrowest interval that holds it.
  const BigInt D = ctx.kappa_denominator();
  const BigInt lower = BigInt(2) * n / ctx.W;
  auto N = nt::prime_in_interval(to_u64(lower), to_u64(lower) * 4 + 8);
  if (!N) throw Error(ErrorKind::scale, "no prime modulus found above 2n/W");
  ctx.N = *N;
  ctx.n_search.lower = to_u64(lower);
  bool placed = false;
  BigInt slack = 1;  // in units of kappa
  for (unsigned j = 0; j <= 8; ++j, slack *= 4) {
    const BigInt capped = slack < 2 * D ? slack : 2 * D;
    const BigInt upper = (2 * D + capped) * n / (D * ctx.W);
    if (BigInt(ctx.N) <= upper) {
      ctx.n_search.widenings = j;
      ctx.n_search.upper = to_u64(upper);
      placed = true;
      break;
    }
  }
  if (!placed) throw Error(ErrorKind::scale, "no prime N within the widened interval above 2n/W");
  if (nt::gcd_u64(ctx.N, ctx.K) != 1 || ctx.N <= 2)
    throw Error(ErrorKind::scale, "prime modulus N=" + std::to_string(ctx.N) + " is too small for K");

  ctx.psi_bW = poly::rescale(psi, BigInt(ctx.W), BigInt(ctx.b));
  try {
    require_increasing(ctx.psi_bW.poly);
    ctx.M = poly::compute_M(ctx.psi_bW, BigInt(ctx.K), BigInt(ctx.N));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::empty_range) throw Error(ErrorKind::scale, std::string("n too small: ") + e.what());
    throw;
  }
  return ctx;
}

std::vector<InvariantCheck> context_invariants(const WTrickContext& ctx) {
  std::vector<InvariantCheck> out;
  auto add = [&](std::string name, bool ok, std::string detail) {
    out.push_back({std::move(name), ok, std::move(detail)});
  };

  {
    const auto g = nt::gcd_u64(ctx.progression_residue(), ctx.progression_modulus());
    add("gcd(W0*b+b0, W*W0) = 1", g == 1, "gcd = " + std::to_string(g));
  }
  {
    const BigInt v = ctx.psi_at_b();
    add("psi(b) even", is_even(v), "psi(b) = " + v.str());
  }
  if (ctx.variant == Variant::prime_coloring) {
    const auto g = nt::gcd_u64(ctx.half_psi_b(), ctx.K * ctx.W);
    add("gcd(psi(b)/2, KW) = 1", g == 1, "gcd = " + std::to_string(g));
  }
  add("kappa = 1/(10^4 K m)", ctx.kappa_denominator() == 10'000 * ctx.K * ctx.m && ctx.kappa() > 0,
      "kappa = 1/" + std::to_string(ctx.kappa_denominator()));
  {
    bool ok = true;
    std::string detail;
    for (auto [p, e] : ctx.w_config) {
      auto it = ctx.bp.find(p);
      if (it == ctx.bp.end()) {
        ok = false;
        detail += "missing b_" + std::to_string(p) + "; ";
        continue;
      }
      const unsigned v = ctx.W0 % p == 0 ? nt::p_adic_valuation(p, BigInt(ctx.W0)) : 0;
      const BigInt mod = boost::multiprecision::pow(BigInt(p), e + v);
      BigInt diff = (BigInt(ctx.progression_residue()) - BigInt(it->second)) % mod;
      if (diff != 0) {
        ok = false;
        detail += "fails at p=" + std::to_string(p) + "; ";
      }
    }
    add("W0*b+b0 = b_p mod p^(w_p+nu_p(W0))", ok, detail.empty() ? "all primes of W" : detail);
  }
  {
    std::string detail;
    bool ok = true;
    try {
      const auto K = compute_K(ctx.bp, ctx.psi, ctx.b0, ctx.W0, ctx.Psi);
      ok = K == ctx.K;
      detail = "recomputed K = " + std::to_string(K);
    } catch (const Error& e) {
      ok = false;
      detail = e.what();
    }
    add("K = prod p^nu_p(psi'((b_p-b0)/W0))", ok, detail);
  }
  {
    const BigInt two_n = BigInt(2) * ctx.n;
    const bool above = BigInt(ctx.N) * ctx.W > two_n;
    const BigInt D = ctx.kappa_denominator();
    const bool in_nominal_interval = BigInt(ctx.N) * D * ctx.W <= (2 * D + 1) * BigInt(ctx.n);
    const bool ok = nt::is_prime_u64(ctx.N) && above && ctx.N <= ctx.n_search.upper &&
                    (ctx.n_search.widenings > 0 || in_nominal_interval);
    add("N prime in (2n/W, upper]", ok,
        "N = " + std::to_string(ctx.N) + ", widenings = " + std::to_string(ctx.n_search.widenings));
  }
  {
    BigInt W = 1;
    for (auto [p, e] : ctx.w_config) W *= boost::multiprecision::pow(BigInt(p), e);
    add("W = prod p^w_p", W == ctx.W, "W = " + std::to_string(ctx.W));
  }
  {
    bool ok = ctx.psi_bW.W == ctx.W && ctx.psi_bW.b == ctx.b;
    if (ok) {
      try {
        ok = poly::rescale(ctx.psi, BigInt(ctx.W), BigInt(ctx.b)).poly == ctx.psi_bW.poly;
      } catch (const Error&) {
        ok = false;
      }
    }
    add("psi_{b,W} = (psi(Wx+b)-psi(b))/W", ok, ctx.psi_bW.poly.to_string());
  }
  {
    const BigInt cap = BigInt(ctx.K) * ctx.N;
    const bool ok = ctx.M >= 1 && ctx.psi_bW(BigInt(ctx.M)) < cap && ctx.psi_bW(BigInt(ctx.M + 1)) >= cap;
    add("psi_{b,W}(M) < KN <= psi_{b,W}(M+1)", ok, "M = " + std::to_string(ctx.M));
  }
  return out;
}

std::string_view to_string(GcdIdentity g) {
  switch (g) {
    case GcdIdentity::holds: return "holds";
    case GcdIdentity::fails: return "fails";
    case GcdIdentity::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

bool gcd_identity_precondition(const WTrickContext& ctx) {
  const IntPolynomial dpsi = ctx.psi.derivative();
  const BigInt a1 = ctx.psi.leading();
  for (auto p : primes_up_to(ctx.Psi)) {
    auto it = ctx.bp.find(p);
    if (it == ctx.bp.end()) return false;
    const BigInt d = dpsi(shifted_argument(it->second, ctx.b0, ctx.W0));
    if (d == 0) return false;
    const unsigned nu = nt::p_adic_valuation(p, d);
    auto w = ctx.w_config.find(p);
    const unsigned e = w == ctx.w_config.end() ? 0 : w->second;
    if (e == 0) {
      // p outside W: harmless only if it cannot enter either gcd.
      if (nu > 0 || a1 % p == 0) return false;
    } else if (e <= nu) {
      return false;
    }
  }
  return true;
}

GcdIdentity verify_gcd_identity(const WTrickContext& ctx) {
  if (!gcd_identity_precondition(ctx)) return GcdIdentity::inconclusive;
  const BigInt d = ctx.psi.derivative()(BigInt(ctx.b));
  const BigInt g_w = gcd(d, BigInt(ctx.W));
  const BigInt big = ctx.psi.leading() * boost::multiprecision::pow(BigInt(ctx.W), ctx.psi.degree() - 1);
  const BigInt g_big = gcd(d, big);
  return (g_w == ctx.K && g_big == g_w) ? GcdIdentity::holds : GcdIdentity::fails;
}

}  // namespace primepoly::wtrick
