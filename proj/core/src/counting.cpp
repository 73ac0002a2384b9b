#include "primepoly/counting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "primepoly/errors.hpp"
#include "primepoly/numtheory.hpp"

namespace primepoly::counting {

namespace {

using nlohmann::json;

void require_same_modulus(const DensityFunction& f, const DensityFunction& g, const DensityFunction& h) {
  if (f.modulus() != g.modulus() || g.modulus() != h.modulus())
    throw Error(ErrorKind::modulus_mismatch, "triple count over different moduli");
}

std::vector<std::uint64_t> normalized_set(const std::vector<std::uint64_t>& S, std::uint64_t N) {
  std::vector<std::uint64_t> out;
  out.reserve(S.size());
  for (auto x : S) out.push_back(x % N);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// s(t) = #{(a1, a2) in A^2 : a1 + a2 = t}
std::vector<std::uint64_t> pair_sums(const std::vector<std::uint64_t>& A, std::uint64_t N) {
  std::vector<std::uint64_t> s(N, 0);
  for (auto a1 : A)
    for (auto a2 : A) {
      std::uint64_t t = a1 + a2;
      if (t >= N) t -= N;
      ++s[t];
    }
  return s;
}

std::int64_t popularity_m4(std::size_t a, std::size_t u, std::uint64_t N) {
  const auto A = static_cast<std::int64_t>(a);
  const auto U = static_cast<std::int64_t>(u);
  return std::min({4 * A, 4 * U, 2 * A + U - static_cast<std::int64_t>(N)});
}

bool cube_bound(std::uint64_t nu, std::int64_t m4, std::uint64_t N) {
  if (m4 <= 0) return true;
  const BigInt lhs = BigInt(64) * N * nu;
  const BigInt rhs = BigInt(m4) * m4 * m4;
  return lhs >= rhs;
}

// Delta psi(z) = psi(z+1) - psi(z), lowest degree first.
std::vector<BigInt> forward_difference_coefficients(const poly::IntPolynomial& psi) {
  const auto& a = psi.lowest_first();
  std::vector<BigInt> out(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    BigInt binom = 1;  // C(i, j)
    for (std::size_t j = 0; j <= i; ++j) {
      if (j < i) out[j] += a[i] * binom;  // (x+1)^i minus x^i leaves j < i
      binom = binom * (i - j) / (j + 1);
    }
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

// Smallest z0 >= 1 with psi increasing on [z0, infinity), from a Cauchy bound
// on the roots of the forward difference.
std::uint64_t monotone_start(const poly::IntPolynomial& psi) {
  const auto d = forward_difference_coefficients(psi);
  if (d.empty() || d.back() <= 0)
    throw Error(ErrorKind::domain, "psi must have positive degree and positive leading coefficient");
  BigInt bound = 1;
  for (std::size_t i = 0; i + 1 < d.size(); ++i) {
    const BigInt q = abs(d[i]) / d.back() + 2;
    if (q > bound) bound = q;
  }
  return to_u64(bound);
}

double rho_for(const poly::IntPolynomial& psi) {
  const int k = psi.degree();
  return static_cast<double>(k) * std::pow(2.0, k + 3);
}

double max_real(const DensityFunction& f) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& v : f.values()) best = std::max(best, v.real());
  return best;
}

std::vector<std::uint64_t> level_set(const DensityFunction& f, double level) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t x = 0; x < f.modulus(); ++x)
    if (f[x].real() >= level) out.push_back(x);
  return out;
}

std::string rational_text(const spectral::Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace

Complex triple_count_bruteforce(const DensityFunction& f, const DensityFunction& g, const DensityFunction& h) {
  require_same_modulus(f, g, h);
  const std::uint64_t N = f.modulus();
  if (N > spectral::kDirectDftLimit)
    throw Error(ErrorKind::size, "brute-force triple count limited to N <= 2048, got " + std::to_string(N));
  const auto& fv = f.values();
  const auto& gv = g.values();
  const auto& hv = h.values();
  Complex acc = 0;
  for (std::uint64_t x = 0; x < N; ++x) {
    if (fv[x] == Complex(0)) continue;
    Complex inner = 0;
    for (std::uint64_t y = 0; y < N; ++y) {
      std::uint64_t z = x + y;
      if (z >= N) z -= N;
      inner += gv[y] * hv[z];
    }
    acc += fv[x] * inner;
  }
  return acc;
}

Complex triple_count_fourier(const DensityFunction& f, const DensityFunction& g, const DensityFunction& h) {
  require_same_modulus(f, g, h);
  const std::uint64_t N = f.modulus();
  const auto& fs = f.spectrum();
  const auto& gs = g.spectrum();
  const auto& hs = h.spectrum();
  Complex acc = 0;
  for (std::uint64_t r = 0; r < N; ++r) {
    const std::uint64_t neg = (N - r) % N;
    acc += fs[neg] * gs[neg] * hs[r];
  }
  return acc / static_cast<double>(N);
}

Complex triple_count_fourier_swapped(const DensityFunction& f, const DensityFunction& g,
                                     const DensityFunction& h) {
  require_same_modulus(f, g, h);
  const std::uint64_t N = f.modulus();
  const auto& fs = f.spectrum();
  const auto& gs = g.spectrum();
  const auto& hs = h.spectrum();
  Complex acc = 0;
  for (std::uint64_t r = 0; r < N; ++r) acc += fs[r] * gs[(N - r) % N] * hs[r];
  return acc / static_cast<double>(N);
}

Complex triple_count(const DensityFunction& f, const DensityFunction& g, const DensityFunction& h) {
  if (f.modulus() <= spectral::kDirectDftLimit) return triple_count_bruteforce(f, g, h);
  return triple_count_fourier(f, g, h);
}

double PopularityProfile::bound() const {
  if (m4 <= 0) return 0;
  const double q = static_cast<double>(m4) / 4.0;
  return q * q * q / static_cast<double>(N);
}

bool PopularityProfile::bound_holds_at(std::uint64_t x) const { return cube_bound(nu.at(x), m4, N); }

bool PopularityProfile::bound_holds_everywhere() const {
  for (std::uint64_t x = 0; x < N; ++x)
    if (!cube_bound(nu[x], m4, N)) return false;
  return true;
}

PopularityProfile popularity(const std::vector<std::uint64_t>& A_in, const std::vector<std::uint64_t>& U_in,
                             std::uint64_t N) {
  if (N < 1) throw Error(ErrorKind::domain, "popularity needs N >= 1");
  const auto A = normalized_set(A_in, N);
  const auto U = normalized_set(U_in, N);
  const auto s = pair_sums(A, N);
  PopularityProfile p;
  p.N = N;
  p.size_A = A.size();
  p.size_U = U.size();
  p.m4 = popularity_m4(A.size(), U.size(), N);
  p.nu.assign(N, 0);
  // x1 + x2 = x + x3
  for (std::uint64_t x = 0; x < N; ++x) {
    std::uint64_t acc = 0;
    for (auto u : U) {
      std::uint64_t t = x + u;
      if (t >= N) t -= N;
      acc += s[t];
    }
    p.nu[x] = acc;
  }
  return p;
}

std::uint64_t popularity_at(const std::vector<std::uint64_t>& A_in, const std::vector<std::uint64_t>& U_in,
                            std::uint64_t N, std::uint64_t x) {
  const auto A = normalized_set(A_in, N);
  const auto U = normalized_set(U_in, N);
  std::vector<char> inU(N, 0);
  for (auto u : U) inU[u] = 1;
  // count (x1, x2) with x1 + x2 - x in U
  std::uint64_t acc = 0;
  const std::uint64_t shift = (N - x % N) % N;
  for (auto a1 : A)
    for (auto a2 : A) acc += inU[(a1 + a2 + shift) % N];
  return acc;
}

std::vector<SolutionTriple> find_monochromatic(const coloring::ColoringInstance& coloring,
                                               const poly::IntPolynomial& psi, std::uint64_t b0,
                                               std::uint64_t W0, SearchMode mode) {
  std::vector<SolutionTriple> out;
  const std::uint64_t n = coloring.n;
  if (n < 2) return out;
  const std::uint64_t z_mono = monotone_start(psi);
  const BigInt two_n = BigInt(2) * n;

  for (std::uint64_t z = 1;; ++z) {
    const BigInt v_big = psi(BigInt(z));
    if (z >= z_mono && v_big > two_n) break;
    if (v_big < 3 || v_big > two_n) continue;
    const unsigned __int128 witness = static_cast<unsigned __int128>(W0) * z + b0;
    if ((witness >> 64) || !nt::is_prime_u64(static_cast<std::uint64_t>(witness))) continue;
    const std::uint64_t v = to_u64(v_big);
    // x < y = v - x <= n
    const std::uint64_t lo = v > n ? v - n : 1;
    const std::uint64_t hi = (v - 1) / 2;
    for (std::uint64_t x = lo; x <= hi; ++x) {
      const std::uint32_t c = coloring.colors[x];
      if (c == 0 || coloring.colors[v - x] != c) continue;
      out.push_back({x, v - x, z, c});
      if (mode == SearchMode::first) return out;
    }
  }
  return out;
}

bool verify_solution(const SolutionTriple& s, const coloring::ColoringInstance& coloring,
                     const poly::IntPolynomial& psi, std::uint64_t b0, std::uint64_t W0) {
  if (s.x == s.y || s.x < 1 || s.y < 1 || s.x > coloring.n || s.y > coloring.n || s.z < 1) return false;
  const auto cx = coloring.color(s.x);
  if (cx == 0 || cx != coloring.color(s.y) || cx != s.color) return false;
  if (BigInt(s.x) + s.y != psi(BigInt(s.z))) return false;
  const BigInt witness = BigInt(W0) * s.z + b0;
  return witness <= std::numeric_limits<std::uint64_t>::max() && nt::is_prime_u64(to_u64(witness));
}

std::string solutions_csv(const std::vector<SolutionTriple>& solutions) {
  std::ostringstream out;
  out << "color,x,y,z\n";
  for (const auto& s : solutions) out << s.color << ',' << s.x << ',' << s.y << ',' << s.z << '\n';
  return out.str();
}

SolutionTriple lift_solution(std::uint64_t xp, std::uint64_t yp, std::uint64_t zp, const wtrick::WTrickContext& ctx,
                             const coloring::ColoringInstance* coloring) {
  const std::uint64_t N = ctx.N;
  const BigInt target = ctx.psi_bW(BigInt(zp));
  const BigInt sum = BigInt(xp) + yp;
  const BigInt gap = target - sum;
  if (gap % N != 0)
    throw Error(ErrorKind::domain, "x'+y' is not congruent to psi_{b,W}(z') modulo N");
  if (gap != 0) {
    // the divisibility argument: K | x'+y', K | psi_{b,W}(z'), gcd(N, K) = 1 force l = 0
    const bool k_sum = sum % ctx.K == 0;
    const bool k_target = target % ctx.K == 0;
    throw Error(ErrorKind::lifting, "psi_{b,W}(z') - x' - y' = " + BigInt(gap / N).str() + "*N; K | x'+y': " +
                                        (k_sum ? "yes" : "no") + ", K | psi_{b,W}(z'): " +
                                        (k_target ? "yes" : "no"));
  }

  const BigInt half = ctx.psi_at_b() / 2;
  const BigInt x = BigInt(ctx.W) * xp + half;
  const BigInt y = BigInt(ctx.W) * yp + half;
  const BigInt z = BigInt(ctx.W) * zp + ctx.b;
  if (x + y != ctx.psi(z)) throw Error(ErrorKind::lifting, "lifted triple breaks x + y = psi(z)");
  const BigInt witness = BigInt(ctx.W0) * z + ctx.b0;
  if (witness > std::numeric_limits<std::uint64_t>::max() || !nt::is_prime_u64(to_u64(witness)))
    throw Error(ErrorKind::lifting, "W0 z + b0 = " + witness.str() + " is not prime");
  if (x == y) throw Error(ErrorKind::lifting, "lifted x and y coincide");

  SolutionTriple s{to_u64(x), to_u64(y), to_u64(z), 0};
  if (s.x > s.y) std::swap(s.x, s.y);
  if (coloring) {
    const auto c = coloring->color(s.x);
    if (c == 0 || c != coloring->color(s.y))
      throw Error(ErrorKind::lifting, "lifted x and y are not in one color class");
    s.color = c;
  }
  return s;
}

TransferenceReport transference_report(const wtrick::WTrickContext& ctx, const coloring::TransferredSet& t,
                                       const coloring::ColoringInstance& coloring,
                                       const TransferenceOptions& options) {
  const std::uint64_t N = ctx.N;
  const double Nd = static_cast<double>(N);
  const double kappa = ctx.kappa();
  const double rho = rho_for(ctx.psi);
  const double eps = boost::rational_cast<double>(options.epsilon);

  TransferenceReport r;
  r.variant = ctx.variant;
  r.N = N;
  r.K = ctx.K;
  r.W = ctx.W;
  r.kappa = kappa;
  r.color = t.color;
  r.eta = options.eta;
  r.epsilon = rational_text(options.epsilon);

  const auto A = normalized_set(t.A, N);
  r.size_A = A.size();

  const auto measure = spectral::build_poly_prime_measure(ctx);
  const DensityFunction& frak = measure.density;
  r.measure_mass = frak.mass().real();
  r.measure_support = measure.support.size();
  r.max_nontrivial = spectral::max_nontrivial_coefficient(frak).first;

  const auto R = spectral::large_spectrum(frak, options.eta);
  const auto bohr = spectral::bohr_set(R, options.epsilon, N, options.eta);
  const DensityFunction frak_s = spectral::smooth(frak, bohr);
  r.large_spectrum_size = R.size();
  r.bohr_size = bohr.size();
  r.bohr_bound = spectral::bohr_bound_holds(bohr.size(), R.size(), options.epsilon, N);
  r.max_smoothed = max_real(frak_s);
  r.smoothed_cap = (1.0 + 2.0 * kappa) / Nd;
  r.smoothed_within_cap = r.max_smoothed <= r.smoothed_cap;
  const auto U = level_set(frak_s, kappa / Nd);
  r.size_U = U.size();
  r.U_floor = (1.0 - 3.0 * kappa) * Nd;
  r.U_meets_floor = static_cast<double>(U.size()) >= r.U_floor;

  const DensityFunction indicator = DensityFunction::indicator(N, A);
  double diag_indicator = 0;
  for (auto x : A) diag_indicator += frak[(2 * x) % N].real();
  const double count_A = triple_count(indicator, indicator, frak).real();
  const double model = options.eta;

  if (ctx.variant == poly::Variant::integer_coloring) {
    r.raw_count = count_A;
    r.diagonal_exact = diag_indicator;
    r.distinct_count = count_A - diag_indicator;
    r.diagonal_corrected = count_A - r.measure_mass;
    r.smoothed_count = triple_count(indicator, indicator, frak_s).real();
    r.count_difference = r.raw_count - r.smoothed_count;

    r.nu0 = popularity_at(A, U, N, 0);
    const auto m4 = popularity_m4(A.size(), U.size(), N);
    r.nu_bound = m4 > 0 ? std::pow(static_cast<double>(m4) / 4.0, 3) / Nd : 0.0;
    r.nu_bound_holds = cube_bound(r.nu0, m4, N);
    r.lower_bound_target = std::pow(kappa, 4) * Nd / 3.0;
    r.lower_bound_value = r.diagonal_corrected;
    r.lower_bound_met = r.lower_bound_value >= r.lower_bound_target;
    const double scale = static_cast<double>(ctx.K) *
                         (eps * eps * std::pow(model, -rho) + std::pow(model, 1.0 / (rho + 1.0))) * Nd;
    r.empirical_C = scale > 0 && std::isfinite(scale) ? std::abs(r.count_difference) / scale : 0.0;
  } else {
    const DensityFunction a = spectral::build_prime_coloring_measure(A, ctx);
    r.a_mass = a.mass().real();
    r.a_mass_floor = 1.0 / (3.0 * static_cast<double>(coloring.m) * static_cast<double>(ctx.K));
    const auto Ra = spectral::large_spectrum(a, options.eta);
    const auto bohr_a = spectral::bohr_set(Ra, options.epsilon, N, options.eta);
    const DensityFunction a_s = spectral::smooth(a, bohr_a);
    r.a_large_spectrum_size = Ra.size();
    r.a_bohr_size = bohr_a.size();
    r.max_a_smoothed = max_real(a_s);
    r.a_smoothed_cap = 2.0 / Nd;
    r.a_smoothed_within_cap = r.max_a_smoothed <= r.a_smoothed_cap;
    const auto A_prime = level_set(a_s, kappa / Nd);
    r.size_A_prime = A_prime.size();
    r.A_prime_floor = 2.0 * kappa * Nd;
    r.A_prime_meets_floor = static_cast<double>(A_prime.size()) >= r.A_prime_floor;

    r.raw_count = triple_count(a, a, frak).real();
    double diag = 0;
    for (auto x : A) diag += a[x].real() * a[x].real() * frak[(2 * x) % N].real();
    r.diagonal_exact = diag;
    r.distinct_count = r.raw_count - diag;
    const double KW = static_cast<double>(ctx.K) * static_cast<double>(ctx.W);
    const double phi = static_cast<double>(nt::euler_phi(static_cast<std::int64_t>(ctx.K * ctx.W)));
    const double lg = std::log(KW * Nd + to_double(ctx.psi_at_b()));
    const double weight = phi * phi * lg * lg / (KW * KW * Nd * Nd);
    r.diagonal_corrected = weight * (count_A - r.measure_mass);
    r.smoothed_count = triple_count(a_s, a_s, frak_s).real();
    r.count_difference = r.raw_count - r.smoothed_count;

    r.nu0 = popularity_at(A_prime, U, N, 0);
    const auto m4 = popularity_m4(A_prime.size(), U.size(), N);
    r.nu_bound = m4 > 0 ? std::pow(static_cast<double>(m4) / 4.0, 3) / Nd : 0.0;
    r.nu_bound_holds = cube_bound(r.nu0, m4, N);
    r.lower_bound_target = std::pow(kappa, 6) / (3.0 * Nd);
    r.lower_bound_value = r.diagonal_corrected;
    r.lower_bound_met = r.lower_bound_value >= r.lower_bound_target;
    const double scale = std::pow(static_cast<double>(ctx.K), 1.0 / (rho + 1.0)) *
                         (eps * eps * std::pow(model, -rho) + std::pow(model, 1.0 / (rho + 1.0))) / Nd;
    r.empirical_C = scale > 0 && std::isfinite(scale) ? std::abs(r.count_difference) / scale : 0.0;
  }

  // Z_N solutions x' + y' = psi_{b,W}(z') with x' < y' in A and their lifts
  r.lifting_hypothesis = ctx.k_divides_w();
  std::vector<char> inA(N, 0);
  for (auto x : A) inA[x] = 1;
  for (const auto& pt : measure.support) {
    for (auto xp : A) {
      const std::uint64_t yp = (pt.x + N - xp) % N;
      if (yp <= xp || !inA[yp]) continue;
      ++r.zn_solutions;
      try {
        const auto s = lift_solution(xp, yp, pt.z, ctx, &coloring);
        if (r.lifted.size() < options.max_listed_solutions) r.lifted.push_back(s);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::lifting) throw;
        ++r.lifting_failures;
      }
    }
  }
  return r;
}

std::string TransferenceReport::to_json() const {
  json j;
  j["variant"] = std::string(poly::to_string(variant));
  j["N"] = std::to_string(N);
  j["K"] = std::to_string(K);
  j["W"] = std::to_string(W);
  j["kappa"] = kappa;
  j["color"] = std::to_string(color);
  j["size_A"] = std::to_string(size_A);
  j["measure"] = {{"mass", measure_mass},
                  {"support", std::to_string(measure_support)},
                  {"max_nontrivial_coefficient", max_nontrivial}};
  j["counts"] = {{"raw", raw_count},
                 {"diagonal_exact", diagonal_exact},
                 {"distinct", distinct_count},
                 {"diagonal_corrected", diagonal_corrected},
                 {"smoothed", smoothed_count},
                 {"difference", count_difference},
                 {"empirical_constant", empirical_C}};
  j["smoothing"] = {{"eta", eta},
                    {"epsilon", epsilon},
                    {"large_spectrum_size", std::to_string(large_spectrum_size)},
                    {"bohr_size", std::to_string(bohr_size)},
                    {"bohr_bound_holds", bohr_bound},
                    {"max_smoothed", max_smoothed},
                    {"smoothed_cap", smoothed_cap},
                    {"smoothed_within_cap", smoothed_within_cap}};
  j["popular_set"] = {{"size", std::to_string(size_U)},
                      {"floor", U_floor},
                      {"meets_floor", U_meets_floor},
                      {"nu0", std::to_string(nu0)},
                      {"nu_bound", nu_bound},
                      {"nu_bound_holds", nu_bound_holds}};
  j["lower_bound"] = {{"target", lower_bound_target}, {"value", lower_bound_value}, {"met", lower_bound_met}};
  if (variant == poly::Variant::prime_coloring) {
    j["prime_measure"] = {{"mass", a_mass},
                          {"mass_floor", a_mass_floor},
                          {"large_spectrum_size", std::to_string(a_large_spectrum_size)},
                          {"bohr_size", std::to_string(a_bohr_size)},
                          {"max_smoothed", max_a_smoothed},
                          {"smoothed_cap", a_smoothed_cap},
                          {"smoothed_within_cap", a_smoothed_within_cap},
                          {"size_A_prime", std::to_string(size_A_prime)},
                          {"A_prime_floor", A_prime_floor},
                          {"A_prime_meets_floor", A_prime_meets_floor}};
  }
  json lifted_list = json::array();
  for (const auto& s : lifted)
    lifted_list.push_back({{"x", std::to_string(s.x)},
                           {"y", std::to_string(s.y)},
                           {"z", std::to_string(s.z)},
                           {"color", std::to_string(s.color)}});
  j["lifting"] = {{"zn_solutions", std::to_string(zn_solutions)},
                  {"failures", std::to_string(lifting_failures)},
                  {"k_divides_w", lifting_hypothesis},
                  {"lifted", lifted_list}};
  return j.dump(2);
}

}  // namespace primepoly::counting
