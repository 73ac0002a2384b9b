#include "primepoly/coloring.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "primepoly/errors.hpp"
#include "primepoly/numtheory.hpp"

namespace primepoly::coloring {

namespace {

constexpr std::uint64_t kHardThresholdScale = 1'000'000;

std::vector<char> domain_mask(Domain domain, std::uint64_t n) {
  std::vector<char> mask(n + 1, 0);
  if (domain == Domain::integers) {
    for (std::uint64_t x = 1; x <= n; ++x) mask[x] = 1;
  } else if (n >= 2) {
    const auto table = nt::sieve_primes(n);
    for (auto p : table.primes()) mask[p] = 1;
  }
  return mask;
}

std::uint64_t parse_u64(const std::string& token, std::size_t line) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    if (token.empty() || token[0] == '-') throw std::invalid_argument(token);
    v = std::stoull(token, &used);
  } catch (const std::logic_error&) {
    used = 0;
  }
  if (used == 0 || used != token.size())
    throw Error(ErrorKind::parse, "line " + std::to_string(line) + ": expected a nonnegative integer, got '" +
                                      token + "'");
  return v;
}

// residue of the transferred window, with the bounds used by both dense-class searches
struct Window {
  std::uint64_t lo = 0;     // psi(W), clamped
  std::uint64_t shift = 0;  // psi(b)/2
  std::uint64_t modulus = 1;  // KW
};

Window window_of(const wtrick::WTrickContext& ctx) {
  Window w;
  const BigInt psiW = ctx.psi(BigInt(ctx.W));
  w.lo = psiW < 1 ? 1 : (psiW > ctx.n ? ctx.n + 1 : to_u64(psiW));
  w.shift = ctx.half_psi_b();
  const unsigned __int128 kw = static_cast<unsigned __int128>(ctx.K) * ctx.W;
  if (kw >> 63) throw Error(ErrorKind::scale, "KW exceeds 63 bits");
  w.modulus = static_cast<std::uint64_t>(kw);
  return w;
}

TransferredSet collect(const ColoringInstance& coloring, const wtrick::WTrickContext& ctx, std::uint32_t color,
                       const Window& w) {
  TransferredSet t;
  t.color = color;
  const std::uint64_t start_res = w.shift % w.modulus;
  // first x >= lo with x = shift (mod KW)
  std::uint64_t x = w.lo + (start_res + w.modulus - w.lo % w.modulus) % w.modulus;
  for (; x <= coloring.n; x += w.modulus) {
    if (coloring.color(x) != color) continue;
    t.sources.push_back(x);
    t.A.push_back((x - w.shift) / ctx.W);
  }
  return t;
}

}  // namespace

std::string_view to_string(Domain d) { return d == Domain::integers ? "integers" : "primes"; }

Domain parse_domain(std::string_view text) {
  if (text == "integers") return Domain::integers;
  if (text == "primes") return Domain::primes;
  throw Error(ErrorKind::parse, "unknown domain '" + std::string(text) + "'");
}

std::vector<std::uint64_t> ColoringInstance::members(std::uint32_t c) const {
  std::vector<std::uint64_t> out;
  for (std::uint64_t x = 1; x <= n; ++x)
    if (colors[x] == c) out.push_back(x);
  return out;
}

std::uint64_t ColoringInstance::domain_size() const {
  return static_cast<std::uint64_t>(std::count_if(colors.begin(), colors.end(), [](auto c) { return c != 0; }));
}

ColoringRule ColoringRule::random(std::uint64_t seed) {
  ColoringRule r;
  r.kind = Kind::random;
  r.seed = seed;
  return r;
}

ColoringRule ColoringRule::residue(std::uint64_t modulus) {
  ColoringRule r;
  r.kind = Kind::residue;
  r.modulus = modulus;
  return r;
}

ColoringRule ColoringRule::interval(std::vector<std::uint64_t> cuts) {
  ColoringRule r;
  r.kind = Kind::interval;
  r.cuts = std::move(cuts);
  return r;
}

std::string ColoringRule::describe() const {
  switch (kind) {
    case Kind::random:
      return "random(" + std::to_string(seed) + ")";
    case Kind::residue:
      return "residue(" + std::to_string(modulus) + ")";
    case Kind::interval: {
      std::string s = "interval(";
      for (std::size_t i = 0; i < cuts.size(); ++i) s += (i ? "," : "") + std::to_string(cuts[i]);
      return s + ")";
    }
  }
  return {};
}

ColoringRule parse_rule(std::string_view text) {
  const auto open = text.find('(');
  if (open == std::string_view::npos || text.back() != ')')
    throw Error(ErrorKind::parse, "coloring rule must look like name(args): '" + std::string(text) + "'");
  const std::string name(text.substr(0, open));
  const std::string args(text.substr(open + 1, text.size() - open - 2));
  std::vector<std::uint64_t> values;
  std::stringstream ss(args);
  for (std::string item; std::getline(ss, item, ',');) values.push_back(parse_u64(item, 1));
  if (name == "random" && values.size() == 1) return ColoringRule::random(values[0]);
  if (name == "residue" && values.size() == 1) return ColoringRule::residue(values[0]);
  if (name == "interval") return ColoringRule::interval(std::move(values));
  throw Error(ErrorKind::parse, "unknown coloring rule '" + std::string(text) + "'");
}

ColoringInstance make_coloring(Domain domain, std::uint64_t n, std::uint32_t m, const ColoringRule& rule) {
  if (m < 1) throw Error(ErrorKind::domain, "a coloring needs m >= 1");
  const auto mask = domain_mask(domain, n);
  if (std::find(mask.begin(), mask.end(), 1) == mask.end())
    throw Error(ErrorKind::domain, "empty coloring domain");

  ColoringInstance c;
  c.domain = domain;
  c.n = n;
  c.m = m;
  c.colors.assign(n + 1, 0);
  c.provenance = rule.describe();

  switch (rule.kind) {
    case ColoringRule::Kind::random: {
      std::mt19937_64 rng(rule.seed);
      std::uniform_int_distribution<std::uint32_t> pick(1, m);
      for (std::uint64_t x = 1; x <= n; ++x)
        if (mask[x]) c.colors[x] = pick(rng);
      break;
    }
    case ColoringRule::Kind::residue: {
      if (rule.modulus < 1) throw Error(ErrorKind::domain, "residue rule needs modulus >= 1");
      for (std::uint64_t x = 1; x <= n; ++x)
        if (mask[x]) c.colors[x] = static_cast<std::uint32_t>((x - 1) % rule.modulus % m + 1);
      break;
    }
    case ColoringRule::Kind::interval: {
      if (!std::is_sorted(rule.cuts.begin(), rule.cuts.end()) ||
          std::adjacent_find(rule.cuts.begin(), rule.cuts.end()) != rule.cuts.end())
        throw Error(ErrorKind::domain, "interval cuts must be strictly increasing");
      if (rule.cuts.size() >= m) throw Error(ErrorKind::domain, "interval rule has more pieces than colors");
      for (std::uint64_t x = 1; x <= n; ++x)
        if (mask[x]) {
          const auto below = std::lower_bound(rule.cuts.begin(), rule.cuts.end(), x) - rule.cuts.begin();
          c.colors[x] = static_cast<std::uint32_t>(below + 1);
        }
      break;
    }
  }
  return c;
}

BlockingThreshold blocking_threshold(const poly::IntPolynomial& psi, std::uint64_t b0, std::uint64_t W0,
                                     std::uint64_t p) {
  if (W0 == 0) throw Error(ErrorKind::domain, "W0 must be positive");
  const BigInt diff = BigInt(p) - BigInt(b0);
  BigInt q = diff / W0;
  if (diff < 0 && q * W0 != diff) q -= 1;  // floor
  return {psi(q), q * W0 == diff};
}

ColoringInstance blocking_partition(const poly::IntPolynomial& psi, std::uint64_t b0, std::uint64_t W0,
                                    std::uint64_t p, std::uint64_t n) {
  if (!nt::is_prime_u64(p)) throw Error(ErrorKind::domain, std::to_string(p) + " is not prime");
  if (const auto c = wtrick::check_cp(psi, b0, W0, p))
    throw Error(ErrorKind::inapplicable,
                "c_" + std::to_string(p) + "=" + std::to_string(*c) + " exists; the blocking partition needs it absent",
                p);
  if (n < 2) throw Error(ErrorKind::domain, "blocking partition needs n >= 2");

  const auto [T, exact] = blocking_threshold(psi, b0, W0, p);
  ColoringInstance c;
  c.domain = Domain::primes;
  c.n = n;
  c.m = static_cast<std::uint32_t>(3 * p);
  c.colors.assign(n + 1, 0);
  c.provenance = "blocking(p=" + std::to_string(p) + ",T=" + T.str() + (exact ? "" : ",floor") + ")";
  const auto table = nt::sieve_primes(n);
  for (auto x : table.primes()) {
    std::uint64_t j = x % p;
    if (j == 0) j = p;
    const BigInt X(x);
    if (2 * X <= T)
      c.colors[x] = static_cast<std::uint32_t>(j);
    else if (X > T)
      c.colors[x] = static_cast<std::uint32_t>(p + j);
    else
      c.colors[x] = static_cast<std::uint32_t>(2 * p + j);
  }
  return c;
}

TransferredSet dense_class(const ColoringInstance& coloring, const wtrick::WTrickContext& ctx) {
  if (coloring.n != ctx.n)
    throw Error(ErrorKind::domain, "coloring covers [1," + std::to_string(coloring.n) + "] but the context has n=" +
                                       std::to_string(ctx.n));
  const Window w = window_of(ctx);
  const BigInt psiW = ctx.psi(BigInt(ctx.W));
  // n/(mKW) > psi(W), compared exactly
  if (BigInt(ctx.n) <= psiW * coloring.m * w.modulus)
    throw Error(ErrorKind::scale, "n/(mKW) does not exceed psi(W)=" + psiW.str());

  std::vector<std::uint64_t> counts(coloring.m + 1, 0);
  const std::uint64_t start_res = w.shift % w.modulus;
  for (std::uint64_t x = w.lo + (start_res + w.modulus - w.lo % w.modulus) % w.modulus; x <= coloring.n;
       x += w.modulus)
    if (const auto c = coloring.color(x)) ++counts[c];

  std::uint32_t best = 1;
  for (std::uint32_t c = 2; c <= coloring.m; ++c)
    if (counts[c] > counts[best]) best = c;

  TransferredSet t = collect(coloring, ctx, best, w);
  t.class_counts = counts;
  for (auto v : counts) t.total += v;
  const BigInt lhs = BigInt(4) * coloring.m * ctx.K * t.A.size();
  if (lhs < ctx.N)
    throw Error(ErrorKind::scale, "densest class has " + std::to_string(t.A.size()) + " elements, below N/(4mK)");
  return t;
}

TransferredSet dense_prime_class(const ColoringInstance& coloring, const wtrick::WTrickContext& ctx) {
  if (coloring.n != ctx.n)
    throw Error(ErrorKind::domain, "coloring covers [1," + std::to_string(coloring.n) + "] but the context has n=" +
                                       std::to_string(ctx.n));
  const Window w = window_of(ctx);
  std::vector<double> sums(coloring.m + 1, 0.0);
  std::vector<std::uint64_t> counts(coloring.m + 1, 0);
  const std::uint64_t start_res = w.shift % w.modulus;
  for (std::uint64_t x = w.lo + (start_res + w.modulus - w.lo % w.modulus) % w.modulus; x <= coloring.n;
       x += w.modulus)
    if (const auto c = coloring.color(x); c != 0 && nt::is_prime_u64(x)) {
      sums[c] += std::log(static_cast<double>(x));
      ++counts[c];
    }

  std::uint32_t best = 1;
  for (std::uint32_t c = 2; c <= coloring.m; ++c)
    if (sums[c] > sums[best]) best = c;

  TransferredSet t = collect(coloring, ctx, best, w);
  t.class_counts = counts;
  for (auto v : counts) t.total += v;
  t.class_log_sums = sums;
  t.threshold = (1.0 - ctx.kappa()) * static_cast<double>(ctx.n) /
                (static_cast<double>(coloring.m) *
                 static_cast<double>(nt::euler_phi(static_cast<std::int64_t>(w.modulus))));
  t.threshold_met = sums[best] >= t.threshold;
  if (!t.threshold_met && ctx.n >= kHardThresholdScale)
    throw Error(ErrorKind::scale, "largest weighted class sum " + std::to_string(sums[best]) +
                                      " is below the threshold " + std::to_string(t.threshold));
  return t;
}

bool verify_transferred_set(const TransferredSet& t, const ColoringInstance& coloring,
                            const wtrick::WTrickContext& ctx) {
  if (t.sources.size() != t.A.size()) return false;
  const BigInt psiW = ctx.psi(BigInt(ctx.W));
  const std::uint64_t shift = ctx.half_psi_b();
  const std::uint64_t KW = ctx.K * ctx.W;
  for (std::size_t i = 0; i < t.A.size(); ++i) {
    const std::uint64_t x = t.sources[i];
    if (coloring.color(x) != t.color || x > coloring.n || BigInt(x) < psiW) return false;
    if (x < shift || (x - shift) % KW != 0) return false;
    if (t.A[i] * ctx.W + shift != x || t.A[i] >= ctx.N) return false;
  }
  return std::is_sorted(t.sources.begin(), t.sources.end());
}

std::string write_coloring(const ColoringInstance& c) {
  std::ostringstream out;
  out << to_string(c.domain) << ' ' << c.n << ' ' << c.m << ' ' << (c.provenance.empty() ? "-" : c.provenance)
      << '\n';
  for (std::uint64_t x = 1; x <= c.n; ++x)
    if (c.colors[x]) out << x << ' ' << c.colors[x] << '\n';
  return out.str();
}

ColoringInstance read_coloring(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  ColoringInstance c;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos || line[line.find_first_not_of(" \t")] == '#') continue;
    std::istringstream fields(line);
    std::vector<std::string> tok;
    for (std::string s; fields >> s;) tok.push_back(s);
    if (!header) {
      if (tok.size() != 4)
        throw Error(ErrorKind::parse, "line " + std::to_string(line_no) + ": header must be 'domain n m rule'");
      try {
        c.domain = parse_domain(tok[0]);
      } catch (const Error&) {
        throw Error(ErrorKind::parse, "line " + std::to_string(line_no) + ": unknown domain '" + tok[0] + "'");
      }
      c.n = parse_u64(tok[1], line_no);
      const std::uint64_t m = parse_u64(tok[2], line_no);
      if (m < 1 || m > 0xffffffffu)
        throw Error(ErrorKind::parse, "line " + std::to_string(line_no) + ": color count out of range");
      c.m = static_cast<std::uint32_t>(m);
      c.provenance = tok[3];
      if (c.n > 500'000'000)
        throw Error(ErrorKind::parse, "line " + std::to_string(line_no) + ": n too large");
      c.colors.assign(c.n + 1, 0);
      header = true;
      continue;
    }
    if (tok.size() != 2)
      throw Error(ErrorKind::parse, "line " + std::to_string(line_no) + ": expected 'element color'");
    const std::uint64_t x = parse_u64(tok[0], line_no);
    const std::uint64_t col = parse_u64(tok[1], line_no);
    if (x < 1 || x > c.n)
      throw Error(ErrorKind::parse, "line " + std::to_string(line_no) + ": element " + tok[0] + " outside [1,n]");
    if (col < 1 || col > c.m)
      throw Error(ErrorKind::parse, "line " + std::to_string(line_no) + ": color " + tok[1] + " outside [1,m]");
    if (c.colors[x] != 0)
      throw Error(ErrorKind::parse, "line " + std::to_string(line_no) + ": element " + tok[0] + " colored twice");
    c.colors[x] = static_cast<std::uint32_t>(col);
  }
  if (!header) throw Error(ErrorKind::parse, "line 1: missing header");
  const auto mask = domain_mask(c.domain, c.n);
  for (std::uint64_t x = 1; x <= c.n; ++x) {
    if (mask[x] && c.colors[x] == 0)
      throw Error(ErrorKind::parse, "line " + std::to_string(line_no) + ": element " + std::to_string(x) +
                                        " of the domain has no color");
    if (!mask[x] && c.colors[x] != 0)
      throw Error(ErrorKind::parse, "element " + std::to_string(x) + " is not in the " +
                                        std::string(to_string(c.domain)) + " domain");
  }
  return c;
}

}  // namespace primepoly::coloring
