#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <random>
#include <sstream>

#include <json.hpp>

#include "primepoly/arcs.hpp"
#include "primepoly/counting.hpp"
#include "primepoly/errors.hpp"
#include "primepoly/experiments.hpp"
#include "primepoly/numtheory.hpp"
#include "primepoly/version.hpp"

namespace primepoly::experiments {

namespace {

using json = nlohmann::ordered_json;
using spectral::Complex;
using spectral::DensityFunction;

struct Check {
  std::string name;
  bool passed = false;
  std::string value;
};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json header(const ExperimentConfig& config) {
  json j;
  j["version"] = std::string(kVersion);
  j["config"] = json::parse(config_json(config));
  return j;
}

std::string values_csv(const std::vector<Complex>& v) {
  std::string out = "index,re,im\n";
  for (std::size_t i = 0; i < v.size(); ++i) out += std::to_string(i) + "," + num(v[i].real()) + "," + num(v[i].imag()) + "\n";
  return out;
}

/// Runs a block of checks, turning any library error into a failed check.
std::vector<Check> guarded(const std::string& name, const std::function<std::vector<Check>()>& body) {
  try {
    return body();
  } catch (const Error& e) {
    return {{name, false, std::string(to_string(e.kind())) + ": " + e.what()}};
  } catch (const std::exception& e) {
    return {{name, false, e.what()}};
  }
}

std::vector<Check> numtheory_checks(std::uint64_t seed) {
  std::vector<Check> out;
  const auto table = nt::sieve_primes(100'000);
  std::uint64_t bad = 0;
  for (std::uint64_t x = 0; x <= 100'000; ++x) bad += table.is_prime(x) != nt::is_prime_u64(x);
  out.push_back({"numtheory.sieve_vs_miller_rabin", bad == 0, std::to_string(bad) + " disagreements"});

  std::mt19937_64 rng(seed);
  bad = 0;
  const std::uint64_t moduli[] = {8, 9, 25, 7, 11};
  for (int t = 0; t < 100; ++t) {
    std::vector<nt::Congruence> cs;
    for (auto m : moduli) cs.push_back({BigInt(rng() % m), BigInt(m)});
    const auto r = nt::crt(cs);
    for (const auto& c : cs) bad += (r.residue - c.residue) % c.modulus != 0;
  }
  out.push_back({"numtheory.crt_consistency", bad == 0, std::to_string(bad) + " violations"});
  return out;
}

std::vector<Check> polynomial_checks(const wtrick::WTrickContext& ctx) {
  std::uint64_t bad = 0;
  const BigInt W(ctx.W), b(ctx.b);
  for (std::int64_t x = -50; x <= 50; ++x)
    bad += W * ctx.psi_bW(BigInt(x)) != ctx.psi(W * x + b) - ctx.psi(b);
  bad += ctx.psi_bW.poly.coefficient(0) != 0;
  bad += ctx.psi_bW.poly.coefficient(1) != ctx.psi.derivative()(b);
  return {{"polynomial.rescale_identity", bad == 0, std::to_string(bad) + " violations"}};
}

std::vector<Check> wtrick_checks(const wtrick::WTrickContext& ctx) {
  std::vector<Check> out;
  for (const auto& inv : wtrick::context_invariants(ctx)) out.push_back({"wtrick." + inv.name, inv.passed, inv.detail});
  const auto g = wtrick::verify_gcd_identity(ctx);
  out.push_back({"wtrick.gcd_identity", g != wtrick::GcdIdentity::fails, std::string(wtrick::to_string(g))});
  return out;
}

std::vector<Check> spectral_checks(const wtrick::WTrickContext& ctx, std::uint64_t seed) {
  std::vector<Check> out;
  const auto m = spectral::build_poly_prime_measure(ctx);
  out.push_back({"spectral.measure_well_defined", true,
                 std::to_string(m.checked_arguments) + " arguments, mass " + num(m.density.mass().real())});

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1, 1);
  const std::uint64_t N = ctx.N <= 20'011 ? ctx.N : 2003;
  std::vector<Complex> f(N);
  for (auto& v : f) v = {u(rng), u(rng)};
  const double err = spectral::relative_max_error(spectral::dft_chirp(f), spectral::dft_direct(f));
  out.push_back({"spectral.direct_vs_chirp", err <= 1e-9, "N=" + std::to_string(N) + " error " + num(err)});

  std::uint64_t bad = 0;
  for (int t = 0; t < 50; ++t) {
    const std::uint64_t n = 3 + rng() % 300;
    std::vector<std::uint64_t> R;
    const std::size_t k = 1 + rng() % 3;
    for (std::size_t i = 0; i < k; ++i) R.push_back(rng() % n);
    const spectral::Rational eps(1 + static_cast<std::int64_t>(rng() % 9), 20);
    const auto B = spectral::bohr_set(R, eps, n);
    bad += !spectral::bohr_bound_holds(B.size(), R.size(), eps, n);
  }
  out.push_back({"spectral.bohr_bound", bad == 0, std::to_string(bad) + " violations"});
  return out;
}

std::vector<Check> arcs_checks(const wtrick::WTrickContext& ctx, double B, std::uint64_t seed) {
  std::vector<Check> out;
  if (wtrick::verify_gcd_identity(ctx) == wtrick::GcdIdentity::holds) {
    double worst = 0;
    for (std::uint64_t q = 1; q <= 64; ++q) {
      if (ctx.W % q) continue;
      const double expected = ctx.K % q == 0 ? static_cast<double>(q) : 0.0;
      for (std::uint64_t a = 1; a <= q; ++a)
        if (nt::gcd_u64(a, q) == 1)
          worst = std::max(worst, std::abs(spectral::complete_gauss_sum(ctx, a, q) - Complex(expected)) / q);
    }
    out.push_back({"arcs.gauss_dichotomy", worst <= 1e-6, "max relative deviation " + num(worst)});
  } else {
    out.push_back({"arcs.gauss_dichotomy", true, "skipped: gcd identity not established"});
  }

  const auto arcs = spectral::make_arcs(50, 400.0L, B);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<long double> u(0, 1);
  std::uint64_t bad = 0;
  const std::uint64_t limit = std::min<std::uint64_t>(arcs.Q, 200);
  if (arcs.Q <= 200) {
    for (int i = 0; i < 200; ++i) {
      const long double alpha = u(rng);
      const auto a = spectral::classify_arc(alpha, arcs);
      const auto b = spectral::classify_arc_exhaustive(alpha, arcs, limit);
      bad += a.major != b.major || a.q != b.q || a.a != b.a;
    }
    out.push_back({"arcs.convergent_vs_exhaustive", bad == 0, std::to_string(bad) + " disagreements"});
  } else {
    out.push_back({"arcs.convergent_vs_exhaustive", true, "skipped: Q above 200"});
  }
  return out;
}

std::vector<Check> counting_checks(const wtrick::WTrickContext& ctx, const ExperimentConfig& config) {
  std::vector<Check> out;
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> u(-1, 1);
  double worst = 0;
  for (int t = 0; t < 50; ++t) {
    const std::uint64_t N = 2 + rng() % 127;
    std::vector<Complex> f(N), g(N), h(N);
    for (std::uint64_t i = 0; i < N; ++i) f[i] = {u(rng), u(rng)}, g[i] = {u(rng), u(rng)}, h[i] = {u(rng), u(rng)};
    const DensityFunction F(f), G(g), H(h);
    const auto brute = counting::triple_count_bruteforce(F, G, H);
    worst = std::max(worst, std::abs(counting::triple_count_fourier(F, G, H) - brute) / std::max(1.0, std::abs(brute)));
  }
  out.push_back({"counting.fourier_vs_brute", worst <= 1e-6, "max relative error " + num(worst)});

  std::uint64_t bad = 0;
  for (int t = 0; t < 30; ++t) {
    const std::uint64_t N = 3 + rng() % 80;
    std::vector<std::uint64_t> A, U;
    for (std::uint64_t x = 0; x < N; ++x) {
      if (rng() % 3) A.push_back(x);
      if (rng() % 2) U.push_back(x);
    }
    bad += !counting::popularity(A, U, N).bound_holds_everywhere();
  }
  out.push_back({"counting.popularity_bound", bad == 0, std::to_string(bad) + " violations"});

  if (ctx.variant == poly::Variant::integer_coloring) {
    const auto c = coloring::make_coloring(coloring::Domain::integers, ctx.n, static_cast<std::uint32_t>(ctx.m),
                                           coloring::ColoringRule::random(config.seed));
    try {
      const auto t = coloring::dense_class(c, ctx);
      counting::TransferenceOptions opt;
      opt.eta = boost::rational_cast<double>(config.eta);
      opt.epsilon = config.eps;
      const auto r = counting::transference_report(ctx, t, c, opt);
      out.push_back({"counting.lifting", r.lifting_failures == 0 || !r.lifting_hypothesis,
                     std::to_string(r.zn_solutions) + " solutions in Z_N, " + std::to_string(r.lifting_failures) +
                         " failures"});
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::scale) throw;
      out.push_back({"counting.lifting", true, std::string("skipped: ") + e.what()});
    }
  }
  return out;
}

std::vector<Check> coloring_checks(std::uint64_t seed) {
  std::vector<Check> out;
  const auto psi = poly::parse_polynomial("[6,0,0]");
  const auto c = coloring::blocking_partition(psi, 1, 1, 3, 2000);
  const auto sols = counting::find_monochromatic(c, psi, 1, 1, counting::SearchMode::first);
  out.push_back({"coloring.blocking_partition_empty", sols.empty(), std::to_string(sols.size()) + " solutions"});
  const auto r = coloring::make_coloring(coloring::Domain::primes, 500, 3, coloring::ColoringRule::random(seed));
  out.push_back({"coloring.file_round_trip", coloring::read_coloring(coloring::write_coloring(r)) == r, ""});
  return out;
}

coloring::ColoringInstance load_coloring(const ExperimentConfig& config) {
  if (!config.coloring_path) {
    return coloring::make_coloring(config.effective_domain(), config.n, static_cast<std::uint32_t>(config.m),
                                   config.effective_rule());
  }
  std::ifstream in(*config.coloring_path);
  if (!in) throw Error(ErrorKind::usage, "cannot read coloring file " + *config.coloring_path);
  std::stringstream buf;
  buf << in.rdbuf();
  return coloring::read_coloring(buf.str());
}

json solution_json(const counting::SolutionTriple& s) {
  return json{{"x", std::to_string(s.x)}, {"y", std::to_string(s.y)}, {"z", std::to_string(s.z)},
              {"color", std::to_string(s.color)}};
}

}  // namespace

CommandResult cmd_verify(const ExperimentConfig& config, const VerifyHooks& hooks) {
  auto ctx = build_context(config);
  if (hooks.corrupt_context) hooks.corrupt_context(ctx);

  std::vector<std::future<std::vector<Check>>> jobs;
  auto launch = [&](std::string name, std::function<std::vector<Check>()> body) {
    jobs.push_back(std::async(std::launch::async, [name = std::move(name), body = std::move(body)] {
      return guarded(name, body);
    }));
  };
  launch("numtheory", [&] { return numtheory_checks(config.seed); });
  launch("polynomial", [&] { return polynomial_checks(ctx); });
  launch("wtrick", [&] { return wtrick_checks(ctx); });
  launch("spectral", [&] { return spectral_checks(ctx, config.seed); });
  launch("arcs", [&] { return arcs_checks(ctx, config.arc_B, config.seed); });
  launch("counting", [&] { return counting_checks(ctx, config); });
  launch("coloring", [&] { return coloring_checks(config.seed); });

  std::vector<Check> checks;
  for (auto& j : jobs)
    for (auto& c : j.get()) checks.push_back(std::move(c));

  json report = header(config);
  report["context"] = json::parse(wtrick::to_json(ctx));
  json list = json::array();
  std::size_t failed = 0;
  std::string first_failure;
  for (const auto& c : checks) {
    list.push_back({{"name", c.name}, {"passed", c.passed}, {"value", c.value}});
    if (!c.passed && failed++ == 0) first_failure = c.name;
  }
  report["invariants"] = list;
  report["passed"] = std::to_string(checks.size() - failed);
  report["failed"] = std::to_string(failed);
  report["status"] = failed == 0 ? "pass" : "fail";

  CommandResult r;
  r.exit_code = failed == 0 ? 0 : 1;
  r.report = report.dump(2);
  r.summary = failed == 0 ? "verify: all " + std::to_string(checks.size()) + " invariants pass"
                          : "verify: " + std::to_string(failed) + " failed, first: " + first_failure;
  return r;
}

CommandResult cmd_search(const ExperimentConfig& config) {
  const auto c = load_coloring(config);
  const auto sols = counting::find_monochromatic(c, config.psi, config.b0, config.W0);

  json report = header(config);
  report["coloring"] = {{"domain", std::string(coloring::to_string(c.domain))},
                        {"n", std::to_string(c.n)},
                        {"m", std::to_string(c.m)},
                        {"provenance", c.provenance}};
  report["status"] = sols.empty() ? "none-found" : "found";
  report["solutions"] = std::to_string(sols.size());
  if (!sols.empty()) report["first"] = solution_json(sols.front());

  CommandResult r;
  r.report = report.dump(2);
  r.files.push_back({"solutions.csv", counting::solutions_csv(sols)});
  r.summary = "search: " + std::string(sols.empty() ? "none-found" : "found") + " (" + std::to_string(sols.size()) +
              " solutions)";
  return r;
}

CommandResult cmd_counterexample(const ExperimentConfig& config) {
  const auto c = coloring::blocking_partition(config.psi, config.b0, config.W0, config.p, config.n);
  const auto threshold = coloring::blocking_threshold(config.psi, config.b0, config.W0, config.p);
  const auto sols = counting::find_monochromatic(c, config.psi, config.b0, config.W0);

  json classes = json::array();
  bool all_empty = true;
  for (std::uint32_t j = 1; j <= c.m; ++j) {
    const auto members = c.members(j);
    const bool empty =
        std::none_of(sols.begin(), sols.end(), [&](const counting::SolutionTriple& s) { return s.color == j; });
    all_empty = all_empty && empty;
    json cls;
    cls["class"] = std::to_string(j);
    cls["band"] = j <= config.p ? "2x<=T" : (j <= 2 * config.p ? "x>T" : "T/2<x<=T");
    cls["size"] = std::to_string(members.size());
    if (!members.empty()) {
      cls["min"] = std::to_string(members.front());
      cls["max"] = std::to_string(members.back());
    }
    if (members.size() >= 2) {
      cls["min_pair_sum"] = std::to_string(members[0] + members[1]);
      cls["max_pair_sum"] = std::to_string(members[members.size() - 1] + members[members.size() - 2]);
    }
    cls["empty"] = empty;
    classes.push_back(cls);
  }

  json report = header(config);
  report["T"] = threshold.T.str();
  report["T_exact_division"] = threshold.exact_division;
  report["primes"] = std::to_string(c.domain_size());
  report["classes"] = classes;
  report["solutions"] = std::to_string(sols.size());
  report["empty"] = all_empty;

  CommandResult r;
  r.exit_code = all_empty ? 0 : 1;
  r.report = report.dump(2);
  r.files.push_back({"partition.txt", coloring::write_coloring(c)});
  if (!sols.empty()) r.files.push_back({"solutions.csv", counting::solutions_csv(sols)});
  r.summary = "counterexample: " + std::to_string(c.m) + " classes, empty: " + (all_empty ? "true" : "false");
  return r;
}

CommandResult cmd_transfer(const ExperimentConfig& config) {
  const auto ctx = build_context(config);
  const auto c = coloring::make_coloring(config.effective_domain(), ctx.n, static_cast<std::uint32_t>(ctx.m),
                                         config.effective_rule());
  const auto t = ctx.variant == poly::Variant::integer_coloring ? coloring::dense_class(c, ctx)
                                                                 : coloring::dense_prime_class(c, ctx);
  counting::TransferenceOptions opt;
  opt.eta = boost::rational_cast<double>(config.eta);
  opt.epsilon = config.eps;
  const auto rep = counting::transference_report(ctx, t, c, opt);

  json report = header(config);
  report["context"] = json::parse(wtrick::to_json(ctx));
  json counts = json::array();
  for (std::size_t i = 1; i < t.class_counts.size(); ++i) counts.push_back(std::to_string(t.class_counts[i]));
  report["transferred"] = {{"color", std::to_string(t.color)},
                           {"size_A", std::to_string(t.A.size())},
                           {"class_counts", counts},
                           {"threshold", t.threshold},
                           {"threshold_met", t.threshold_met}};
  report["transference"] = json::parse(rep.to_json());

  CommandResult r;
  r.exit_code = rep.lifting_failures > 0 && rep.lifting_hypothesis ? 1 : 0;
  r.report = report.dump(2);
  r.files.push_back({"lifted.csv", counting::solutions_csv(rep.lifted)});
  r.summary = "transfer: N=" + std::to_string(ctx.N) + ", |A|=" + std::to_string(t.A.size()) + ", " +
              std::to_string(rep.zn_solutions) + " solutions, " + std::to_string(rep.lifting_failures) +
              " lifting failures" + (rep.lifting_hypothesis ? "" : " (K does not divide W)");
  return r;
}

CommandResult cmd_spectrum(const ExperimentConfig& config) {
  const auto ctx = build_context(config);
  const auto m = spectral::build_poly_prime_measure(ctx);
  const auto& coeffs = m.density.spectrum();
  const double mass = m.density.mass().real();
  const auto [max_coef, argmax] = spectral::max_nontrivial_coefficient(m.density);

  json norms = json::array();
  for (double rho : config.rho) {
    const double s = spectral::restriction_norm(m.density, rho);
    norms.push_back({{"rho", rho}, {"sum", s}, {"sum_over_K", s / static_cast<double>(ctx.K)}});
  }

  // Minor-arc decay on an evenly spaced sample of frequencies r/N.
  const auto arcs = spectral::make_arcs(ctx, config.arc_B);
  const std::uint64_t samples = std::min<std::uint64_t>(64, ctx.N - 1);
  const double prime_zero = std::abs(spectral::weighted_exp_sum(ctx, 0.0L, spectral::ExpSumForm::prime_weights));
  double poly_ratio = 0, prime_ratio = 0;
  std::uint64_t minor = 0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    const std::uint64_t r = 1 + i * (ctx.N - 1) / samples;
    const long double alpha = static_cast<long double>(r) / ctx.N;
    if (spectral::classify_arc(alpha, arcs).major) continue;
    ++minor;
    poly_ratio = std::max(poly_ratio, std::abs(coeffs[r]) / mass);
    prime_ratio = std::max(
        prime_ratio, std::abs(spectral::weighted_exp_sum(ctx, alpha, spectral::ExpSumForm::prime_weights)) / prime_zero);
  }

  json report = header(config);
  report["context"] = json::parse(wtrick::to_json(ctx));
  report["measure"] = {{"N", std::to_string(ctx.N)},
                       {"M", std::to_string(ctx.M)},
                       {"normalization", m.normalization.str()},
                       {"support", std::to_string(m.support.size())},
                       {"mass", mass}};
  report["max_nontrivial"] = {{"value", max_coef}, {"frequency", std::to_string(argmax)}};
  report["large_spectrum_size"] =
      std::to_string(spectral::large_spectrum(m.density, boost::rational_cast<double>(config.eta)).size());
  report["restriction_norms"] = norms;
  report["arcs"] = {{"B", config.arc_B},
                    {"Q", std::to_string(arcs.Q)},
                    {"delta", static_cast<double>(arcs.delta)},
                    {"sampled", std::to_string(samples)},
                    {"minor", std::to_string(minor)},
                    {"minor_decay_measure", poly_ratio},
                    {"minor_decay_prime_sum", prime_ratio}};

  CommandResult r;
  r.report = report.dump(2);
  r.files.push_back({"measure.csv", values_csv(m.density.values())});
  r.files.push_back({"spectrum.csv", values_csv(coeffs)});
  r.summary = "spectrum: N=" + std::to_string(ctx.N) + ", mass " + num(mass) + ", max |a^(r)| " + num(max_coef);
  return r;
}

CommandResult run(const ExperimentConfig& config, const VerifyHooks& hooks) {
  if (config.subcommand == "verify") return cmd_verify(config, hooks);
  if (config.subcommand == "search") return cmd_search(config);
  if (config.subcommand == "counterexample") return cmd_counterexample(config);
  if (config.subcommand == "transfer") return cmd_transfer(config);
  if (config.subcommand == "spectrum") return cmd_spectrum(config);
  throw Error(ErrorKind::usage, "unknown subcommand '" + config.subcommand + "'");
}

void write_outputs(const ExperimentConfig& config, const CommandResult& result) {
  if (!config.out_dir) return;
  const std::filesystem::path dir(*config.out_dir);
  std::filesystem::create_directories(dir);
  auto put = [&](const std::string& name, const std::string& content) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw Error(ErrorKind::usage, "cannot write " + (dir / name).string());
    out << content;
  };
  put(config.subcommand + ".json", result.report + "\n");
  for (const auto& [name, content] : result.files) put(name, content);
}

}  // namespace primepoly::experiments
