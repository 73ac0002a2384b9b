#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "primepoly/errors.hpp"
#include "primepoly/experiments.hpp"
#include "primepoly/version.hpp"

using namespace primepoly;

namespace {

constexpr int kUsageExit = 2;
constexpr int kErrorExit = 3;

struct Flags {
  std::optional<std::string> config, out, eta, eps, rho, coloring, rule;
  std::optional<std::uint64_t> seed, n, w, p;
  std::optional<double> arc_B;
  std::optional<std::string> inject_fault;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "key = value configuration file");
  sub->add_option("--out", f.out, "output directory");
  sub->add_option("--seed", f.seed, "seed for every random choice");
  sub->add_option("--n", f.n, "range [1, n]");
  sub->add_option("--w", f.w, "W is the product of primes up to w");
  sub->add_option("--eta", f.eta, "large-spectrum threshold p/q");
  sub->add_option("--eps", f.eps, "Bohr radius p/q");
  sub->add_option("--rho", f.rho, "comma-separated restriction exponents");
  sub->add_option("--arc-B", f.arc_B, "major-arc exponent B");
}

experiments::ExperimentConfig assemble(const std::string& subcommand, const Flags& f) {
  experiments::ExperimentConfig c;
  if (f.config) {
    std::ifstream in(*f.config);
    if (!in) throw Error(ErrorKind::usage, "cannot read config " + *f.config);
    std::stringstream buf;
    buf << in.rdbuf();
    c = experiments::parse_config(buf.str());
  }
  c.subcommand = subcommand;
  auto set = [&](const char* key, const auto& v) {
    if (!v) return;
    std::ostringstream s;
    s << *v;
    experiments::set_config_value(c, key, s.str());
  };
  set("out", f.out);
  set("seed", f.seed);
  set("n", f.n);
  set("w", f.w);
  set("eta", f.eta);
  set("eps", f.eps);
  set("rho", f.rho);
  set("coloring", f.coloring);
  set("rule", f.rule);
  set("p", f.p);
  if (f.arc_B) c.arc_B = *f.arc_B;
  return c;
}

experiments::VerifyHooks hooks_for(const std::optional<std::string>& fault) {
  experiments::VerifyHooks h;
  if (!fault) return h;
  if (*fault == "K") {
    h.corrupt_context = [](wtrick::WTrickContext& ctx) { ctx.K += 1; };
  } else if (*fault == "N") {
    h.corrupt_context = [](wtrick::WTrickContext& ctx) { ctx.N += 1; };
  } else if (*fault == "b") {
    h.corrupt_context = [](wtrick::WTrickContext& ctx) { ctx.b += 1; };
  } else {
    throw Error(ErrorKind::usage, "unknown fault '" + *fault + "' (K, N or b)");
  }
  return h;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(kVersion) + ": monochromatic x + y = psi(z) experiments"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  Flags flags;
  const char* names[] = {"verify", "search", "counterexample", "transfer", "spectrum"};
  const char* help[] = {"run every invariant check", "search a coloring for monochromatic solutions",
                        "build and check the blocking partition", "run the transference pipeline",
                        "dump the measure and its spectrum"};
  std::vector<CLI::App*> subs;
  for (int i = 0; i < 5; ++i) {
    auto* sub = app.add_subcommand(names[i], help[i]);
    add_common(sub, flags);
    subs.push_back(sub);
  }
  subs[0]->add_option("--inject-fault", flags.inject_fault)->group("");
  subs[1]->add_option("--coloring", flags.coloring, "coloring file");
  subs[1]->add_option("--rule", flags.rule, "coloring rule when no file is given");
  subs[2]->add_option("--p", flags.p, "prime of the partition");
  subs[3]->add_option("--rule", flags.rule, "coloring rule");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageExit;
  }

  std::string subcommand;
  for (auto* s : subs)
    if (s->parsed()) subcommand = s->get_name();

  try {
    const auto config = assemble(subcommand, flags);
    const auto result = experiments::run(config, hooks_for(flags.inject_fault));
    if (config.out_dir) {
      experiments::write_outputs(config, result);
    } else if (subcommand == "search") {
      std::cout << result.files.front().second;
    } else {
      std::cout << result.report << "\n";
    }
    std::cerr << result.summary << "\n";
    return result.exit_code;
  } catch (const Error& e) {
    std::cerr << "error[" << to_string(e.kind()) << "]: " << e.what() << "\n";
    return e.kind() == ErrorKind::usage ? kUsageExit : kErrorExit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kErrorExit;
  }
}
