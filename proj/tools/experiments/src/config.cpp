#include <charconv>
#include <sstream>

#include <json.hpp>

#include "primepoly/errors.hpp"
#include "primepoly/experiments.hpp"
#include "primepoly/version.hpp"

namespace primepoly::experiments {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty())
    throw Error(ErrorKind::parse, key + ": expected a non-negative integer, got '" + v + "'");
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used == v.size()) return d;
  } catch (const std::exception&) {
  }
  throw Error(ErrorKind::parse, key + ": expected a number, got '" + v + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  return out;
}

std::string rational_text(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace

std::map<std::uint64_t, unsigned> ExperimentConfig::effective_w_config() const {
  return w_config.empty() ? wtrick::uniform_w_config(w, w_exponent) : w_config;
}

coloring::Domain ExperimentConfig::effective_domain() const {
  if (domain) return *domain;
  return variant == poly::Variant::prime_coloring ? coloring::Domain::primes : coloring::Domain::integers;
}

coloring::ColoringRule ExperimentConfig::effective_rule() const {
  return rule ? coloring::parse_rule(*rule) : coloring::ColoringRule::random(seed);
}

void set_config_value(ExperimentConfig& c, const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  if (key == "subcommand") {
    c.subcommand = v;
  } else if (key == "psi") {
    c.psi = poly::parse_polynomial(v);
  } else if (key == "b0") {
    c.b0 = to_u64(key, v);
  } else if (key == "W0") {
    c.W0 = to_u64(key, v);
  } else if (key == "m") {
    c.m = to_u64(key, v);
  } else if (key == "variant") {
    c.variant = poly::parse_variant(v);
  } else if (key == "w") {
    c.w = to_u64(key, v);
  } else if (key == "w_exponent") {
    c.w_exponent = static_cast<unsigned>(to_u64(key, v));
  } else if (key == "w_config") {
    c.w_config.clear();
    if (!v.empty())
      for (const auto& item : split(v, ',')) {
        const auto parts = split(item, ':');
        if (parts.size() != 2) throw Error(ErrorKind::parse, "w_config: expected p:e pairs, got '" + item + "'");
        c.w_config[to_u64(key, parts[0])] = static_cast<unsigned>(to_u64(key, parts[1]));
      }
  } else if (key == "n") {
    c.n = to_u64(key, v);
  } else if (key == "eta") {
    c.eta = spectral::parse_rational(v);
  } else if (key == "eps") {
    c.eps = spectral::parse_rational(v);
  } else if (key == "rho") {
    c.rho.clear();
    for (const auto& item : split(v, ',')) c.rho.push_back(to_double(key, item));
  } else if (key == "arc_B") {
    c.arc_B = to_double(key, v);
  } else if (key == "seed") {
    c.seed = to_u64(key, v);
  } else if (key == "p") {
    c.p = to_u64(key, v);
  } else if (key == "domain") {
    c.domain = coloring::parse_domain(v);
  } else if (key == "rule") {
    coloring::parse_rule(v);
    c.rule = v;
  } else if (key == "coloring") {
    c.coloring_path = v;
  } else if (key == "out") {
    c.out_dir = v;
  } else {
    throw Error(ErrorKind::parse, "unknown key '" + key + "'");
  }
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig c;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0, entries = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorKind::parse, "line " + std::to_string(line_no) + ": expected key = value");
    try {
      set_config_value(c, trim(line.substr(0, eq)), line.substr(eq + 1));
    } catch (const Error& e) {
      throw Error(ErrorKind::parse, "line " + std::to_string(line_no) + ": " + e.what());
    }
    ++entries;
  }
  if (entries == 0) throw Error(ErrorKind::usage, "configuration has no entries");
  return c;
}

std::string config_json(const ExperimentConfig& c) {
  nlohmann::ordered_json j;
  j["subcommand"] = c.subcommand;
  j["psi"] = c.psi.to_literal();
  j["b0"] = std::to_string(c.b0);
  j["W0"] = std::to_string(c.W0);
  j["m"] = std::to_string(c.m);
  j["variant"] = std::string(poly::to_string(c.variant));
  nlohmann::ordered_json w = nlohmann::ordered_json::object();
  for (auto [p, e] : c.effective_w_config()) w[std::to_string(p)] = std::to_string(e);
  j["w_config"] = w;
  j["n"] = std::to_string(c.n);
  j["eta"] = rational_text(c.eta);
  j["eps"] = rational_text(c.eps);
  j["rho"] = c.rho;
  j["arc_B"] = c.arc_B;
  j["seed"] = std::to_string(c.seed);
  j["p"] = std::to_string(c.p);
  j["domain"] = std::string(coloring::to_string(c.effective_domain()));
  j["rule"] = c.effective_rule().describe();
  j["coloring"] = c.coloring_path.value_or("");
  j["version"] = std::string(kVersion);
  return j.dump();
}

wtrick::WTrickContext build_context(const ExperimentConfig& c) {
  return wtrick::build_context(c.psi, c.b0, c.W0, c.m, c.variant, c.effective_w_config(), c.n);
}

}  // namespace primepoly::experiments
