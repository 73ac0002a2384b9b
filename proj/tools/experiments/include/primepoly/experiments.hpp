#pragma once

// Batch orchestration on top of the core library: a key-value experiment
// configuration and the five commands behind the command-line tool. Every
// command returns its artifacts in memory; nothing touches the filesystem
// until the whole computation has succeeded.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "primepoly/coloring.hpp"
#include "primepoly/polynomial.hpp"
#include "primepoly/spectral.hpp"
#include "primepoly/wtrick.hpp"

namespace primepoly::experiments {

using spectral::Rational;

struct ExperimentConfig {
  std::string subcommand;
  poly::IntPolynomial psi = poly::parse_polynomial("[1,1,0]");
  std::uint64_t b0 = 1;
  std::uint64_t W0 = 2;
  std::uint64_t m = 2;
  poly::Variant variant = poly::Variant::integer_coloring;
  /// W = prod p^e over this map; when empty, every prime <= w with w_exponent.
  std::map<std::uint64_t, unsigned> w_config;
  std::uint64_t w = 3;
  unsigned w_exponent = 1;
  std::uint64_t n = 10'000;
  Rational eta{1, 5};
  Rational eps{1, 8};
  std::vector<double> rho{4, 64};
  double arc_B = 2;
  std::uint64_t seed = 1;
  std::uint64_t p = 3;                        ///< counterexample prime
  std::optional<coloring::Domain> domain;     ///< defaults from the variant
  std::optional<std::string> rule;            ///< defaults to random(seed)
  std::optional<std::string> coloring_path;   ///< search input
  std::optional<std::string> out_dir;

  std::map<std::uint64_t, unsigned> effective_w_config() const;
  coloring::Domain effective_domain() const;
  coloring::ColoringRule effective_rule() const;
};

/// "key = value" lines; '#' starts a comment. Unknown keys and bad values
/// raise ErrorKind::parse with the line number. A text with no entries is
/// ErrorKind::usage.
ExperimentConfig parse_config(const std::string& text);

/// Applies one "key = value" pair; shared by the file parser and the flags.
void set_config_value(ExperimentConfig& config, const std::string& key, const std::string& value);

/// The full configuration as JSON text (integers as decimal strings).
std::string config_json(const ExperimentConfig& config);

wtrick::WTrickContext build_context(const ExperimentConfig& config);

struct CommandResult {
  int exit_code = 0;
  std::string report;  ///< deterministic JSON
  std::vector<std::pair<std::string, std::string>> files;  ///< name -> content, written under out_dir
  std::string summary;  ///< one human-readable line
};

/// Test hook: mutates the context before verify evaluates it.
struct VerifyHooks {
  std::function<void(wtrick::WTrickContext&)> corrupt_context;
};

CommandResult cmd_verify(const ExperimentConfig& config, const VerifyHooks& hooks = {});
CommandResult cmd_search(const ExperimentConfig& config);
CommandResult cmd_counterexample(const ExperimentConfig& config);
CommandResult cmd_transfer(const ExperimentConfig& config);
CommandResult cmd_spectrum(const ExperimentConfig& config);

CommandResult run(const ExperimentConfig& config, const VerifyHooks& hooks = {});

/// Writes the report as <subcommand>.json plus every file into config.out_dir.
void write_outputs(const ExperimentConfig& config, const CommandResult& result);

}  // namespace primepoly::experiments
