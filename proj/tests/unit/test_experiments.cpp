#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "primepoly/errors.hpp"
#include "primepoly/experiments.hpp"

using namespace primepoly;
using namespace primepoly::experiments;

namespace {

Error error_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e;
  }
  FAIL("expected an Error");
  return Error(ErrorKind::internal, "");
}

ExperimentConfig with(const std::string& subcommand, const std::string& text = "") {
  auto c = text.empty() ? ExperimentConfig{} : parse_config(text);
  c.subcommand = subcommand;
  return c;
}

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("primepoly_test_" + name);
  std::filesystem::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("config parsing") {
  const auto c = parse_config("# demo\npsi = [6,0,0]\nb0 = 1\nW0 = 1\n\nw_config = 2:3, 3:1\neta = 1/4\nrho = 4, 8\n");
  CHECK(c.psi == poly::parse_polynomial("[6,0,0]"));
  CHECK(c.W0 == 1);
  CHECK(c.effective_w_config() == std::map<std::uint64_t, unsigned>{{2, 3}, {3, 1}});
  CHECK(c.eta == Rational(1, 4));
  CHECK(c.rho == std::vector<double>{4, 8});
  CHECK(ExperimentConfig{}.effective_w_config() == std::map<std::uint64_t, unsigned>{{2, 1}, {3, 1}});

  const auto e = error_of([] { parse_config("n = 10\ncolour = 3\n"); });
  CHECK(e.kind() == ErrorKind::parse);
  CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  CHECK(error_of([] { parse_config("n = ten\n"); }).kind() == ErrorKind::parse);
  CHECK(error_of([] { parse_config("eps = 1/0\n"); }).kind() == ErrorKind::parse);
  CHECK(error_of([] { parse_config("just words\n"); }).kind() == ErrorKind::parse);
  CHECK(error_of([] { parse_config("# only comments\n\n"); }).kind() == ErrorKind::usage);
  CHECK(error_of([] { parse_config(""); }).kind() == ErrorKind::usage);
}

TEST_CASE("config is echoed with the version") {
  const auto j = config_json(with("verify"));
  CHECK(j.find("\"version\":\"primepoly 0.1.0\"") != std::string::npos);
  CHECK(j.find("\"psi\":\"[1,1,0]\"") != std::string::npos);
  CHECK(j.find("\"n\":\"10000\"") != std::string::npos);
}

TEST_CASE("verify passes on the default configuration") {
  const auto r = cmd_verify(with("verify"));
  CHECK(r.exit_code == 0);
  CHECK(r.report.find("\"status\": \"pass\"") != std::string::npos);
  CHECK(r.report.find("\"version\": \"primepoly 0.1.0\"") != std::string::npos);
  CHECK(cmd_verify(with("verify")).report == r.report);
}

TEST_CASE("verify names a corrupted invariant") {
  VerifyHooks hooks;
  hooks.corrupt_context = [](wtrick::WTrickContext& ctx) { ctx.K += 1; };
  const auto r = cmd_verify(with("verify"), hooks);
  CHECK(r.exit_code != 0);
  CHECK(r.summary.find("K = prod") != std::string::npos);
  CHECK(r.report.find("\"status\": \"fail\"") != std::string::npos);
}

TEST_CASE("search") {
  auto c = with("search");
  c.n = 12;
  c.m = 1;
  c.rule = "residue(1)";
  auto r = cmd_search(c);
  CHECK(r.files.front().second.find("1,2,10,3\n") != std::string::npos);
  CHECK(r.report.find("\"status\": \"found\"") != std::string::npos);

  auto b = with("search", "psi = [6,0,0]\nb0 = 1\nW0 = 1\n");
  const auto path = scratch("blocking.txt");
  {
    std::ofstream out(path);
    out << coloring::write_coloring(coloring::blocking_partition(b.psi, 1, 1, 3, 5000));
  }
  b.coloring_path = path.string();
  r = cmd_search(b);
  CHECK(r.report.find("\"status\": \"none-found\"") != std::string::npos);
  CHECK(r.files.front().second == "color,x,y,z\n");

  {
    std::ofstream out(path);
    out << "integers 3 2 manual\n1 1\n2 q\n3 1\n";
  }
  const auto e = error_of([&] { cmd_search(b); });
  CHECK(e.kind() == ErrorKind::parse);
  CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("counterexample") {
  auto c = with("counterexample", "psi = [6,0,0]\nb0 = 1\nW0 = 1\np = 3\nn = 1000\n");
  const auto r = cmd_counterexample(c);
  CHECK(r.exit_code == 0);
  CHECK(r.report.find("\"empty\": true") != std::string::npos);
  CHECK(r.report.find("\"empty\": false") == std::string::npos);

  auto bad = with("counterexample", "psi = [1,1,0]\nb0 = 1\nW0 = 4\np = 3\nn = 1000\n");
  CHECK(error_of([&] { cmd_counterexample(bad); }).kind() == ErrorKind::inapplicable);
}

TEST_CASE("transfer, integer and prime variants") {
  const auto r = cmd_transfer(with("transfer"));
  CHECK(r.exit_code == 0);
  CHECK(r.report == cmd_transfer(with("transfer")).report);
  CHECK(r.report.find("\"failures\": \"0\"") != std::string::npos);

  const auto p = cmd_transfer(
      with("transfer", "psi = [1,1,0]\nb0 = 1\nW0 = 4\nvariant = prime-coloring\nn = 200000\nw_config = 2:2,3:1,5:1\n"));
  CHECK(p.exit_code == 0);
  CHECK(p.report.find("A_prime_meets_floor") != std::string::npos);
  CHECK(p.report.find("\"k_divides_w\": true") != std::string::npos);
}

TEST_CASE("an infeasible scale leaves no output behind") {
  auto c = with("transfer");
  c.n = 100;
  c.w = 13;
  const auto dir = scratch("scale");
  c.out_dir = dir.string();
  const auto e = error_of([&] { write_outputs(c, run(c)); });
  CHECK(e.kind() == ErrorKind::scale);
  CHECK_FALSE(std::filesystem::exists(dir));
}

TEST_CASE("spectrum dumps and outputs") {
  auto c = with("spectrum");
  const auto dir = scratch("spectrum");
  c.out_dir = dir.string();
  const auto r = run(c);
  write_outputs(c, r);
  CHECK(std::filesystem::exists(dir / "spectrum.json"));
  std::ifstream in(dir / "measure.csv");
  std::string line;
  std::size_t lines = 0;
  std::getline(in, line);
  CHECK(line == "index,re,im");
  while (std::getline(in, line)) ++lines;
  CHECK(lines == 3343);
  CHECK(r.report.find("minor_decay_prime_sum") != std::string::npos);
  std::filesystem::remove_all(dir);
  CHECK(error_of([] { run(with("frobnicate")); }).kind() == ErrorKind::usage);
}
