#include <json.hpp>

#include "primepoly/errors.hpp"
#include "primepoly/wtrick.hpp"

namespace primepoly::wtrick {

namespace {

using nlohmann::json;

std::string dec(std::uint64_t v) { return std::to_string(v); }

std::uint64_t u64(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_string())
    throw Error(ErrorKind::parse, std::string("context field '") + key + "' must be a decimal string");
  return to_u64(parse_bigint(j.at(key).get<std::string>()));
}

json residue_map(const std::map<std::uint64_t, std::uint64_t>& m) {
  json out = json::object();
  for (auto [p, r] : m) out[dec(p)] = dec(r);
  return out;
}

std::map<std::uint64_t, std::uint64_t> read_residue_map(const json& j) {
  std::map<std::uint64_t, std::uint64_t> out;
  for (auto it = j.begin(); it != j.end(); ++it)
    out[to_u64(parse_bigint(it.key()))] = to_u64(parse_bigint(it.value().get<std::string>()));
  return out;
}

json poly_json(const IntPolynomial& p) {
  json arr = json::array();
  for (const auto& c : p.highest_first()) arr.push_back(c.str());
  return arr;
}

IntPolynomial read_poly(const json& j) {
  std::vector<BigInt> coeffs;
  for (const auto& c : j) coeffs.push_back(parse_bigint(c.get<std::string>()));
  return IntPolynomial::from_highest_first(std::move(coeffs));
}

}  // namespace

std::string to_json(const WTrickContext& ctx) {
  json j;
  j["variant"] = std::string(poly::to_string(ctx.variant));
  j["psi"] = poly_json(ctx.psi);
  j["b0"] = dec(ctx.b0);
  j["W0"] = dec(ctx.W0);
  j["m"] = dec(ctx.m);
  j["Psi"] = dec(ctx.Psi);
  j["b_p"] = residue_map(ctx.bp);
  j["c_p"] = residue_map(ctx.cp);
  j["K"] = dec(ctx.K);
  j["kappa"] = "1/" + dec(ctx.kappa_denominator());
  json w = json::object();
  for (auto [p, e] : ctx.w_config) w[dec(p)] = dec(e);
  j["w_config"] = w;
  j["W"] = dec(ctx.W);
  j["b"] = dec(ctx.b);
  j["n"] = dec(ctx.n);
  j["N"] = dec(ctx.N);
  j["N_search"] = {{"widenings", dec(ctx.n_search.widenings)},
                   {"lower", dec(ctx.n_search.lower)},
                   {"upper", dec(ctx.n_search.upper)}};
  j["psi_bW"] = poly_json(ctx.psi_bW.poly);
  j["M"] = dec(ctx.M);
  return j.dump(2);
}

WTrickContext context_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::parse, std::string("context JSON: ") + e.what());
  }
  try {
    WTrickContext ctx;
    ctx.variant = poly::parse_variant(j.at("variant").get<std::string>());
    ctx.psi = read_poly(j.at("psi"));
    ctx.b0 = u64(j, "b0");
    ctx.W0 = u64(j, "W0");
    ctx.m = u64(j, "m");
    ctx.Psi = u64(j, "Psi");
    ctx.bp = read_residue_map(j.at("b_p"));
    ctx.cp = read_residue_map(j.at("c_p"));
    ctx.K = u64(j, "K");
    const auto& w = j.at("w_config");
    for (auto it = w.begin(); it != w.end(); ++it)
      ctx.w_config[to_u64(parse_bigint(it.key()))] =
          static_cast<unsigned>(to_u64(parse_bigint(it.value().get<std::string>())));
    ctx.W = u64(j, "W");
    ctx.b = u64(j, "b");
    ctx.n = u64(j, "n");
    ctx.N = u64(j, "N");
    const auto& ns = j.at("N_search");
    ctx.n_search.widenings = static_cast<unsigned>(u64(ns, "widenings"));
    ctx.n_search.lower = u64(ns, "lower");
    ctx.n_search.upper = u64(ns, "upper");
    ctx.psi_bW = {ctx.psi, BigInt(ctx.W), BigInt(ctx.b), read_poly(j.at("psi_bW"))};
    ctx.M = u64(j, "M");
    if (j.at("kappa").get<std::string>() != "1/" + dec(ctx.kappa_denominator()))
      throw Error(ErrorKind::parse, "kappa does not match 1/(10^4 K m)");
    return ctx;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::parse, std::string("context JSON: ") + e.what());
  }
}

}  // namespace primepoly::wtrick
