#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "lamb/cli.hpp"

namespace lamb::cli {

namespace {

using nlohmann::json;

double get_number(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_number()) throw ConfigError(std::string(key) + " must be a number");
  return v.get<double>();
}

long long get_integer(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_number_integer()) throw ConfigError(std::string(key) + " must be an integer");
  return v.get<long long>();
}

void reject_unknown(const json& j, const std::set<std::string>& known, const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key())) throw ConfigError("unknown field '" + where + it.key() + "'");
}

}  // namespace

BCKind parse_bc(const std::string& s) {
  if (s == "free-free") return BCKind::FreeFree;
  if (s == "clamped-free") return BCKind::ClampedFree;
  throw ConfigError("bc must be \"free-free\" or \"clamped-free\"");
}

const char* bc_name(BCKind bc) { return bc == BCKind::FreeFree ? "free-free" : "clamped-free"; }

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown(j, {"lambda", "mu", "rho", "h", "omega", "bc", "n_colloc", "accept_tol",
                     "chain_tol", "theta0", "moduli", "omega_sweep", "seed"},
                 "");
  for (const char* k : {"lambda", "mu", "rho", "h", "omega"})
    if (!j.contains(k)) throw ConfigError(std::string("missing field '") + k + "'");

  RunConfig c;
  Material m{get_number(j, "lambda"), get_number(j, "mu"), get_number(j, "rho"),
             get_number(j, "h"), get_number(j, "omega")};
  try {
    validate(m);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  c.material = m;

  if (j.contains("bc")) {
    if (!j["bc"].is_string()) throw ConfigError("bc must be a string");
    c.bc = parse_bc(j["bc"].get<std::string>());
  }
  if (j.contains("n_colloc")) {
    const long long n = get_integer(j, "n_colloc");
    if (n < 8) throw ConfigError("n_colloc < 8");
    if (n > 4096) throw ConfigError("n_colloc > 4096");
    c.n_colloc = static_cast<int>(n);
  }
  if (j.contains("accept_tol")) {
    c.accept_tol = get_number(j, "accept_tol");
    if (!(c.accept_tol > 0.0)) throw ConfigError("accept_tol ≤ 0");
  }
  if (j.contains("chain_tol")) {
    c.chain_tol = get_number(j, "chain_tol");
    if (!(c.chain_tol > 0.0)) throw ConfigError("chain_tol ≤ 0");
  }
  if (j.contains("theta0")) {
    c.theta0 = get_number(j, "theta0");
    const double pi = std::numbers::pi;
    if (!(c.theta0 > 2.0 * pi / 5.0 && c.theta0 < pi / 2.0))
      throw ConfigError("theta0 outside (2π/5, π/2)");
  }
  if (j.contains("moduli")) {
    const auto& a = j["moduli"];
    if (!a.is_array()) throw ConfigError("moduli must be an array");
    for (const auto& v : a) {
      if (!v.is_number()) throw ConfigError("moduli entries must be numbers");
      const double x = v.get<double>();
      if (!(x > 0.0) || !std::isfinite(x)) throw ConfigError("moduli entries must be > 0");
      if (!c.moduli.empty() && !(x > c.moduli.back()))
        throw ConfigError("moduli must be increasing");
      c.moduli.push_back(x);
    }
  }
  if (j.contains("omega_sweep")) {
    const auto& s = j["omega_sweep"];
    if (!s.is_object()) throw ConfigError("omega_sweep must be an object");
    reject_unknown(s, {"start", "stop", "steps"}, "omega_sweep.");
    for (const char* k : {"start", "stop", "steps"})
      if (!s.contains(k)) throw ConfigError(std::string("missing field 'omega_sweep.") + k + "'");
    OmegaSweep w{get_number(s, "start"), get_number(s, "stop"), 0};
    const long long steps = get_integer(s, "steps");
    if (!(w.start > 0.0)) throw ConfigError("omega_sweep.start ≤ 0");
    if (!(w.stop > w.start)) throw ConfigError("omega_sweep.stop ≤ omega_sweep.start");
    if (steps < 2) throw ConfigError("omega_sweep.steps < 2");
    w.steps = static_cast<int>(steps);
    c.omega_sweep = w;
  }
  if (j.contains("seed")) {
    const auto& s = j["seed"];
    if (!s.is_number_integer() || s.get<long long>() < 0)
      throw ConfigError("seed must be a non-negative integer");
    c.seed = s.get<std::uint64_t>();
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace lamb::cli
