#include <gtest/gtest.h>

#include <sstream>

#include "lamb/cli.hpp"

using namespace lamb::cli;

namespace {

const char* kBench = R"({"lambda": 2, "mu": 1, "rho": 1, "h": 1, "omega": 3})";

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Config, Defaults) {
  const RunConfig c = parse_config(kBench);
  EXPECT_EQ(c.bc, lamb::BCKind::FreeFree);
  EXPECT_EQ(c.n_colloc, 64);
  EXPECT_DOUBLE_EQ(c.material.lambda, 2.0);
  EXPECT_FALSE(c.omega_sweep.has_value());
  EXPECT_TRUE(c.moduli.empty());
}

TEST(Config, FullDocument) {
  const RunConfig c = parse_config(
      R"({"lambda": 2, "mu": 1, "rho": 1, "h": 1, "omega": 3, "bc": "clamped-free",
          "n_colloc": 40, "accept_tol": 1e-9, "chain_tol": 1e-5, "theta0": 1.5,
          "moduli": [10, 20], "omega_sweep": {"start": 1, "stop": 2, "steps": 5}, "seed": 9})");
  EXPECT_EQ(c.bc, lamb::BCKind::ClampedFree);
  EXPECT_EQ(c.n_colloc, 40);
  EXPECT_EQ(c.moduli.size(), 2u);
  ASSERT_TRUE(c.omega_sweep.has_value());
  EXPECT_EQ(c.omega_sweep->steps, 5);
  EXPECT_EQ(c.seed, 9u);
}

TEST(Config, NamedConstraints) {
  EXPECT_EQ(error_of(R"({"lambda": 2, "mu": 1, "rho": 1, "h": 0, "omega": 3})"), "h ≤ 0");
  EXPECT_EQ(error_of(R"({"lambda": 2, "mu": 1, "rho": 1, "h": 1})"), "missing field 'omega'");
  EXPECT_EQ(error_of(R"({"lambda": 2, "mu": 1, "rho": 1, "h": 1, "omega": 3, "acept_tol": 1})"),
            "unknown field 'acept_tol'");
  EXPECT_EQ(error_of(R"({"lambda": 2, "mu": 1, "rho": 1, "h": 1, "omega": 3, "n_colloc": 4})"),
            "n_colloc < 8");
  EXPECT_NE(error_of(R"({"lambda": 2, "mu": 1, "rho": 1, "h": 1, "omega": 3, "theta0": 1.2})"), "");
  EXPECT_NE(error_of(R"({"lambda": 2, "mu": 1, "rho": 1, "h": 1, "omega": 3, "bc": "free"})"), "");
  EXPECT_NE(error_of(R"({"lambda": 2, "mu": 1, "rho": 1, "h": 1, "omega": 3, "moduli": [2, 1]})"), "");
  EXPECT_NE(error_of("[1, 2]"), "");
  EXPECT_NE(error_of("{"), "");
}

TEST(Csv, FormatAndDeterminism) {
  EXPECT_EQ(fmt(0.1), "0.10000000000000001");
  EXPECT_EQ(fmt(-2.5), "-2.5");
  RunConfig c = parse_config(kBench);
  c.n_colloc = 16;
  std::ostringstream a, b;
  write_modes_csv(c, a);
  write_modes_csv(c, b);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(a.str().rfind("re_beta,im_beta,parity,residual,chain_length\n", 0), 0u);
}
