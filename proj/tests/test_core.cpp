#include <gtest/gtest.h>

#include <random>

#include "lamb/core.hpp"

using namespace lamb;

namespace {

std::string message_of(double l, double mu, double rho, double h, double w) {
  try {
    make_material(l, mu, rho, h, w);
  } catch (const std::invalid_argument& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Material, RejectsEachInvariant) {
  EXPECT_EQ(message_of(2, 0, 1, 1, 3), "μ ≤ 0");
  EXPECT_EQ(message_of(-1, 1, 1, 1, 3), "3λ+2μ ≤ 0");
  EXPECT_EQ(message_of(2, 1, 0, 1, 3), "ρ ≤ 0");
  EXPECT_EQ(message_of(2, 1, 1, 0, 3), "h ≤ 0");
  EXPECT_EQ(message_of(2, 1, 1, 1, 0), "ω ≤ 0");
  EXPECT_EQ(message_of(2, 1, 1, 1, 3), "");
  // negative lambda is fine while 3λ+2μ > 0
  EXPECT_EQ(message_of(-0.5, 1, 1, 1, 3), "");
}

TEST(Material, Speeds) {
  const Material m = make_material(2, 1, 1, 1, 3);
  EXPECT_DOUBLE_EQ(m.longitudinal_speed(), 2.0);
  EXPECT_DOUBLE_EQ(m.transverse_speed(), 1.0);
}

TEST(Coefficients, LambBlocks) {
  const auto c = pencil_coefficients(make_material(2, 1, 1, 1, 3));
  Eigen::Matrix2d A, B, C, D;
  A << 4, 0, 0, 1;
  B << 0, 3, 3, 0;
  C << 1, 0, 0, 4;
  D << 0, 2, 1, 0;
  EXPECT_EQ(c.components(), 2);
  EXPECT_EQ(Eigen::MatrixXd(c.A), Eigen::MatrixXd(A));
  EXPECT_EQ(Eigen::MatrixXd(c.B), Eigen::MatrixXd(B));
  EXPECT_EQ(Eigen::MatrixXd(c.C), Eigen::MatrixXd(C));
  EXPECT_EQ(Eigen::MatrixXd(c.D), Eigen::MatrixXd(D));
}

TEST(Coefficients, ShearHorizontal) {
  const auto c = sh_coefficients(make_material(2, 1.5, 1, 1, 3));
  EXPECT_EQ(c.components(), 1);
  EXPECT_DOUBLE_EQ(c.A(0, 0), 1.5);
  EXPECT_DOUBLE_EQ(c.C(0, 0), 1.5);
  EXPECT_DOUBLE_EQ(c.B(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(c.D(0, 0), 0.0);
}

TEST(Symbol, Examples) {
  const Material m = make_material(2, 1, 1, 1, 3);
  EXPECT_NEAR(std::abs(symbol_det_L0(1.0, 2.0, m) - 100.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(symbol_det_L0(0.0, 2.0, m) - 64.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(symbol_det_L0(2.0, 0.0, m) - 64.0), 0.0, 1e-12);
  const cplx b(0.7, -1.3);
  EXPECT_NEAR(std::abs(symbol_det_L0(cplx(0, 1) * b, b, m)), 0.0, 1e-12);
}

TEST(Symbol, DeterminantMatchesMatrix) {
  const Material m = make_material(1.3, 0.7, 1, 1, 3);
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  for (int k = 0; k < 200; ++k) {
    const cplx xi(g(rng), g(rng)), b(g(rng), g(rng));
    const cplx d = principal_symbol(xi, b, m).determinant();
    const cplx want = (m.lambda + 2 * m.mu) * m.mu * std::pow(xi * xi + b * b, 2);
    EXPECT_LE(std::abs(symbol_det_L0(xi, b, m) - want), 1e-12 * (std::abs(want) + 1));
    EXPECT_LE(std::abs(d - want), 1e-11 * (std::abs(want) + 1));
  }
}
