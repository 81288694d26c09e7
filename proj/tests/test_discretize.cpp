#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"

using namespace lamb;

TEST(Grid, ThreeNodes) {
  const Grid g = chebyshev_grid(3, 1.0);
  EXPECT_DOUBLE_EQ(g.nodes(0), -1.0);
  EXPECT_DOUBLE_EQ(g.nodes(1), 0.0);
  EXPECT_DOUBLE_EQ(g.nodes(2), 1.0);
  const Eigen::VectorXd x2 = g.nodes.array().square();
  EXPECT_LE((g.d1 * x2 - 2.0 * g.nodes).norm(), 1e-14);
}

TEST(Grid, Rejects) {
  EXPECT_THROW(chebyshev_grid(2, 1.0), std::invalid_argument);
  EXPECT_THROW(chebyshev_grid(8, 0.0), std::invalid_argument);
}

TEST(Grid, SymmetryAndQuadrature) {
  for (int n : {8, 33, 64}) {
    const Grid g = chebyshev_grid(n, 1.7);
    for (int j = 0; j < n; ++j) EXPECT_EQ(g.nodes(n - 1 - j), -g.nodes(j));
    EXPECT_NEAR(g.quad_weights.sum(), 2 * 1.7, 1e-13);
    // integral of x^4 over [-h, h]
    EXPECT_NEAR(g.quad_weights.dot(Eigen::VectorXd(g.nodes.array().pow(4))),
                2 * std::pow(1.7, 5) / 5, 1e-12);
  }
}

TEST(Grid, SpectralDerivative) {
  const Grid g = chebyshev_grid(32, 1.0);
  const Eigen::VectorXd f = g.nodes.array().sin();
  const Eigen::VectorXd df = g.nodes.array().cos();
  EXPECT_LE((g.d1 * f - df).lpNorm<Eigen::Infinity>(), 1e-12);
  EXPECT_LE((g.d2 * f + f).lpNorm<Eigen::Infinity>(), 1e-9);
}

TEST(Forms, ConstantFields) {
  const Material m = make_material(2, 1, 1, 1, 1);
  const Grid g = chebyshev_grid(16, 1.0);
  const auto f = sesquilinear_forms(m, g);
  Eigen::VectorXcd v1 = Eigen::VectorXcd::Zero(32), v3 = Eigen::VectorXcd::Zero(32);
  v1.head(16).setOnes();
  v3.tail(16).setOnes();
  EXPECT_NEAR((v1.adjoint() * f.g_c * v1)(0).real(), 2.0, 1e-13);  // mu * 2h
  EXPECT_NEAR((v1.adjoint() * f.g_l * v1)(0).real(), 2.0, 1e-13);  // rho * 2h
  EXPECT_NEAR((v3.adjoint() * f.g_c * v3)(0).real(), 8.0, 1e-13);  // (lambda + 2 mu) * 2h
  EXPECT_NEAR(std::abs((v1.adjoint() * f.g_a0 * v1)(0)), 0.0, 1e-12);

  Eigen::VectorXcd x = Eigen::VectorXcd::Zero(32);
  for (int j = 0; j < 16; ++j) x(j) = g.nodes(j);
  EXPECT_NEAR((x.adjoint() * f.g_a0 * x)(0).real(), 8.0, 1e-12);
}

TEST(Forms, ConstantFieldQuadratic) {
  // 2h (mu beta^2 - rho omega^2) for v = (1, 0)
  const Material m = make_material(2, 1, 1, 1, 1);
  const Grid g = chebyshev_grid(16, 1.0);
  const auto f = sesquilinear_forms(m, g);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(32);
  v.head(16).setOnes();
  for (double b : {0.0, 0.5, 1.0, 2.0, 7.5}) {
    const cplx q = (v.adjoint() * f.quadratic_form(b) * v)(0);
    EXPECT_NEAR(q.real(), 2.0 * (b * b - 1.0), 1e-12);
    EXPECT_NEAR(q.imag(), 0.0, 1e-12);
  }
}

TEST(Pencil, BoundaryRowsAndSize) {
  const Material m = test::benchmark();
  const Grid g = chebyshev_grid(10, 1.0);
  const auto p = assemble_pencil(m, g, BCKind::FreeFree);
  EXPECT_EQ(p.size(), 20);
  EXPECT_EQ(p.boundary_rows.size(), 4u);
  // K2 vanishes on traction rows
  for (int r : p.boundary_rows) EXPECT_EQ(p.k2.row(r).norm(), 0.0);
  EXPECT_LE((p.derivative(cplx(0.3, 0.1)) - (p.k1 + 2.0 * cplx(0.3, 0.1) * p.k2)).norm(), 1e-14);
}

TEST(Linearization, GramOfConstantSecondBlock) {
  const Material m = test::benchmark();
  const Grid g = chebyshev_grid(12, 1.0);
  const auto op = assemble_linearization(assemble_pencil(m, g, BCKind::FreeFree));
  EXPECT_EQ(op.size(), 48);
  Eigen::VectorXd u = Eigen::VectorXd::Zero(48);
  u.segment(24, 12).setOnes();
  EXPECT_NEAR(u.dot(op.gram * u), 2.0, 1e-13);  // c_L of (1, 0)
  EXPECT_LE((op.gram - op.gram.transpose()).norm(), 1e-12 * op.gram.norm());
}

TEST(Linearization, ClampedEndHasNoMass) {
  const Material m = test::benchmark();
  const Grid g = chebyshev_grid(12, 1.0);
  const auto op = assemble_linearization(assemble_pencil(m, g, BCKind::ClampedFree));
  // node 0 is x = -h, in both components and both blocks
  for (int blk = 0; blk < 2; ++blk)
    for (int c = 0; c < 2; ++c) EXPECT_EQ(op.e(blk * 24 + c * 12), 0.0);
}
