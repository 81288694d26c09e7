#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fixtures.hpp"
#include "lamb/oracle.hpp"

using namespace lamb;

TEST(Modes, BenchmarkResiduals) {
  const auto& s = test::bench64();
  ASSERT_GT(s.modes.size(), 26u);
  for (const auto& m : s.modes.modes) {
    EXPECT_LE(m.residual, 1e-8);
    EXPECT_NEAR(std::abs(m.mu - cplx(0, 1) * m.beta), 0.0, 1e-15 * (1 + std::abs(m.beta)));
  }
  // sorted by |beta|
  for (std::size_t k = 1; k < s.modes.size(); ++k)
    EXPECT_LE(std::abs(s.modes.modes[k - 1].beta),
              std::abs(s.modes.modes[k].beta) * (1 + 1e-10) + 1e-12);
}

TEST(Modes, LowestRootsFrozen) {
  const auto& s = test::bench64();
  const auto& md = s.modes.modes;
  EXPECT_NEAR(std::abs(md[0].beta), 0.250835874726, 1e-10);
  EXPECT_NEAR(std::abs(md[2].beta), 1.255329912479, 1e-10);
  EXPECT_NEAR(std::abs(md[4].beta), 1.558013630672, 1e-10);
  EXPECT_EQ(md[0].parity, Parity::Symmetric);
  EXPECT_EQ(md[4].parity, Parity::Antisymmetric);
}

TEST(Modes, ComeInPlusMinusPairs) {
  const auto& md = test::bench64().modes.modes;
  for (const auto& a : md) {
    double best = 1e300;
    for (const auto& b : md) best = std::min(best, std::abs(a.beta + b.beta));
    EXPECT_LE(best, 1e-7 * (1 + std::abs(a.beta)));
  }
}

TEST(Modes, Deterministic) {
  const auto a = test::solve(test::benchmark(), 24);
  const auto b = test::solve(test::benchmark(), 24);
  ASSERT_EQ(a.modes.size(), b.modes.size());
  for (std::size_t k = 0; k < a.modes.size(); ++k) {
    EXPECT_EQ(a.modes.modes[k].beta, b.modes.modes[k].beta);
    EXPECT_EQ(a.modes.modes[k].big_v, b.modes.modes[k].big_v);
  }
}

TEST(Modes, ShearHorizontalPipeline) {
  const Material m = make_material(2, 1, 1, 1, 3.0);
  const Grid g = chebyshev_grid(48, 1.0);
  const auto p = assemble_pencil(m, sh_coefficients(m), g, BCKind::FreeFree);
  const auto ms = solve_modes(assemble_linearization(p), p);
  for (const auto& sh : sh_modes_closed_form(m, 6)) {
    double best = 1e300;
    for (const auto& md : ms.modes) best = std::min(best, std::abs(md.beta - sh.beta));
    EXPECT_LE(best, 1e-10) << "n = " << sh.n;
  }
  for (const auto& md : ms.modes) EXPECT_NE(md.parity, Parity::Mixed);
}

TEST(Modes, ShearHorizontalCutoffIsDoubleRoot) {
  // omega = pi puts n = 2 exactly at beta = 0, a double root in mu; the
  // eigenvalue is only conditioned to sqrt(eps).
  const Material m = make_material(2, 1, 1, 1, std::numbers::pi);
  const Grid g = chebyshev_grid(48, 1.0);
  const auto p = assemble_pencil(m, sh_coefficients(m), g, BCKind::FreeFree);
  const auto ms = solve_modes(assemble_linearization(p), p);
  for (const auto& sh : sh_modes_closed_form(m, 6)) {
    double best = 1e300;
    for (const auto& md : ms.modes) best = std::min(best, std::abs(md.beta - sh.beta));
    EXPECT_LE(best, sh.n == 2 ? 1e-6 : 1e-10) << "n = " << sh.n;
  }
}

TEST(Parity, Classification) {
  const Grid g = chebyshev_grid(9, 1.0);
  Eigen::VectorXcd v(18);
  for (int j = 0; j < 9; ++j) {
    v(j) = g.nodes(j);                        // odd v1
    v(9 + j) = 1.0 + g.nodes(j) * g.nodes(j);  // even v3
  }
  EXPECT_EQ(classify_parity(v, g), Parity::Symmetric);
  for (int j = 0; j < 9; ++j) {
    v(j) = std::cos(g.nodes(j));
    v(9 + j) = std::sin(g.nodes(j));
  }
  EXPECT_EQ(classify_parity(v, g), Parity::Antisymmetric);
  v(0) += 0.5;
  EXPECT_EQ(classify_parity(v, g), Parity::Mixed);
}

TEST(Chains, NoneAtSimpleEigenvalues) {
  const auto& s = test::bench64();
  const auto chains = detect_jordan_chains(s.modes, s.pencil);
  for (const auto& c : chains)
    if (std::abs(c.beta) <= 10) EXPECT_EQ(c.length(), 1) << c.beta;
}

TEST(Chains, ZeroGroupVelocityChain) {
  const Material m0 = test::benchmark();
  const auto d = locate_double_root(m0, Family::Symmetric, 0.8, 2.85);
  Material m = m0;
  m.omega = d.omega;
  auto s = test::solve(m, 64);
  const auto chains = detect_jordan_chains(s.modes, s.pencil);
  int found = 0;
  for (const auto& c : chains)
    if (std::abs(std::abs(c.beta.real()) - d.beta) < 1e-3 && std::abs(c.beta.imag()) < 1e-3) {
      EXPECT_GE(c.length(), 2);
      for (double r : c.residuals) EXPECT_LE(r, 1e-6);
      ++found;
    }
  EXPECT_EQ(found, 2);  // +beta* and -beta*
  annotate_chain_lengths(s.modes, chains);
  int marked = 0;
  for (const auto& md : s.modes.modes) marked += md.chain_length >= 2;
  EXPECT_GE(marked, 2);
}

TEST(Chains, CutoffChain) {
  // beta = 0 at omega = pi / 2 is a defective eigenvalue of the pencil in mu
  const auto s = test::solve(test::benchmark(std::numbers::pi / 2), 48);
  const auto chains = detect_jordan_chains(s.modes, s.pencil);
  bool hit = false;
  for (const auto& c : chains)
    if (std::abs(c.beta) < 1e-3) hit = hit || c.length() >= 2;
  EXPECT_TRUE(hit);
}

TEST(Biorthogonal, PairingIsIdentity) {
  const auto& s = test::bench64();
  const auto sys = biorthogonalize(s.modes, s.op);
  const int k = static_cast<int>(sys.pairing.rows());
  ASSERT_EQ(k, static_cast<int>(s.modes.size()));
  const Eigen::MatrixXcd d = sys.pairing - Eigen::MatrixXcd::Identity(k, k);
  EXPECT_LE(d.cwiseAbs().maxCoeff(), 1e-8);
}
