#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "fixtures.hpp"
#include "lamb/analysis.hpp"

using namespace lamb;
using std::numbers::pi;

namespace {

Eigen::VectorXcd smooth_field(const test::Solved& s, std::uint64_t seed) {
  return random_trig_field(s.grid, s.pencil.components(), seed);
}

double safe_sigma(const DiscreteOperator& op, const GramMetric& g, cplx z) {
  try {
    return sigma_min_gram(op, g, z);
  } catch (const std::runtime_error&) {
    return 0.0;
  }
}

}  // namespace

TEST(Resolvent, ZeroAndLinearity) {
  const auto& s = test::bench64();
  const cplx b(50.0, 0.0);
  const auto f1 = smooth_field(s, 1), f2 = smooth_field(s, 2);
  const auto z = resolvent_solve(s.op, b, Eigen::VectorXcd::Zero(s.op.size()));
  EXPECT_EQ(z.u.norm(), 0.0);
  const auto u1 = resolvent_solve(s.op, b, f1), u2 = resolvent_solve(s.op, b, f2),
             u12 = resolvent_solve(s.op, b, f1 + f2);
  EXPECT_LE((u12.u - u1.u - u2.u).norm(), 1e-10 * u12.u.norm());
  EXPECT_LE(u1.residual, 1e-10);
}

TEST(Resolvent, PencilRouteAgrees) {
  for (BCKind bc : {BCKind::FreeFree, BCKind::ClampedFree}) {
    const auto s = test::solve(test::benchmark(), 32, bc);
    const auto f = smooth_field(s, 5);
    for (cplx b : {cplx(7.0, 0.0), cplx(3.0, 2.0), cplx(-20.0, 5.0)}) {
      const auto a = resolvent_solve(s.op, b, f);
      const auto p = resolvent_solve_pencil(s.pencil, b, f);
      EXPECT_LE((a.u - p.u).norm(), 1e-9 * a.u.norm()) << b;
      // U2 = i beta U1 + F1
      const int n = s.op.block();
      const Eigen::VectorXcd u2 = cplx(0, 1) * b * p.u.head(n) + f.head(n);
      if (bc == BCKind::FreeFree) EXPECT_LE((p.u.tail(n) - u2).norm(), 1e-9 * u2.norm());
    }
  }
}

TEST(Resolvent, BoundedOnRealRay) {
  const auto& s = test::bench64();
  const GramMetric g(s.op.gram);
  const auto f = smooth_field(s, 3);
  const double c = resolvent_norms(s.op, g, 50.0).norm;
  const auto u = resolvent_solve(s.op, 50.0, f);
  EXPECT_LE(g.norm(u.u), c * g.norm(f) * (1 + 1e-10));
}

TEST(Resolvent, ScanValidation) {
  const auto& s = test::bench64();
  EXPECT_THROW(resolvent_scan(s.op, 0.3 * pi, {20.0}), std::invalid_argument);
  EXPECT_THROW(resolvent_scan(s.op, 0.5 * pi, {20.0}), std::invalid_argument);
  EXPECT_THROW(resolvent_scan(s.op, 0.45 * pi, {20.0, 10.0}), std::invalid_argument);
  EXPECT_THROW(resolvent_scan(s.op, 0.45 * pi, {}), std::invalid_argument);
  const auto r = five_ray_angles();
  ASSERT_EQ(r.size(), 5u);
  for (int j = 0; j < 5; ++j) EXPECT_NEAR(r[j], 2 * j * pi / 5, 1e-15);
}

TEST(Resolvent, ConjugationSymmetryAndCollisionSkip) {
  const auto& s = test::bench64();
  std::vector<cplx> mus;
  for (const auto& m : s.modes.modes) mus.push_back(m.mu);
  const double b0 = std::abs(s.modes.modes[0].beta);
  const auto scan = resolvent_scan(s.op, 0.45 * pi, {b0, 20.0, 40.0}, mus);
  // ray 0 at |beta| = b0 lands on the real eigenvalue: skipped and logged
  EXPECT_TRUE(std::isnan(scan.norms(0, 0)));
  EXPECT_FALSE(scan.log.empty());
  for (int r = 0; r < 5; ++r)
    for (int k = 1; k < 3; ++k)
      EXPECT_LE(std::abs(scan.norms(r, k) - scan.conj_norms(r, k)), 1e-10 * scan.norms(r, k));
}

TEST(Resolvent, BlowUpNearSpectrum) {
  const auto& s = test::bench64();
  const GramMetric g(s.op.gram);
  const auto scan = resolvent_scan(s.op, 0.45 * pi, {20.0, 30.0, 40.0});
  std::vector<double> v(scan.norms.data(), scan.norms.data() + scan.norms.size());
  std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
  const double median = v[v.size() / 2];
  const cplx b = s.modes.modes[3].beta + cplx(0, 1e-3);
  EXPECT_GT(resolvent_norms(s.op, g, b).norm, 1e3 * median);
}

TEST(Resolvent, SigmaMinConsistency) {
  const auto& s = test::bench64();
  const GramMetric g(s.op.gram);
  for (int k = 0; k < 10; ++k) {
    const auto& a = s.modes.modes[k];
    EXPECT_LE(safe_sigma(s.op, g, a.mu), 1e-8) << a.beta;
    const cplx mid = 0.5 * (a.mu + s.modes.modes[k + 1].mu);
    if (std::abs(a.mu - s.modes.modes[k + 1].mu) > 1e-3) EXPECT_GE(safe_sigma(s.op, g, mid), 1e-4);
  }
}

TEST(Coercivity, RealPathsAgree) {
  const Material m = test::benchmark();
  const Grid g = chebyshev_grid(16, 1.0);
  const auto f = sesquilinear_forms(m, g);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n;
  for (int k = 0; k < 20; ++k) {
    Eigen::VectorXcd v(32);
    for (int j = 0; j < 32; ++j) v(j) = cplx(n(rng), n(rng));
    const double a = 10 * n(rng);
    EXPECT_NEAR(rayleigh_quotient(f, a, v), rayleigh_quotient_real(f, a, v),
                1e-12 * (1 + std::abs(rayleigh_quotient_real(f, a, v))));
  }
}

TEST(Coercivity, ConstantFieldAnalytic) {
  const Material m = make_material(2, 1, 1, 1, 1);
  const Grid g = chebyshev_grid(24, 1.0);
  const auto f = sesquilinear_forms(m, g);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(48);
  v.head(24).setOnes();
  for (double b : {0.5, 1.0, 3.0}) {
    const cplx q = form_value(f, b, v);
    EXPECT_NEAR(q.real(), 2.0 * (b * b - 1.0), 1e-12);
    EXPECT_EQ(q.real() > 0, b > 1.0 + 1e-12);
  }
}

TEST(Coercivity, MinimumBoundsRandomFields) {
  const Material m = test::benchmark();
  const Grid g = chebyshev_grid(16, 1.0);
  const auto f = sesquilinear_forms(m, g);
  const cplx b(12.0, 3.0);
  const double lo = min_rayleigh_quotient(f, b);
  std::mt19937_64 rng(9);
  std::normal_distribution<double> n;
  for (int k = 0; k < 50; ++k) {
    Eigen::VectorXcd v(32);
    for (int j = 0; j < 32; ++j) v(j) = cplx(n(rng), n(rng));
    EXPECT_GE(rayleigh_quotient(f, b, v), lo - 1e-9 * std::abs(lo));
  }
}

TEST(Coercivity, ScanFindsPositiveConstant) {
  const Material m = test::benchmark();
  const Grid g = chebyshev_grid(24, 1.0);
  const auto f = sesquilinear_forms(m, g);
  const auto r = coercivity_scan(f, g, 0.5, 20, 4);
  ASSERT_TRUE(r.found);
  EXPECT_GT(r.c_const, 0.0);
  EXPECT_EQ(r.samples.size(), 20u);
  for (const auto& sm : r.samples) {
    EXPECT_GE(sm.min_quotient, r.c_const - 1e-14);
    EXPECT_GE(sm.random_min, sm.min_quotient - 1e-9);
  }
  EXPECT_THROW(coercivity_scan(f, g, 1.0, 1, 0), std::invalid_argument);
}

TEST(Completeness, FiniteCombination) {
  const auto& s = test::bench64();
  const auto sys = biorthogonalize(s.modes, s.op);
  const Eigen::VectorXcd t = 0.3 * sys.right.col(0) + 0.7 * sys.right.col(4);
  const auto r = expand_field(sys, s.op, t, {4, 5, 8});
  EXPECT_GT(r.residuals[0], 1e-3);
  EXPECT_LE(r.residuals[1], 1e-10);
  EXPECT_LE(r.residuals[2], 1e-10);
  EXPECT_NEAR(std::abs(r.coefficients[1](0) - 0.3), 0.0, 1e-10);
  EXPECT_NEAR(std::abs(r.coefficients[1](4) - 0.7), 0.0, 1e-10);
  const auto bi = expand_field(sys, s.op, t, {5}, ExpansionMethod::Biorthogonal);
  EXPECT_LE(bi.residuals[0], 1e-8);
}

TEST(Completeness, SingleModeAndMonotone) {
  const auto& s = test::bench64();
  const auto sys = biorthogonalize(s.modes, s.op);
  const auto one = expand_field(sys, s.op, sys.right.col(2), {3});
  EXPECT_LE(one.residuals[0], 1e-10);
  EXPECT_NEAR(std::abs(one.coefficients[0](2) - 1.0), 0.0, 1e-10);

  std::vector<int> ks;
  for (int k = 1; k <= static_cast<int>(s.modes.size()); ++k) ks.push_back(k);
  const auto r = expand_field(sys, s.op, smooth_field(s, 42), ks);
  for (std::size_t k = 1; k < ks.size(); ++k) EXPECT_LE(r.residuals[k], r.residuals[k - 1]);
}

TEST(Completeness, SeededFieldsRepeat) {
  const auto& s = test::bench64();
  EXPECT_EQ(smooth_field(s, 17), smooth_field(s, 17));
  EXPECT_NE(smooth_field(s, 17), smooth_field(s, 18));
}

TEST(NonSelfAdjoint, WitnessAndAdjointDefect) {
  const auto& s = test::bench64();
  const auto w = nonorthogonality_witness(s.modes, s.op);
  EXPECT_NE(w.m, w.n);
  EXPECT_GE(w.magnitude, 0.01);
  EXPECT_GE(gram_adjoint_defect(s.op), 0.01);
  const GramMetric g(s.op.gram);
  EXPECT_NEAR(g.norm(s.modes.modes[0].big_v), 1.0, 1e-12);
}
