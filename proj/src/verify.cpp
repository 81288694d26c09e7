#include "lamb/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "lamb/analysis.hpp"
#include "lamb/oracle.hpp"

namespace lamb {

namespace {

constexpr double pi = std::numbers::pi;

struct Setup {
  Grid grid;
  DiscretePencil pencil;
  DiscreteOperator op;
  ModeSet modes;
  double seconds = 0.0;
};

Setup setup(const SuiteOptions& o, BCKind bc, int n, const Material* mat = nullptr) {
  const auto t0 = std::chrono::steady_clock::now();
  const Material& m = mat ? *mat : o.material;
  Setup s;
  s.grid = chebyshev_grid(n, m.h);
  s.pencil = assemble_pencil(m, s.grid, bc);
  s.op = assemble_linearization(s.pencil);
  SolveOptions so;
  so.accept_tol = o.accept_tol;
  s.modes = solve_modes(s.op, s.pencil, so);
  s.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return s;
}

std::string num(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

CheckResult make(int c, std::string name, double value, double threshold, bool pass,
                 std::string detail = {}) {
  return {c, std::move(name), value, threshold, pass, std::move(detail)};
}

std::vector<cplx> mus_of(const ModeSet& ms) {
  std::vector<cplx> z;
  for (const auto& m : ms.modes) z.push_back(m.mu);
  return z;
}

}  // namespace

CheckResult check_oracle_equivalence(const SuiteOptions& o, BCKind bc) {
  const Setup s = setup(o, bc, 64);
  const double radius = 10.0 / o.material.h;
  std::vector<cplx> disc;
  for (const auto& m : s.modes.modes)
    if (std::abs(m.beta) <= radius) disc.push_back(m.beta);
  const double e = radius * 1.05;
  const auto rep = rayleigh_lamb_roots(o.material,
                                       bc == BCKind::FreeFree ? Family::FreeFree : Family::ClampedFree,
                                       {-e, e, -e, e});
  std::vector<cplx> orc;
  for (cplx r : rep.roots)
    if (std::abs(r) <= radius) orc.push_back(r);

  std::vector<bool> used(orc.size(), false);
  double worst = 0.0;
  bool bij = disc.size() == orc.size() && rep.certified;
  for (cplx b : disc) {
    double best = std::numeric_limits<double>::infinity();
    int bi = -1;
    for (std::size_t k = 0; k < orc.size(); ++k)
      if (!used[k] && std::abs(orc[k] - b) < best) {
        best = std::abs(orc[k] - b);
        bi = static_cast<int>(k);
      }
    if (bi < 0) {
      bij = false;
      worst = std::numeric_limits<double>::infinity();
      continue;
    }
    used[bi] = true;
    worst = std::max(worst, best);
  }
  const bool pass = bij && worst <= 1e-8 && s.seconds <= 5.0;
  return make(1, std::string("oracle equivalence (") + (bc == BCKind::FreeFree ? "free-free" : "clamped-free") + ")",
              worst, 1e-8, pass,
              std::to_string(disc.size()) + " discrete / " + std::to_string(orc.size()) +
                  " oracle roots with |beta| <= " + num(radius) + ", contour count " +
                  std::to_string(rep.contour_count) + ", solve " + num(s.seconds) + " s");
}

CheckResult check_sh_closed_form(const SuiteOptions& o) {
  const Material& m = o.material;
  const Grid g = chebyshev_grid(64, m.h);
  const auto c = sh_coefficients(m);
  const DiscretePencil p = assemble_pencil(m, c, g, BCKind::FreeFree);
  const DiscreteOperator op = assemble_linearization(p);
  SolveOptions so;
  so.accept_tol = o.accept_tol;
  const ModeSet ms = solve_modes(op, p, so);
  double worst = 0.0;
  for (const auto& sh : sh_modes_closed_form(m, 10)) {
    for (cplx target : {sh.beta, -sh.beta}) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& md : ms.modes) best = std::min(best, std::abs(md.beta - target));
      worst = std::max(worst, best);
    }
  }
  return make(2, "SH closed form n = 0..10", worst, 1e-10, worst <= 1e-10,
              std::to_string(ms.size()) + " retained SH eigenvalues");
}

CheckResult check_symbol_identity(const SuiteOptions& o) {
  std::mt19937_64 gen(o.seed + 3);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  double worst = 0.0;
  for (int k = 0; k < 10000; ++k) {
    Material m;
    m.mu = 0.1 + std::abs(u(gen));
    m.lambda = -2.0 * m.mu / 3.0 + 0.01 + std::abs(u(gen));
    m.rho = m.h = m.omega = 1.0;
    const cplx xi(u(gen), u(gen));
    const cplx beta(u(gen), u(gen));
    const cplx d = symbol_det_L0(xi, beta, m);
    const cplx s = xi * xi + beta * beta;
    const cplx e = (m.lambda + 2.0 * m.mu) * m.mu * s * s;
    const double a2 = std::norm(xi) + std::norm(beta);
    const double scale = (m.lambda + 2.0 * m.mu) * m.mu * a2 * a2;
    worst = std::max(worst, std::abs(d - e) / scale);
  }
  return make(3, "symbol determinant identity", worst, 1e-12, worst <= 1e-12,
              "10^4 random (xi, beta, lambda, mu); error relative to (lambda+2mu) mu (|xi|²+|beta|²)²");
}

CheckResult check_stable_solutions(const SuiteOptions& o) {
  std::mt19937_64 gen(o.seed + 4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst_ode = 0.0, worst_det = 0.0;
  for (int k = 0; k < 100; ++k) {
    const double r = 0.1 + 10.0 * u(gen);
    double phi = (2.0 * u(gen) - 1.0) * o.theta0;
    if (u(gen) < 0.5) phi += pi;
    const cplx beta = std::polar(r, phi);
    for (int gamma : {1, -1}) {
      const auto rep = stable_solution_check(o.material, beta, gamma);
      worst_ode = std::max({worst_ode, rep.ode_residual_w1, rep.ode_residual_w2});
      worst_det = std::max(worst_det, std::abs(rep.boundary_det + beta) / std::abs(beta));
    }
  }
  const bool pass = worst_ode <= 1e-10 && worst_det <= 1e-12;
  return make(4, "stable solutions and boundary determinant", std::max(worst_ode, worst_det),
              1e-10, pass, "ode residual " + num(worst_ode) + " (<= 1e-10), det error " +
                               num(worst_det) + " (<= 1e-12)");
}

CheckResult check_coercivity(const SuiteOptions& o) {
  const Material& m = o.material;
  const Grid g = chebyshev_grid(32, m.h);
  const FormMatrices f = sesquilinear_forms(m, g);
  const auto rep = coercivity_scan(f, g, 0.5, 1000, o.seed + 5);
  bool ok = rep.found && rep.c_const > 0.0 && rep.samples.size() == 20;
  for (const auto& s : rep.samples) ok = ok && s.random_min >= rep.c_const;

  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(2 * g.n);
  v.head(g.n).setOnes();
  double worst = 0.0;
  for (const auto& s : rep.samples) {
    const cplx val = form_value(f, s.beta, v);
    const cplx ref = 2.0 * m.h * (m.mu * s.beta * s.beta - m.rho * m.omega * m.omega);
    worst = std::max(worst, std::abs(val - ref) / std::max(1.0, std::abs(ref)));
  }
  const bool pass = ok && worst <= 1e-12;
  return make(5, "coercivity in the sector (alpha = 0.5)", rep.c_const, 0.0, pass,
              "beta0 " + num(rep.beta0) + ", C " + num(rep.c_const) +
                  ", constant-field error " + num(worst) + " (<= 1e-12)");
}

CheckResult check_resolvent_rays(const SuiteOptions& o, BCKind bc) {
  const Setup s = setup(o, bc, 64);
  const double B = measured_resolvent_threshold(s.modes, o.theta0);
  std::vector<double> mods;
  for (int k = 0; k <= 8; ++k) mods.push_back(B * std::pow(10.0, k / 4.0));
  const auto scan = resolvent_scan(s.op, o.theta0, mods, mus_of(s.modes));
  double worst_ratio = 0.0, worst_conj = 0.0;
  bool complete = scan.log.empty();
  for (Eigen::Index r = 0; r < scan.norms.rows(); ++r) {
    const double base = scan.norms(r, 0);
    for (Eigen::Index k = 0; k < scan.norms.cols(); ++k) {
      const double v = scan.norms(r, k);
      if (!std::isfinite(v)) {
        complete = false;
        continue;
      }
      worst_ratio = std::max(worst_ratio, v / base);
      worst_conj = std::max(worst_conj, std::abs(v - scan.conj_norms(r, k)) / v);
    }
  }
  const bool pass = complete && worst_ratio <= 2.0 && worst_conj <= 1e-10;
  return make(6, std::string("resolvent bound on five rays (") + (bc == BCKind::FreeFree ? "free-free" : "clamped-free") + ")",
              worst_ratio, 2.0, pass,
              "B " + num(B) + ", sup/base " + num(worst_ratio) + ", conjugation defect " +
                  num(worst_conj) + (complete ? "" : ", probes skipped"));
}

CheckResult check_hilbert_schmidt(const SuiteOptions& o) {
  const Setup s = setup(o, BCKind::FreeFree, 64);
  const double B = measured_resolvent_threshold(s.modes, o.theta0);
  std::vector<double> hs[2];
  int idx = 0;
  for (int n : {128, 256}) {
    const Grid g = chebyshev_grid(n, o.material.h);
    const DiscreteOperator op = assemble_linearization(assemble_pencil(o.material, g, BCKind::FreeFree));
    const GramMetric gm(op.gram);
    for (double a : five_ray_angles()) hs[idx].push_back(resolvent_hs_norm(op, gm, std::polar(B, a)));
    ++idx;
  }
  double worst = 0.0;
  for (std::size_t k = 0; k < hs[0].size(); ++k)
    worst = std::max(worst, std::abs(hs[1][k] - hs[0][k]) / hs[0][k]);
  return make(7, "Hilbert-Schmidt proxy n = 128 vs 256", worst, 0.1, worst <= 0.1,
              "five ray points at |beta| = " + num(B));
}

CheckResult check_non_self_adjoint(const SuiteOptions& o) {
  const Setup s = setup(o, BCKind::FreeFree, 64);
  const Witness w = nonorthogonality_witness(s.modes, s.op);
  const double d = gram_adjoint_defect(s.op);
  const bool pass = w.magnitude >= 0.01 && d >= 0.01;
  return make(8, "non-self-adjointness witness", w.magnitude, 0.01, pass,
              "pair (" + std::to_string(w.m) + ", " + std::to_string(w.n) + "), adjoint defect " + num(d));
}

CheckResult check_completeness(const SuiteOptions& o, BCKind bc) {
  const Setup s = setup(o, bc, 96);
  const auto sys = biorthogonalize(s.modes, s.op);
  const int K = static_cast<int>(s.modes.size());
  const int kmax = static_cast<int>(std::floor(0.8 * K));
  std::vector<int> ks;
  for (int k = 1; k <= K; ++k) ks.push_back(k);
  if (kmax < 1)
    return make(9, "completeness n = 96", 1.0, 1e-3, false, "too few retained modes");
  bool pass = true;
  double worst_at = 0.0;
  int worst_k = 0;
  for (int t = 0; t < 5; ++t) {
    const auto f = random_trig_field(s.grid, 2, o.seed + 100 + t);
    const auto rep = expand_field(sys, s.op, f, ks);
    for (std::size_t i = 1; i < rep.residuals.size(); ++i)
      if (rep.residuals[i] > rep.residuals[i - 1]) pass = false;
    worst_at = std::max(worst_at, rep.residuals[kmax - 1]);
    int first = K + 1;
    for (int i = 0; i < K; ++i)
      if (rep.residuals[i] <= 1e-3) {
        first = i + 1;
        break;
      }
    worst_k = std::max(worst_k, first);
  }
  pass = pass && worst_at <= 1e-3;
  return make(9, std::string("completeness n = 96 (") + (bc == BCKind::FreeFree ? "free-free" : "clamped-free") + ")",
              worst_at, 1e-3, pass,
              std::to_string(K) + " retained modes; residual <= 1e-3 reached by k = " +
                  std::to_string(worst_k) + " (limit " + std::to_string(kmax) + ")");
}

CheckResult check_jordan_chains(const SuiteOptions& o) {
  const Material& m = o.material;
  const double ct = m.transverse_speed();
  const DoubleRoot d = locate_double_root(m, Family::Symmetric, 0.8 / m.h, 2.85 * ct / m.h);
  Material mz = m;
  mz.omega = d.omega;
  const Setup z = setup(o, BCKind::FreeFree, 64, &mz);
  const auto chains = detect_jordan_chains(z.modes, z.pencil, 1e-4, o.chain_tol);
  double worst_res = std::numeric_limits<double>::infinity();
  int len = 0;
  for (const auto& c : chains) {
    if (std::abs(std::abs(c.beta.real()) - d.beta) > 1e-4 * std::max(1.0, d.beta)) continue;
    if (c.length() < 2) continue;
    double r = 0.0;
    for (double x : c.residuals) r = std::max(r, x);
    r = std::max(r, c.linearization_residual);
    if (c.length() > len || (c.length() == len && r < worst_res)) {
      len = c.length();
      worst_res = r;
    }
  }

  const Setup s = setup(o, BCKind::FreeFree, 64);
  const auto simple = detect_jordan_chains(s.modes, s.pencil, 1e-4, o.chain_tol);
  int spurious = 0, checked = 0;
  for (int i = 0; i < std::min<int>(20, s.modes.size()); ++i) {
    ++checked;
    for (const auto& c : simple)
      if (std::find(c.mode_indices.begin(), c.mode_indices.end(), i) != c.mode_indices.end() &&
          c.length() > 1)
        ++spurious;
  }
  const bool pass = len >= 2 && worst_res <= 1e-6 && spurious == 0 && checked == 20;
  return make(10, "Jordan chain at the double root", worst_res, 1e-6, pass,
              "double root beta " + num(d.beta) + ", omega " + num(d.omega) + ", chain length " +
                  std::to_string(len) + "; spurious chains at 20 simple eigenvalues: " +
                  std::to_string(spurious));
}

CheckResult check_clamped_free(const SuiteOptions& o) {
  const CheckResult a = check_oracle_equivalence(o, BCKind::ClampedFree);
  const CheckResult b = check_resolvent_rays(o, BCKind::ClampedFree);
  const CheckResult c = check_completeness(o, BCKind::ClampedFree);
  auto tag = [](const CheckResult& r) { return std::string(r.pass ? "pass" : "FAIL"); };
  return make(11, "clamped-free variant", static_cast<double>(a.pass + b.pass + c.pass), 3.0,
              a.pass && b.pass && c.pass,
              "oracle " + tag(a) + " [" + a.detail + "]; rays " + tag(b) + " [" + b.detail +
                  "]; completeness " + tag(c) + " [" + c.detail + "]");
}

std::vector<CheckResult> run_suite(const SuiteOptions& o) {
  return {check_oracle_equivalence(o, BCKind::FreeFree),
          check_sh_closed_form(o),
          check_symbol_identity(o),
          check_stable_solutions(o),
          check_coercivity(o),
          check_resolvent_rays(o, BCKind::FreeFree),
          check_hilbert_schmidt(o),
          check_non_self_adjoint(o),
          check_completeness(o, BCKind::FreeFree),
          check_jordan_chains(o),
          check_clamped_free(o)};
}

}  // namespace lamb
