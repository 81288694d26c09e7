#include "lamb/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace lamb {

namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;

constexpr cplx I1{0.0, 1.0};
constexpr double pi = std::numbers::pi;
const double nan_v = std::numeric_limits<double>::quiet_NaN();

MatrixXcd shifted(const DiscreteOperator& op, cplx z) {
  MatrixXcd a = op.m.cast<cplx>();
  a.diagonal() -= z * op.e.cast<cplx>();
  return a;
}

// Euclidean 2-norm from the top eigenvalue of S^H S.
double two_norm(const MatrixXcd& s) {
  const MatrixXcd h = s.adjoint() * s;
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

MatrixXcd resolvent_matrix(const DiscreteOperator& op, cplx beta) {
  const cplx z = I1 * beta;
  Eigen::PartialPivLU<MatrixXcd> lu(shifted(op, z));
  if (!(lu.rcond() > 1e-17))
    throw std::runtime_error("resolvent: matrix numerically singular");
  MatrixXcd e = op.e.cast<cplx>().asDiagonal();
  return lu.solve(e);
}

}  // namespace

GramMetric::GramMetric(const Eigen::MatrixXd& gram) {
  Eigen::LLT<MatrixXd> llt(gram);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("GramMetric: gram matrix not positive definite");
  l_ = llt.matrixL();
}

Eigen::MatrixXcd GramMetric::to_euclid(const Eigen::MatrixXcd& x) const {
  return l_.transpose().cast<cplx>() * x;
}

double GramMetric::norm(const Eigen::VectorXcd& x) const { return to_euclid(x).norm(); }

cplx GramMetric::inner(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y) const {
  const VectorXcd a = to_euclid(x);
  const VectorXcd b = to_euclid(y);
  return b.dot(a);
}

Eigen::MatrixXcd GramMetric::similar(const Eigen::MatrixXcd& x) const {
  const MatrixXcd y = to_euclid(x);
  // y L^{-T} = (L^{-1} y^T)^T
  const MatrixXcd lc = l_.cast<cplx>();
  const MatrixXcd yt = y.transpose();
  return lc.triangularView<Eigen::Lower>().solve(yt).transpose();
}

ResolventSolve resolvent_solve(const DiscreteOperator& op, cplx beta,
                               const Eigen::VectorXcd& f) {
  if (f.size() != op.size()) throw std::invalid_argument("resolvent_solve: size mismatch");
  const MatrixXcd a = shifted(op, I1 * beta);
  Eigen::PartialPivLU<MatrixXcd> lu(a);
  if (!(lu.rcond() > 1e-17))
    throw std::runtime_error("resolvent_solve: matrix numerically singular");
  const VectorXcd rhs = op.e.cast<cplx>().cwiseProduct(f);
  ResolventSolve r;
  r.u = lu.solve(rhs);
  const double scale = a.cwiseAbs().rowwise().sum().maxCoeff() * r.u.norm() + rhs.norm();
  r.residual = scale > 0.0 ? (a * r.u - rhs).norm() / scale : 0.0;
  return r;
}

ResolventSolve resolvent_solve_pencil(const DiscretePencil& p, cplx beta,
                                      const Eigen::VectorXcd& f) {
  const int n = p.grid.n;
  const int k = p.components();
  const int b = n * k;
  if (f.size() != 2 * b) throw std::invalid_argument("resolvent_solve_pencil: size mismatch");
  const cplx z = I1 * beta;
  const VectorXcd f1 = f.head(b);
  const VectorXcd f2 = f.tail(b);
  const auto& c = p.coeffs;

  VectorXcd rhs = VectorXcd::Zero(b);
  for (int r = 0; r < k; ++r)
    for (int s = 0; s < k; ++s) {
      const VectorXcd f1s = f1.segment(s * n, n);
      const VectorXcd d1f = p.grid.d1.cast<cplx>() * f1s;
      rhs.segment(r * n, n) -= c.C(r, s) * (f2.segment(s * n, n) + z * f1s) + c.B(r, s) * d1f;
    }
  for (int r : p.boundary_rows) {
    const int comp = r / n;
    const int node = r % n;
    const bool clamped = p.bc == BCKind::ClampedFree && node == 0;
    cplx v = 0.0;
    if (!clamped)
      for (int s = 0; s < k; ++s) v -= c.D(comp, s) * f1(s * n + node);
    rhs(r) = v;
  }

  const MatrixXcd P = p.eval(z);
  Eigen::PartialPivLU<MatrixXcd> lu(P);
  if (!(lu.rcond() > 1e-17))
    throw std::runtime_error("resolvent_solve_pencil: matrix numerically singular");
  ResolventSolve out;
  const VectorXcd u1 = lu.solve(rhs);
  out.u.resize(2 * b);
  out.u.head(b) = u1;
  out.u.tail(b) = z * u1 + f1;
  if (p.bc == BCKind::ClampedFree)
    for (int s = 0; s < k; ++s) out.u(b + s * n) = 0.0;
  const double scale = P.cwiseAbs().rowwise().sum().maxCoeff() * u1.norm() + rhs.norm();
  out.residual = scale > 0.0 ? (P * u1 - rhs).norm() / scale : 0.0;
  return out;
}

ResolventNorms resolvent_norms(const DiscreteOperator& op, const GramMetric& g, cplx beta) {
  const MatrixXcd s = g.similar(resolvent_matrix(op, beta));
  return {two_norm(s), s.norm()};
}

double resolvent_hs_norm(const DiscreteOperator& op, const GramMetric& g, cplx beta) {
  return g.similar(resolvent_matrix(op, beta)).norm();
}

std::vector<double> five_ray_angles() {
  std::vector<double> a;
  for (int j = 1; j <= 5; ++j) a.push_back(2.0 * (j - 1) * pi / 5.0);
  return a;
}

bool in_sector(cplx beta, double theta0) {
  if (beta == 0.0) return true;
  const double a = std::abs(std::arg(beta));
  return a <= theta0 + 1e-12 || a >= pi - theta0 - 1e-12;
}

ResolventScan resolvent_scan(const DiscreteOperator& op, double theta0,
                             const std::vector<double>& moduli,
                             const std::vector<cplx>& spectrum_mu, bool with_conjugates) {
  if (!(theta0 > 2.0 * pi / 5.0 && theta0 < pi / 2.0))
    throw std::invalid_argument("resolvent_scan: theta0 outside (2π/5, π/2)");
  if (moduli.empty()) throw std::invalid_argument("resolvent_scan: no moduli");
  for (std::size_t i = 0; i < moduli.size(); ++i)
    if (!(moduli[i] > 0.0) || (i > 0 && !(moduli[i] > moduli[i - 1])))
      throw std::invalid_argument("resolvent_scan: moduli must be positive and increasing");

  const GramMetric g(op.gram);
  ResolventScan s;
  s.theta0 = theta0;
  s.rays = five_ray_angles();
  s.moduli = moduli;
  const auto nr = static_cast<Eigen::Index>(s.rays.size());
  const auto nm = static_cast<Eigen::Index>(moduli.size());
  s.norms = MatrixXd::Constant(nr, nm, nan_v);
  s.hs_norms = MatrixXd::Constant(nr, nm, nan_v);
  s.conj_norms = MatrixXd::Constant(nr, nm, nan_v);

  auto collides = [&](cplx beta) {
    const cplx z = I1 * beta;
    for (cplx mu : spectrum_mu)
      if (std::abs(mu - z) <= 1e-6 * std::max(1.0, std::abs(z))) return true;
    return false;
  };

  for (Eigen::Index r = 0; r < nr; ++r) {
    for (Eigen::Index k = 0; k < nm; ++k) {
      const cplx beta = std::polar(moduli[k], s.rays[r]);
      if (!in_sector(beta, theta0))
        throw std::logic_error("resolvent_scan: ray outside the sector");
      if (collides(beta)) {
        s.log.push_back("skipped ray " + std::to_string(r) + " modulus " +
                        std::to_string(moduli[k]) + ": eigenvalue collision");
        continue;
      }
      try {
        const auto nv = resolvent_norms(op, g, beta);
        s.norms(r, k) = nv.norm;
        s.hs_norms(r, k) = nv.hs_norm;
        if (with_conjugates) s.conj_norms(r, k) = resolvent_norms(op, g, std::conj(beta)).norm;
      } catch (const std::runtime_error& e) {
        s.log.push_back("skipped ray " + std::to_string(r) + " modulus " +
                        std::to_string(moduli[k]) + ": " + e.what());
      }
    }
  }
  return s;
}

double measured_resolvent_threshold(const ModeSet& modes, double theta0) {
  double b = 0.0;
  for (const auto& m : modes.modes)
    if (in_sector(m.beta, theta0)) b = std::max(b, std::abs(m.beta));
  return std::max(1.0, 1.5 * b);
}

double sigma_min_gram(const DiscreteOperator& op, const GramMetric& g, cplx z) {
  try {
    return 1.0 / resolvent_norms(op, g, -I1 * z).norm;
  } catch (const std::runtime_error&) {
    return 0.0;
  }
}

double rayleigh_quotient(const FormMatrices& f, cplx beta, const Eigen::VectorXcd& v) {
  const cplx num = form_value(f, beta, v);
  const double den = (v.adjoint() * (f.h1 * v))(0).real();
  return num.real() / den;
}

double rayleigh_quotient_real(const FormMatrices& f, double a, const Eigen::VectorXcd& v) {
  auto q = [&](const auto& m) { return (v.adjoint() * (m * v))(0).real(); };
  const double al = q(f.g_a0) - f.omega * f.omega * q(f.g_l);
  const double num = al + a * q(f.g_b) + a * a * q(f.g_c);
  return num / q(f.h1);
}

cplx form_value(const FormMatrices& f, cplx beta, const Eigen::VectorXcd& v) {
  return (v.adjoint() * (f.quadratic_form(beta) * v))(0);
}

double min_rayleigh_quotient(const FormMatrices& f, cplx beta) {
  const MatrixXcd q = f.quadratic_form(beta);
  const MatrixXcd h = 0.5 * (q + q.adjoint());
  Eigen::GeneralizedSelfAdjointEigenSolver<MatrixXcd> es(h, f.h1.cast<cplx>(),
                                                          Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("min_rayleigh_quotient: eigensolver failed");
  return es.eigenvalues().minCoeff();
}

namespace {

std::vector<cplx> sector_points(double beta0, double alpha) {
  std::vector<cplx> pts;
  for (int j = 0; j <= 4; ++j) {
    const double a = beta0 * std::pow(10.0, j / 4.0);
    for (double sa : {1.0, -1.0})
      for (double sb : {1.0, -1.0}) pts.emplace_back(sa * a, sb * alpha * a);
  }
  return pts;
}

VectorXcd random_smooth(const Grid& grid, int components, std::mt19937_64& gen) {
  std::normal_distribution<double> nd;
  const int n = grid.n;
  VectorXcd v = VectorXcd::Zero(n * components);
  for (int c = 0; c < components; ++c)
    for (int k = 0; k <= 6; ++k) {
      const cplx a(nd(gen), nd(gen));
      for (int j = 0; j < n; ++j)
        v(c * n + j) += a / (1.0 + k) *
                        std::cos(k * pi * (grid.nodes(j) + grid.h) / (2.0 * grid.h));
    }
  return v;
}

}  // namespace

CoercivityReport coercivity_scan(const FormMatrices& f, const Grid& grid, double alpha,
                                 int n_samples, std::uint64_t seed) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("coercivity_scan: alpha outside (0, 1)");
  const int components = static_cast<int>(f.g_c.rows()) / grid.n;
  CoercivityReport rep;
  rep.alpha = alpha;
  rep.n_random = n_samples;

  double beta0 = 0.25;
  for (int k = 0; k < 80; ++k, beta0 *= 1.25) {
    bool ok = true;
    for (cplx b : sector_points(beta0, alpha))
      if (!(min_rayleigh_quotient(f, b) > 0.0)) {
        ok = false;
        break;
      }
    if (ok) {
      rep.found = true;
      break;
    }
  }
  if (!rep.found) return rep;
  rep.beta0 = beta0;

  std::mt19937_64 gen(seed);
  std::vector<VectorXcd> fields;
  for (int s = 0; s < n_samples; ++s) fields.push_back(random_smooth(grid, components, gen));

  rep.c_const = std::numeric_limits<double>::infinity();
  for (cplx b : sector_points(beta0, alpha)) {
    CoercivitySample cs;
    cs.beta = b;
    cs.min_quotient = min_rayleigh_quotient(f, b);
    cs.random_min = std::numeric_limits<double>::infinity();
    for (const auto& v : fields) cs.random_min = std::min(cs.random_min, rayleigh_quotient(f, b, v));
    rep.c_const = std::min(rep.c_const, cs.min_quotient);
    rep.samples.push_back(cs);
  }
  return rep;
}

ExpansionReport expand_least_squares(const Eigen::MatrixXcd& basis, const GramMetric& g,
                                     const Eigen::VectorXcd& target,
                                     const std::vector<int>& ks) {
  ExpansionReport rep;
  rep.method = ExpansionMethod::LeastSquares;
  int kmax = 0;
  for (int k : ks) {
    if (k < 0 || k > basis.cols()) throw std::invalid_argument("expand_least_squares: bad k");
    kmax = std::max(kmax, k);
  }
  const VectorXcd t = g.to_euclid(target);
  const double tn = t.norm();
  if (!(tn > 0.0) || !std::isfinite(tn))
    throw std::invalid_argument("expand_least_squares: target has no finite nonzero norm");

  const MatrixXcd y = g.to_euclid(basis.leftCols(kmax));
  Eigen::HouseholderQR<MatrixXcd> qr(y);
  const VectorXcd q = qr.householderQ().adjoint() * t;
  // tail[k] = sum_{i >= k} |q_i|², accumulated backwards: monotone in k
  std::vector<double> tail(q.size() + 1, 0.0);
  for (Eigen::Index i = q.size() - 1; i >= 0; --i) tail[i] = tail[i + 1] + std::norm(q(i));

  const MatrixXcd& r = qr.matrixQR();
  const double r00 = kmax > 0 ? std::abs(r(0, 0)) : 1.0;
  for (int k = 0; k < kmax; ++k)
    if (std::abs(r(k, k)) < 1e-12 * r00) rep.ill_conditioned = true;

  for (int k : ks) {
    rep.n_modes_used.push_back(k);
    rep.residuals.push_back(std::sqrt(tail[k]) / tn);
    VectorXcd c = VectorXcd::Zero(k);
    if (k > 0)
      c = r.topLeftCorner(k, k).triangularView<Eigen::Upper>().solve(q.head(k));
    rep.coefficients.push_back(c);
  }
  return rep;
}

ExpansionReport expand_field(const BiorthogonalSystem& sys, const DiscreteOperator& op,
                             const Eigen::VectorXcd& target, const std::vector<int>& ks,
                             ExpansionMethod method) {
  const GramMetric g(op.gram);
  if (method == ExpansionMethod::LeastSquares)
    return expand_least_squares(sys.right, g, target, ks);

  ExpansionReport rep;
  rep.method = ExpansionMethod::Biorthogonal;
  rep.ill_conditioned = sys.singular;
  const VectorXcd gt = op.gram * target;
  const VectorXcd coef = sys.left.adjoint() * gt;
  const double tn = g.norm(target);
  for (int k : ks) {
    if (k < 0 || k > sys.right.cols()) throw std::invalid_argument("expand_field: bad k");
    const VectorXcd partial = sys.right.leftCols(k) * coef.head(k);
    rep.n_modes_used.push_back(k);
    rep.residuals.push_back(g.norm(target - partial) / tn);
    rep.coefficients.push_back(coef.head(k));
  }
  return rep;
}

Eigen::VectorXcd random_trig_field(const Grid& grid, int components, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> nd;
  const int n = grid.n;
  const double h = grid.h;
  VectorXcd u = VectorXcd::Zero(2 * components * n);
  for (int blk = 0; blk < 2 * components; ++blk) {
    for (int k = 0; k <= 4; ++k) {
      const double a = nd(gen);
      const double b = nd(gen);
      for (int j = 0; j < n; ++j) {
        const double x = grid.nodes(j);
        u(blk * n + j) += a * std::cos(k * pi * x / (2.0 * h)) + b * std::sin(k * pi * x / (2.0 * h));
      }
    }
    for (int j = 0; j < n; ++j) {
      const double s = 1.0 - (grid.nodes(j) / h) * (grid.nodes(j) / h);
      u(blk * n + j) *= std::pow(s, 6);
    }
  }
  return u;
}

Witness nonorthogonality_witness(const ModeSet& modes, const DiscreteOperator& op,
                                 double cluster_tol) {
  Witness w;
  const int nm = static_cast<int>(modes.size());
  if (nm < 2) return w;
  MatrixXcd v(op.size(), nm);
  for (int i = 0; i < nm; ++i) v.col(i) = modes.modes[i].big_v;
  const MatrixXcd ip = v.adjoint() * (op.gram * v);
  for (int i = 0; i < nm; ++i)
    for (int j = i + 1; j < nm; ++j) {
      const cplx a = modes.modes[i].mu, b = modes.modes[j].mu;
      if (std::abs(a - b) <= cluster_tol * std::max(1.0, std::abs(a))) continue;
      if (std::abs(ip(j, i)) > w.magnitude) {
        w = {i, j, ip(j, i), std::abs(ip(j, i))};
      }
    }
  return w;
}

double gram_adjoint_defect(const DiscreteOperator& op) {
  Eigen::LLT<MatrixXd> llt(op.gram);
  const MatrixXd adj = llt.solve(op.m.transpose() * op.gram);
  return (adj - op.m).norm() / op.m.norm();
}

}  // namespace lamb
