#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lamb/discretize.hpp"
#include "lamb/modes.hpp"

namespace lamb {

// ---------------------------------------------------------------- resolvent

/// Cholesky factor of the gram matrix; norms in the energy metric are
/// Euclidean norms after x -> L^T x.
class GramMetric {
 public:
  explicit GramMetric(const Eigen::MatrixXd& gram);

  double norm(const Eigen::VectorXcd& x) const;
  cplx inner(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y) const;  ///< y^H G x
  /// L^T X L^{-T}: the matrix whose Euclidean norms are the gram norms of X.
  Eigen::MatrixXcd similar(const Eigen::MatrixXcd& x) const;
  Eigen::MatrixXcd to_euclid(const Eigen::MatrixXcd& x) const;  ///< L^T x

 private:
  Eigen::MatrixXd l_;
};

struct ResolventSolve {
  Eigen::VectorXcd u;
  double residual = 0.0;  ///< relative residual of the constrained system
};

/// (A - i beta) U = F on the constrained linearization: (m - z e) U = e F.
/// Throws std::runtime_error when the matrix is numerically singular.
ResolventSolve resolvent_solve(const DiscreteOperator& op, cplx beta,
                               const Eigen::VectorXcd& f);

/// Same solve through the pencil: P(i beta) U1 = -C F2 - B D1 F1 - i beta C F1
/// on interior rows, -D F1(+-h) on traction rows, then U2 = i beta U1 + F1.
/// For clamped-free F1 must vanish at -h.
ResolventSolve resolvent_solve_pencil(const DiscretePencil& pencil, cplx beta,
                                      const Eigen::VectorXcd& f);

struct ResolventNorms {
  double norm = 0.0;     ///< gram operator norm of (m - z e)^{-1} e
  double hs_norm = 0.0;  ///< gram Frobenius norm
};

ResolventNorms resolvent_norms(const DiscreteOperator& op, const GramMetric& g, cplx beta);
/// Frobenius part only (cheaper; no SVD).
double resolvent_hs_norm(const DiscreteOperator& op, const GramMetric& g, cplx beta);

/// arg(beta) of the five rays, 2(j-1) pi / 5 for j = 1..5 (arg(i beta) is
/// that plus pi / 2).
std::vector<double> five_ray_angles();
bool in_sector(cplx beta, double theta0);

struct ResolventScan {
  double theta0 = 0.0;
  std::vector<double> rays;     ///< arg(beta)
  std::vector<double> moduli;
  Eigen::MatrixXd norms;        ///< rays x moduli, NaN where skipped
  Eigen::MatrixXd hs_norms;
  Eigen::MatrixXd conj_norms;   ///< norms at conj(beta)
  std::vector<std::string> log;
};

/// Throws std::invalid_argument unless 2 pi / 5 < theta0 < pi / 2 and moduli
/// are positive and increasing.  Probes within 1e-6 max(1,|z|) of a listed
/// eigenvalue mu are skipped and logged.
ResolventScan resolvent_scan(const DiscreteOperator& op, double theta0,
                             const std::vector<double>& moduli,
                             const std::vector<cplx>& spectrum_mu = {},
                             bool with_conjugates = true);

/// 1.5 x the largest |beta| of retained modes inside the sector (at least 1).
double measured_resolvent_threshold(const ModeSet& modes, double theta0);

/// Smallest singular value of the constrained (A - z) in the gram metric,
/// as 1 / ||(m - z e)^{-1} e||_G.
double sigma_min_gram(const DiscreteOperator& op, const GramMetric& g, cplx z);

// ---------------------------------------------------------------- coercivity

/// Re{a_L + beta b_L + beta² c_L}(v, v) / |v|²_H1 from the complex form matrix.
double rayleigh_quotient(const FormMatrices& f, cplx beta, const Eigen::VectorXcd& v);
/// Real-beta path: (a_L(v,v) + a b_L(v,v) + a² c_L(v,v)) / |v|²_H1.
double rayleigh_quotient_real(const FormMatrices& f, double a, const Eigen::VectorXcd& v);
/// v^H (a_L + beta b_L + beta² c_L) v.
cplx form_value(const FormMatrices& f, cplx beta, const Eigen::VectorXcd& v);
/// Exact discrete minimum of rayleigh_quotient over v (Hermitian pencil).
double min_rayleigh_quotient(const FormMatrices& f, cplx beta);

struct CoercivitySample {
  cplx beta;
  double min_quotient = 0.0;     ///< exact discrete minimum
  double random_min = 0.0;       ///< minimum over the random fields
};

struct CoercivityReport {
  double beta0 = 0.0;
  double alpha = 0.0;
  double c_const = 0.0;
  bool found = false;
  int n_random = 0;
  std::vector<CoercivitySample> samples;
};

/// Smallest beta0 = 0.25 * 1.25^k such that the exact minimum quotient is
/// positive at the 20 sector points |a| = beta0 10^(j/4), j = 0..4,
/// a = +-|a|, b = +-alpha |a|; then n_samples random fields per point.
CoercivityReport coercivity_scan(const FormMatrices& f, const Grid& grid, double alpha,
                                 int n_samples, std::uint64_t seed);

// ------------------------------------------------------------- completeness

enum class ExpansionMethod { LeastSquares, Biorthogonal };

struct ExpansionReport {
  ExpansionMethod method = ExpansionMethod::LeastSquares;
  std::vector<int> n_modes_used;
  std::vector<double> residuals;               ///< relative, gram norm
  std::vector<Eigen::VectorXcd> coefficients;  ///< per k
  bool ill_conditioned = false;
};

/// Best approximation in the gram metric from the leading columns of basis.
ExpansionReport expand_least_squares(const Eigen::MatrixXcd& basis, const GramMetric& g,
                                     const Eigen::VectorXcd& target,
                                     const std::vector<int>& ks);

ExpansionReport expand_field(const BiorthogonalSystem& sys, const DiscreteOperator& op,
                             const Eigen::VectorXcd& target, const std::vector<int>& ks,
                             ExpansionMethod method = ExpansionMethod::LeastSquares);

/// Seeded field in H: each of the four blocks is
/// (1 - (x/h)²)^6 sum_{k=0..4} (a_k cos(k pi x / 2h) + b_k sin(k pi x / 2h))
/// with standard normal a_k, b_k.  The window keeps the field compatible with
/// both boundary conditions.
Eigen::VectorXcd random_trig_field(const Grid& grid, int components, std::uint64_t seed);

// --------------------------------------------------------- non-self-adjoint

struct Witness {
  int m = -1;
  int n = -1;
  cplx value;
  double magnitude = 0.0;
};

/// Largest |<V_m, V_n>_gram| over unit modes with distinct eigenvalues.
Witness nonorthogonality_witness(const ModeSet& modes, const DiscreteOperator& op,
                                 double cluster_tol = 1e-4);

/// ||G^{-1} m^T G - m||_F / ||m||_F.
double gram_adjoint_defect(const DiscreteOperator& op);

}  // namespace lamb
