#include "lamb/core.hpp"

#include <cmath>
#include <stdexcept>

namespace lamb {

double Material::longitudinal_speed() const {
  return std::sqrt((lambda + 2.0 * mu) / rho);
}

double Material::transverse_speed() const { return std::sqrt(mu / rho); }

void validate(const Material& m) {
  // NaN fails every comparison below, so test with negated predicates.
  if (!(m.mu > 0.0)) throw std::invalid_argument("μ ≤ 0");
  if (!(3.0 * m.lambda + 2.0 * m.mu > 0.0))
    throw std::invalid_argument("3λ+2μ ≤ 0");
  if (!(m.rho > 0.0)) throw std::invalid_argument("ρ ≤ 0");
  if (!(m.h > 0.0)) throw std::invalid_argument("h ≤ 0");
  if (!(m.omega > 0.0)) throw std::invalid_argument("ω ≤ 0");
  if (!std::isfinite(m.lambda) || !std::isfinite(m.mu) ||
      !std::isfinite(m.rho) || !std::isfinite(m.h) || !std::isfinite(m.omega))
    throw std::invalid_argument("non-finite material parameter");
}

Material make_material(double lambda, double mu, double rho, double h,
                       double omega) {
  Material m{lambda, mu, rho, h, omega};
  validate(m);
  return m;
}

PencilCoefficients pencil_coefficients(const Material& m) {
  const double l = m.lambda;
  const double g = m.mu;
  PencilCoefficients c;
  c.A = Eigen::Matrix2d{{l + 2 * g, 0.0}, {0.0, g}};
  c.B = Eigen::Matrix2d{{0.0, l + g}, {l + g, 0.0}};
  c.C = Eigen::Matrix2d{{g, 0.0}, {0.0, l + 2 * g}};
  c.D = Eigen::Matrix2d{{0.0, l}, {g, 0.0}};
  return c;
}

PencilCoefficients sh_coefficients(const Material& m) {
  PencilCoefficients c;
  c.A = Eigen::MatrixXd::Constant(1, 1, m.mu);
  c.B = Eigen::MatrixXd::Zero(1, 1);
  c.C = Eigen::MatrixXd::Constant(1, 1, m.mu);
  c.D = Eigen::MatrixXd::Zero(1, 1);
  return c;
}

Eigen::Matrix2cd principal_symbol(cplx xi, cplx beta, const Material& m) {
  const double l = m.lambda;
  const double g = m.mu;
  Eigen::Matrix2cd s;
  s(0, 0) = (l + 2 * g) * xi * xi + g * beta * beta;
  s(0, 1) = (l + g) * xi * beta;
  s(1, 0) = (l + g) * xi * beta;
  s(1, 1) = g * xi * xi + (l + 2 * g) * beta * beta;
  return s;
}

cplx symbol_det_L0(cplx xi, cplx beta, const Material& m) {
  const Eigen::Matrix2cd s = principal_symbol(xi, beta, m);
  return s(0, 0) * s(1, 1) - s(0, 1) * s(1, 0);
}

}  // namespace lamb
