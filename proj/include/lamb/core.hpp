#pragma once

#include <complex>

#include <Eigen/Dense>

namespace lamb {

using cplx = std::complex<double>;

/// Homogeneous isotropic plate of thickness 2h driven at angular frequency omega.
///
/// Values are taken literally (SI or nondimensional); the test-suite uses the
/// nondimensional convention mu = rho = h = 1.  Construct through
/// make_material() to get the invariants checked.
struct Material {
  double lambda = 0.0;  ///< first Lame coefficient
  double mu = 0.0;      ///< shear modulus
  double rho = 0.0;     ///< mass density
  double h = 0.0;       ///< half-thickness
  double omega = 0.0;   ///< angular frequency

  double longitudinal_speed() const;
  double transverse_speed() const;
};

/// Validates and returns a Material.  Throws std::invalid_argument whose
/// message names the violated constraint, e.g. "h ≤ 0" or "3λ+2μ ≤ 0".
Material make_material(double lambda, double mu, double rho, double h,
                       double omega);

/// Throws like make_material() if any invariant is violated.
void validate(const Material& m);

/// Coefficient matrices of the strong form: interior operator
/// A d²/dx² + mu_s B d/dx + omega² rho + mu_s² C and boundary operator
/// A d/dx + mu_s D, with mu_s = i beta.  The Lamb problem uses 2x2 blocks in
/// (v1, v3) order; the decoupled SH problem is the 1x1 case.
struct PencilCoefficients {
  Eigen::MatrixXd A;
  Eigen::MatrixXd B;
  Eigen::MatrixXd C;
  Eigen::MatrixXd D;

  int components() const { return static_cast<int>(A.rows()); }
};

/// A = diag(λ+2μ, μ), B = [[0, λ+μ], [λ+μ, 0]], C = diag(μ, λ+2μ),
/// D = [[0, λ], [μ, 0]].
PencilCoefficients pencil_coefficients(const Material& m);

/// Scalar shear-horizontal problem: A = C = μ, B = D = 0.
PencilCoefficients sh_coefficients(const Material& m);

enum class BCKind { FreeFree, ClampedFree };

/// Principal symbol L0(xi, beta) = A xi² + beta B xi + beta² C.
Eigen::Matrix2cd principal_symbol(cplx xi, cplx beta, const Material& m);

/// Determinant of principal_symbol(), computed from the 2x2 entries.
cplx symbol_det_L0(cplx xi, cplx beta, const Material& m);

}  // namespace lamb
