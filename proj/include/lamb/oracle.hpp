#pragma once

#include <string>
#include <vector>

#include "lamb/core.hpp"

namespace lamb {

/// Which closed-form boundary determinant to use.  Symmetric/Antisymmetric
/// are the free-free parity-reduced 2x2 determinants; FreeFree and
/// ClampedFree are full 4x4 determinants.
enum class Family { Symmetric, Antisymmetric, FreeFree, ClampedFree };

const char* family_name(Family f);

/// Rayleigh-Lamb dispersion function assembled from entire (cosh/sinh)
/// fundamental solutions of the strong-form ODE system.  Zeros are the
/// Lamb wavenumbers beta.  Even in beta and real on the real axis.
class DispersionFunction {
 public:
  DispersionFunction(const Material& m, Family f);

  cplx operator()(cplx beta) const;
  /// Value times exp(-k (|Re p| + |Re q|) h), k = 1 (2x2) or 2 (4x4).  Same
  /// phase as operator(), bounded magnitude.
  cplx scaled(cplx beta) const;

  const Material& material() const { return m_; }
  Family family() const { return f_; }

 private:
  Material m_;
  Family f_;
};

struct SearchBox {
  double re_min, re_max, im_min, im_max;
};

struct RootSearchReport {
  std::vector<cplx> roots;  ///< repeated according to multiplicity
  int contour_count = 0;    ///< argument-principle count over the final box
  SearchBox box{};          ///< box actually used (after perturbations)
  int retries = 0;
  bool certified = false;   ///< contour_count == roots.size()
  std::string message;
};

/// All zeros in the box, Newton-polished, with an argument-principle count.
/// Throws std::runtime_error if the contour keeps hitting a root, or if more
/// than max_roots zeros are present.
RootSearchReport rayleigh_lamb_roots(const Material& m, Family f, const SearchBox& box,
                                     int max_roots = 1000);

/// Winding number of f around the boundary of box (adaptive sampling).
/// Throws std::runtime_error if the boundary passes through a zero.
int argument_principle_count(const DispersionFunction& f, const SearchBox& box);

/// Newton with centered-difference derivative, step 1e-7 max(1, |beta|).
cplx newton_polish(const DispersionFunction& f, cplx beta0, int max_iter = 60);

struct SHMode {
  int n;
  cplx beta;
  double shape(double x, double h) const;  ///< cos(n pi (x + h) / (2h))
};

/// beta_n = principal sqrt(omega² rho / mu - (n pi / 2h)²), n = 0..n_max.
std::vector<SHMode> sh_modes_closed_form(const Material& m, int n_max);

struct StableSolutionReport {
  cplx beta;
  int gamma = 1;
  int epsilon = 1;
  double ode_residual_w1 = 0.0;  ///< relative, max over the y-grid
  double ode_residual_w2 = 0.0;
  cplx boundary_det;             ///< determinant of the normalised 2x2 system
};

/// Exponentially decaying solutions of the half-line constant-coefficient
/// system and their boundary determinant.  Throws std::domain_error
/// ("no stable choice") when Re(beta) = 0, and std::invalid_argument for
/// beta = 0 or gamma not in {-1, 1}.
StableSolutionReport stable_solution_check(const Material& m, cplx beta, int gamma);

/// Rayleigh wave speed (root of the Rayleigh function in (0, c_T)).
double rayleigh_speed(const Material& m);
/// Low-frequency plate speed 2 sqrt(mu (lambda + mu) / (rho (lambda + 2 mu))).
double plate_speed(const Material& m);
/// beta = 0 frequencies n pi c / (2h) for c in {c_L, c_T}, n = 1..n_max, sorted.
std::vector<double> cutoff_frequencies(const Material& m, int n_max);

struct DoubleRoot {
  double beta = 0.0;
  double omega = 0.0;
  double residual = 0.0;  ///< |F| + |dF/dbeta| at the returned point
  int iterations = 0;
};

/// Real double root (F = dF/dbeta = 0) of the given family in (beta, omega),
/// by 2D Newton from an initial guess (zero-group-velocity point).  Only the
/// parity-reduced families (real on the real axis) are accepted.
DoubleRoot locate_double_root(const Material& m, Family f, double beta0, double omega0);

}  // namespace lamb
