#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lamb/discretize.hpp"

namespace lamb {

enum class Parity { Symmetric, Antisymmetric, Mixed };

const char* parity_name(Parity p);

/// One retained eigenpair, mu = i beta.
struct Mode {
  cplx mu;
  cplx beta;
  Eigen::VectorXcd v;      ///< grid values of (v1, v3), component-major
  Eigen::VectorXcd big_v;  ///< (v, mu v), unit gram norm
  double residual = 0.0;   ///< ||P(mu) v|| / ||v||
  double op_residual = 0.0;   ///< ||(m - mu e) V|| / (||m|| ||V||)
  double block_defect = 0.0;  ///< ||V2 - z V1|| / ||V|| of the raw QZ vector
  Parity parity = Parity::Mixed;
  int chain_length = 1;

  // Raw QZ vectors of the constrained system (right gram-normalised; left
  // satisfies y^H m = z y^H diag(e)).  Used for biorthogonal pairings.
  Eigen::VectorXcd qz_right;
  Eigen::VectorXcd qz_left;
};

struct SolveOptions {
  double accept_tol = 1e-8;
  double match_tol = 1e-6;     ///< relative to max(1, |beta|)
  double cluster_tol = 1e-4;   ///< relative to max(1, |beta|)
  int polish_steps = 2;
  bool filter = true;          ///< compare against the 2n spectrum
};

struct ModeSet {
  std::vector<Mode> modes;  ///< sorted by |beta|, ties by Re, then Im (descending)
  int n = 0;
  BCKind bc = BCKind::FreeFree;
  int finite_count = 0;     ///< finite QZ eigenvalues before filtering
  int unmatched = 0;        ///< dropped by the two-resolution filter
  int rejected = 0;         ///< dropped by accept_tol after polishing
  double m_norm = 0.0;      ///< spectral norm of the operator matrix

  std::size_t size() const { return modes.size(); }
};

/// Dense QZ of the constrained linearization, two-resolution filtering,
/// inverse-iteration polishing on the pencil, gram normalisation.
/// Throws std::runtime_error if LAPACK fails.
ModeSet solve_modes(const DiscreteOperator& op, const DiscretePencil& pencil,
                    const SolveOptions& opts = {});

/// Finite eigenvalues z = mu of the constrained pencil (no vectors).
std::vector<cplx> finite_eigenvalues(const DiscreteOperator& op);

/// Symmetric if v1 is odd and v3 even to within tol, antisymmetric for the
/// mirrored pattern, else mixed.  One-component fields: even -> symmetric.
Parity classify_parity(const Eigen::VectorXcd& v, const Grid& grid,
                       double tol = 1e-6);
Parity classify_parity(const Mode& mode, const Grid& grid, double tol = 1e-6);

struct JordanChain {
  cplx mu;
  cplx beta;
  std::vector<Eigen::VectorXcd> vectors;  ///< v_0 ... v_k
  std::vector<double> residuals;          ///< per-relation relative residual
  double linearization_residual = 0.0;    ///< worst stacked-chain defect
  std::vector<int> mode_indices;          ///< members of the cluster
  bool ill_conditioned = false;
  std::string note;

  int length() const { return static_cast<int>(vectors.size()); }
};

/// Groups eigenvalues within cluster_tol * max(1, |beta|) and builds one chain
/// per Jordan block.  Sizes the chains by comparing the eigenvector span rank
/// to the cluster size; chain vectors come from the bordered least-squares
/// system P v_p = -P' v_{p-1} - P''/2 v_{p-2}, v_0^H v_p = 0.  A chain is
/// extended only while the relation residual stays below chain_tol.
std::vector<JordanChain> detect_jordan_chains(const ModeSet& modes,
                                              const DiscretePencil& pencil,
                                              double cluster_tol = 1e-4,
                                              double chain_tol = 1e-6);

/// Writes chain lengths back into the mode set.
void annotate_chain_lengths(ModeSet& modes, const std::vector<JordanChain>& chains);

struct BiorthogonalSystem {
  Eigen::MatrixXcd right;  ///< columns V_n, unit gram norm
  Eigen::MatrixXcd left;   ///< columns W_n with <V_n, W_m>_gram ~ delta_nm
  Eigen::MatrixXcd pairing;  ///< pairing(m, n) = W_m^H G V_n
  std::vector<cplx> mu;
  std::vector<std::vector<int>> blocks;  ///< index groups treated jointly
  bool singular = false;
};

/// Left vectors from the gram adjoint: W = G^{-1} diag(e) y, scaled so the
/// pairing has unit diagonal.  Clusters are paired as blocks.
BiorthogonalSystem biorthogonalize(const ModeSet& modes, const DiscreteOperator& op,
                                   double cluster_tol = 1e-4);

}  // namespace lamb
