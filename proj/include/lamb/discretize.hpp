#pragma once

#include <vector>

#include <Eigen/Dense>

#include "lamb/core.hpp"

namespace lamb {

/// Chebyshev-Gauss-Lobatto grid on [-h, h], nodes in ascending order.
/// The node set is exactly symmetric: nodes[n-1-j] == -nodes[j].
struct Grid {
  int n = 0;
  double h = 0.0;
  Eigen::VectorXd nodes;
  Eigen::MatrixXd d1;
  Eigen::MatrixXd d2;  ///< d1 * d1
  Eigen::VectorXd quad_weights;  ///< Clenshaw-Curtis
};

/// Throws std::invalid_argument for n < 3 or h <= 0.
Grid chebyshev_grid(int n, double h);

/// Matrices of the sesquilinear forms on grid functions stored
/// component-major (all nodes of v1, then all nodes of v3).  For grid vectors
/// v, w:  v^H g_a0 w ~ a_{0,L}(w, v), and likewise for l_L, b_L, c_L.
struct FormMatrices {
  Eigen::MatrixXd g_a0;
  Eigen::MatrixXd g_l;
  Eigen::MatrixXcd g_b;
  Eigen::MatrixXd g_c;
  Eigen::MatrixXd h1;  ///< |v|_1^2 + ||v||_0^2 (unweighted H1 inner product)
  double omega = 0.0;

  /// Matrix of a_L + beta b_L + beta^2 c_L with a_L = a_{0,L} - omega² l_L.
  Eigen::MatrixXcd quadratic_form(cplx beta) const;
};

FormMatrices sesquilinear_forms(const Material& m, const Grid& grid);
FormMatrices sesquilinear_forms(const Material& m, const PencilCoefficients& c,
                                const Grid& grid);

/// Square collocation pencil K0 + mu K1 + mu² K2 (mu = i beta).  Rows of
/// component c at node j sit at index c*n + j; the rows at the two end nodes
/// are replaced by the boundary operator.
struct DiscretePencil {
  Eigen::MatrixXd k0;
  Eigen::MatrixXd k1;
  Eigen::MatrixXd k2;
  BCKind bc = BCKind::FreeFree;
  Grid grid;
  Material material;
  PencilCoefficients coeffs;
  std::vector<int> boundary_rows;

  int components() const { return coeffs.components(); }
  int size() const { return static_cast<int>(k0.rows()); }

  Eigen::MatrixXcd eval(cplx mu) const;
  Eigen::MatrixXcd derivative(cplx mu) const;  ///< K1 + 2 mu K2
  Eigen::MatrixXcd second_derivative() const;  ///< 2 K2
};

DiscretePencil assemble_pencil(const Material& m, const Grid& grid, BCKind bc);
DiscretePencil assemble_pencil(const Material& m, const PencilCoefficients& c,
                               const Grid& grid, BCKind bc);

/// Row-replaced first-order form of the pencil acting on V = (v, mu v).
/// Eigenpairs solve m V = z diag(e) V; e is 1 except on the replaced rows,
/// which carry the boundary operator A d/dx V1 + D V2 (free end) or the
/// clamping V1 = 0, V2 = 0 (clamped end).
struct DiscreteOperator {
  Eigen::MatrixXd m;
  Eigen::VectorXd e;
  Eigen::MatrixXd gram;  ///< a_{0,L}(U1,.) + (U1,.)_0 + c_L(U2,.)
  std::vector<int> boundary_row_indices;
  int n = 0;
  int components = 0;

  int size() const { return static_cast<int>(m.rows()); }
  int block() const { return n * components; }
  Eigen::MatrixXd mass() const { return e.asDiagonal(); }
};

DiscreteOperator assemble_linearization(const DiscretePencil& pencil);

/// Gram matrix of the energy inner product on (U1, U2).
Eigen::MatrixXd energy_gram(const PencilCoefficients& c, const Grid& grid);

}  // namespace lamb
