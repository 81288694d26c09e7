#include "lamb/discretize.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lamb {

namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;

// Block (r, c) of the result is coef(r, c) * op.
MatrixXd kron(const MatrixXd& coef, const MatrixXd& op) {
  const auto n = op.rows();
  const auto m = op.cols();
  MatrixXd out = MatrixXd::Zero(coef.rows() * n, coef.cols() * m);
  for (Eigen::Index r = 0; r < coef.rows(); ++r)
    for (Eigen::Index c = 0; c < coef.cols(); ++c)
      if (coef(r, c) != 0.0) out.block(r * n, c * m, n, m) = coef(r, c) * op;
  return out;
}

VectorXd clenshaw_curtis(int n) {
  const int N = n - 1;
  VectorXd w = VectorXd::Zero(n);
  const double pi = std::numbers::pi;
  VectorXd v = VectorXd::Ones(N - 1);
  VectorXd theta(N - 1);
  for (int j = 1; j < N; ++j) theta(j - 1) = pi * j / N;
  if (N % 2 == 0) {
    w(0) = w(N) = 1.0 / (N * N - 1.0);
    for (int k = 1; k < N / 2; ++k)
      v.array() -= 2.0 * (2.0 * k * theta.array()).cos() / (4.0 * k * k - 1.0);
    v.array() -= (N * theta.array()).cos() / (N * N - 1.0);
  } else {
    w(0) = w(N) = 1.0 / (static_cast<double>(N) * N);
    for (int k = 1; k <= (N - 1) / 2; ++k)
      v.array() -= 2.0 * (2.0 * k * theta.array()).cos() / (4.0 * k * k - 1.0);
  }
  w.segment(1, N - 1) = 2.0 * v / N;
  return w;
}

}  // namespace

Grid chebyshev_grid(int n, double h) {
  if (n < 3) throw std::invalid_argument("chebyshev_grid: n too small (need n ≥ 3)");
  if (!(h > 0.0)) throw std::invalid_argument("chebyshev_grid: h ≤ 0");
  const int N = n - 1;
  const double pi = std::numbers::pi;

  Grid g;
  g.n = n;
  g.h = h;
  g.nodes.resize(n);
  VectorXd theta(n);
  for (int j = 0; j < n; ++j) {
    theta(j) = pi * j / N;
    // sin form keeps the node set exactly antisymmetric
    g.nodes(j) = std::sin(pi * (2.0 * j - N) / (2.0 * N));
  }

  MatrixXd d = MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const double ci = (i == 0 || i == N) ? 2.0 : 1.0;
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double cj = (j == 0 || j == N) ? 2.0 : 1.0;
      const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
      const double dx = 2.0 * std::sin(0.5 * (theta(i) + theta(j))) *
                        std::sin(0.5 * (theta(i) - theta(j)));
      d(i, j) = sign * ci / (cj * dx);
    }
  }
  // negative-sum trick: rows annihilate constants
  for (int i = 0; i < n; ++i) d(i, i) = -(d.row(i).sum() - d(i, i));

  g.nodes *= h;
  g.d1 = d / h;
  g.d2 = g.d1 * g.d1;
  g.quad_weights = clenshaw_curtis(n) * h;
  return g;
}

Eigen::MatrixXcd FormMatrices::quadratic_form(cplx beta) const {
  MatrixXcd q = (g_a0 - omega * omega * g_l).cast<cplx>();
  q += beta * g_b;
  q += (beta * beta) * g_c.cast<cplx>();
  return q;
}

FormMatrices sesquilinear_forms(const Material& m, const Grid& grid) {
  return sesquilinear_forms(m, pencil_coefficients(m), grid);
}

FormMatrices sesquilinear_forms(const Material& m, const PencilCoefficients& c,
                                const Grid& grid) {
  const int k = c.components();
  const MatrixXd W = grid.quad_weights.asDiagonal();
  const MatrixXd S = grid.d1.transpose() * W * grid.d1;
  const MatrixXd I = MatrixXd::Identity(k, k);

  FormMatrices f;
  f.omega = m.omega;
  f.g_a0 = kron(c.A, S);
  f.g_l = m.rho * kron(I, W);
  f.g_c = kron(c.C, W);
  f.h1 = kron(I, S + W);
  // b(w, v) = -i (D^T w', v)_0 + i (D w, v')_0
  const MatrixXd WD = W * grid.d1;
  const MatrixXd DW = grid.d1.transpose() * W;
  f.g_b = cplx(0.0, -1.0) * kron(c.D.transpose(), WD).cast<cplx>() +
          cplx(0.0, 1.0) * kron(c.D, DW).cast<cplx>();
  return f;
}

Eigen::MatrixXcd DiscretePencil::eval(cplx mu) const {
  MatrixXcd p = k0.cast<cplx>();
  p += mu * k1.cast<cplx>();
  p += (mu * mu) * k2.cast<cplx>();
  return p;
}

Eigen::MatrixXcd DiscretePencil::derivative(cplx mu) const {
  MatrixXcd p = k1.cast<cplx>();
  p += (2.0 * mu) * k2.cast<cplx>();
  return p;
}

Eigen::MatrixXcd DiscretePencil::second_derivative() const {
  return (2.0 * k2).cast<cplx>();
}

DiscretePencil assemble_pencil(const Material& m, const Grid& grid, BCKind bc) {
  return assemble_pencil(m, pencil_coefficients(m), grid, bc);
}

DiscretePencil assemble_pencil(const Material& m, const PencilCoefficients& c,
                               const Grid& grid, BCKind bc) {
  validate(m);
  const int n = grid.n;
  const int k = c.components();
  const MatrixXd In = MatrixXd::Identity(n, n);
  const MatrixXd Ik = MatrixXd::Identity(k, k);

  DiscretePencil p;
  p.bc = bc;
  p.grid = grid;
  p.material = m;
  p.coeffs = c;
  p.k0 = kron(c.A, grid.d2) + m.omega * m.omega * m.rho * kron(Ik, In);
  p.k1 = kron(c.B, grid.d1);
  p.k2 = kron(c.C, In);

  for (int comp = 0; comp < k; ++comp) {
    for (int node : {0, n - 1}) {
      const int r = comp * n + node;
      p.k0.row(r).setZero();
      p.k1.row(r).setZero();
      p.k2.row(r).setZero();
      const bool clamped = bc == BCKind::ClampedFree && node == 0;
      if (clamped) {
        p.k0(r, r) = 1.0;
      } else {
        for (int c2 = 0; c2 < k; ++c2) {
          p.k0.block(r, c2 * n, 1, n) += c.A(comp, c2) * grid.d1.row(node);
          p.k1(r, c2 * n + node) += c.D(comp, c2);
        }
      }
      p.boundary_rows.push_back(r);
    }
  }
  return p;
}

Eigen::MatrixXd energy_gram(const PencilCoefficients& c, const Grid& grid) {
  const int k = c.components();
  const int b = k * grid.n;
  const MatrixXd W = grid.quad_weights.asDiagonal();
  const MatrixXd S = grid.d1.transpose() * W * grid.d1;
  MatrixXd g = MatrixXd::Zero(2 * b, 2 * b);
  g.topLeftCorner(b, b) = kron(c.A, S) + kron(MatrixXd::Identity(k, k), W);
  g.bottomRightCorner(b, b) = kron(c.C, W);
  return g;
}

DiscreteOperator assemble_linearization(const DiscretePencil& pencil) {
  const Grid& grid = pencil.grid;
  const PencilCoefficients& c = pencil.coeffs;
  const Material& mat = pencil.material;
  const int n = grid.n;
  const int k = c.components();
  const int b = k * n;

  const MatrixXd Cinv = c.C.inverse();
  const MatrixXd In = MatrixXd::Identity(n, n);

  DiscreteOperator op;
  op.n = n;
  op.components = k;
  op.m = MatrixXd::Zero(2 * b, 2 * b);
  op.e = Eigen::VectorXd::Ones(2 * b);
  op.m.topRightCorner(b, b).setIdentity();
  op.m.bottomLeftCorner(b, b) =
      -kron(Cinv, In) * (mat.omega * mat.omega * mat.rho * MatrixXd::Identity(b, b) +
                         kron(c.A, grid.d2));
  op.m.bottomRightCorner(b, b) = -kron(Cinv * c.B, grid.d1);

  auto replace = [&](int r) {
    op.m.row(r).setZero();
    op.e(r) = 0.0;
    op.boundary_row_indices.push_back(r);
  };

  for (int comp = 0; comp < k; ++comp) {
    for (int node : {0, n - 1}) {
      const bool clamped = pencil.bc == BCKind::ClampedFree && node == 0;
      if (clamped) {
        const int top = comp * n + node;
        replace(top);
        op.m(top, top) = 1.0;
        const int bottom = b + comp * n + node;
        replace(bottom);
        op.m(bottom, bottom) = 1.0;
      } else {
        const int r = b + comp * n + node;
        replace(r);
        for (int c2 = 0; c2 < k; ++c2) {
          op.m.block(r, c2 * n, 1, n) += c.A(comp, c2) * grid.d1.row(node);
          op.m(r, b + c2 * n + node) += c.D(comp, c2);
        }
      }
    }
  }
  std::sort(op.boundary_row_indices.begin(), op.boundary_row_indices.end());
  op.gram = energy_gram(c, grid);
  return op;
}

}  // namespace lamb
