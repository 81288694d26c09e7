#include "lamb/modes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "lamb/lapack.hpp"

namespace lamb {

namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;

constexpr cplx I1{0.0, 1.0};

double scale_of(cplx z) { return std::max(1.0, std::abs(z)); }

struct RawPair {
  cplx z;
  VectorXcd right;
  VectorXcd left;
};

std::vector<RawPair> finite_pairs(const DiscreteOperator& op, bool vectors) {
  const QZResult qz = generalized_eigen(op.m, op.mass(), vectors, vectors);
  std::vector<RawPair> out;
  const double big = 1e14;
  for (Eigen::Index j = 0; j < qz.alpha.size(); ++j) {
    const double b = qz.beta(j);
    if (b == 0.0 || std::abs(qz.alpha(j)) > big * std::abs(b)) continue;
    RawPair p;
    p.z = qz.alpha(j) / b;
    if (vectors) {
      p.right = qz.right.col(j);
      p.left = qz.left.col(j);
    }
    out.push_back(std::move(p));
  }
  return out;
}

// Indices of points within radius r of z.
std::vector<int> near(const std::vector<cplx>& pts, cplx z, double r) {
  std::vector<int> idx;
  for (int i = 0; i < static_cast<int>(pts.size()); ++i)
    if (std::abs(pts[i] - z) <= r) idx.push_back(i);
  return idx;
}

cplx mean_of(const std::vector<cplx>& pts, const std::vector<int>& idx) {
  cplx s = 0.0;
  for (int i : idx) s += pts[i];
  return s / static_cast<double>(idx.size());
}

// Two-resolution agreement.  Near-coincident groups are compared through
// their means since their individual members are only sqrt(eps) accurate.
bool matched(const std::vector<cplx>& coarse, int i, const std::vector<cplx>& fine,
             double match_tol, double cluster_tol) {
  const cplx z = coarse[i];
  const double r = cluster_tol * scale_of(z);
  const auto cg = near(coarse, z, r);
  if (cg.size() > 1) {
    const cplx zc = mean_of(coarse, cg);
    const auto fg = near(fine, zc, 2.0 * r);
    if (fg.size() == cg.size())
      return std::abs(mean_of(fine, fg) - zc) <= match_tol * scale_of(zc);
  }
  double best = std::numeric_limits<double>::infinity();
  for (cplx w : fine) best = std::min(best, std::abs(w - z));
  return best <= match_tol * scale_of(z);
}

double pencil_residual(const DiscretePencil& p, cplx mu, const VectorXcd& v) {
  return (p.eval(mu) * v).norm() / v.norm();
}

// Nonlinear inverse iteration on P(mu) v = 0.
void polish(const DiscretePencil& p, cplx& mu, VectorXcd& v, int steps,
            double max_shift) {
  const cplx mu0 = mu;
  double res = pencil_residual(p, mu, v);
  for (int s = 0; s < steps; ++s) {
    Eigen::PartialPivLU<MatrixXcd> lu(p.eval(mu));
    VectorXcd y = lu.solve(p.derivative(mu) * v);
    const cplx d = y.dot(v);  // conj(y)^T v
    if (!std::isfinite(std::abs(d)) || std::abs(d) == 0.0) break;
    const cplx mu_new = mu - v.squaredNorm() / std::conj(d);
    VectorXcd v_new = y / y.norm();
    const double res_new = pencil_residual(p, mu_new, v_new);
    if (!(res_new < res) || std::abs(mu_new - mu0) > max_shift) break;
    mu = mu_new;
    v = std::move(v_new);
    res = res_new;
  }
}

double gram_norm(const MatrixXd& g, const VectorXcd& x) {
  return std::sqrt(std::max(0.0, (x.adjoint() * (g * x))(0).real()));
}

void fix_phase(VectorXcd& big, Eigen::Index first_block) {
  Eigen::Index k = 0;
  big.head(first_block).cwiseAbs().maxCoeff(&k);
  const cplx a = big(k);
  if (std::abs(a) > 0.0) big *= std::abs(a) / a;
}

void sort_modes(std::vector<Mode>& modes) {
  std::sort(modes.begin(), modes.end(), [](const Mode& a, const Mode& b) {
    return std::abs(a.beta) < std::abs(b.beta);
  });
  // Runs of equal modulus (pairs +-beta, conj) get a deterministic order.
  std::size_t i = 0;
  while (i < modes.size()) {
    std::size_t j = i + 1;
    while (j < modes.size() && std::abs(modes[j].beta) - std::abs(modes[j - 1].beta) <=
                                   1e-9 * scale_of(modes[j].beta))
      ++j;
    std::sort(modes.begin() + i, modes.begin() + j, [](const Mode& a, const Mode& b) {
      if (a.beta.real() != b.beta.real()) return a.beta.real() > b.beta.real();
      return a.beta.imag() > b.beta.imag();
    });
    i = j;
  }
}

double spectral_norm(const MatrixXd& m) {
  Eigen::BDCSVD<MatrixXd> svd(m);
  return svd.singularValues()(0);
}

}  // namespace

const char* parity_name(Parity p) {
  switch (p) {
    case Parity::Symmetric: return "symmetric";
    case Parity::Antisymmetric: return "antisymmetric";
    default: return "mixed";
  }
}

std::vector<cplx> finite_eigenvalues(const DiscreteOperator& op) {
  std::vector<cplx> z;
  for (auto& p : finite_pairs(op, false)) z.push_back(p.z);
  return z;
}

ModeSet solve_modes(const DiscreteOperator& op, const DiscretePencil& pencil,
                    const SolveOptions& opts) {
  if (op.size() != 2 * pencil.size())
    throw std::invalid_argument("solve_modes: operator and pencil do not match");
  ModeSet set;
  set.n = op.n;
  set.bc = pencil.bc;
  set.m_norm = spectral_norm(op.m);

  auto raw = finite_pairs(op, true);
  set.finite_count = static_cast<int>(raw.size());

  std::vector<bool> keep(raw.size(), true);
  if (opts.filter) {
    const Grid fine_grid = chebyshev_grid(2 * pencil.grid.n, pencil.grid.h);
    const DiscretePencil fine_p =
        assemble_pencil(pencil.material, pencil.coeffs, fine_grid, pencil.bc);
    const auto fine = finite_eigenvalues(assemble_linearization(fine_p));
    std::vector<cplx> coarse;
    for (auto& r : raw) coarse.push_back(r.z);
    for (std::size_t i = 0; i < raw.size(); ++i)
      keep[i] = matched(coarse, static_cast<int>(i), fine, opts.match_tol,
                        opts.cluster_tol);
  }

  const Eigen::Index b = op.block();
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (!keep[i]) {
      ++set.unmatched;
      continue;
    }
    RawPair& r = raw[i];
    Mode m;
    m.mu = r.z;
    const double vn = r.right.norm();
    m.block_defect = (r.right.tail(b) - r.z * r.right.head(b)).norm() / vn;

    VectorXcd v = r.right.head(b);
    if (v.norm() == 0.0) {
      ++set.rejected;
      continue;
    }
    v /= v.norm();
    polish(pencil, m.mu, v, opts.polish_steps, opts.cluster_tol * scale_of(r.z));
    m.residual = pencil_residual(pencil, m.mu, v);
    if (!(m.residual <= opts.accept_tol)) {
      ++set.rejected;
      continue;
    }
    m.beta = -I1 * m.mu;

    VectorXcd big(2 * b);
    big.head(b) = v;
    big.tail(b) = m.mu * v;
    fix_phase(big, b);
    big /= gram_norm(op.gram, big);
    m.big_v = big;
    m.v = big.head(b);
    const VectorXcd rr = op.m.cast<cplx>() * big - m.mu * (op.e.cast<cplx>().cwiseProduct(big));
    m.op_residual = rr.norm() / (set.m_norm * big.norm());

    m.qz_right = r.right / gram_norm(op.gram, r.right);
    m.qz_left = r.left;
    m.parity = classify_parity(m.v, pencil.grid);
    set.modes.push_back(std::move(m));
  }
  sort_modes(set.modes);
  return set;
}

Parity classify_parity(const Eigen::VectorXcd& v, const Grid& grid, double tol) {
  const int n = grid.n;
  const int k = static_cast<int>(v.size()) / n;
  if (k * n != v.size() || k < 1 || k > 2)
    throw std::invalid_argument("classify_parity: field size does not match grid");
  const double nv = v.norm();
  if (nv == 0.0) return Parity::Mixed;
  // parity pattern: first component has sign s0 under x -> -x, second -s0
  auto defect = [&](double s0) {
    double acc = 0.0;
    for (int c = 0; c < k; ++c) {
      const double s = (k == 1 || c == 1) ? -s0 : s0;
      for (int j = 0; j < n; ++j)
        acc += std::norm(v(c * n + j) - s * v(c * n + (n - 1 - j)));
    }
    return std::sqrt(acc) / (2.0 * nv);
  };
  // symmetric: v1 odd (s = -1), v3 even; one component: even
  const double ds = defect(-1.0);
  const double da = defect(1.0);
  if (ds <= tol) return Parity::Symmetric;
  if (da <= tol) return Parity::Antisymmetric;
  return Parity::Mixed;
}

Parity classify_parity(const Mode& mode, const Grid& grid, double tol) {
  return classify_parity(mode.v, grid, tol);
}

std::vector<JordanChain> detect_jordan_chains(const ModeSet& modes,
                                              const DiscretePencil& pencil,
                                              double cluster_tol, double chain_tol) {
  const int nm = static_cast<int>(modes.size());
  std::vector<int> group(nm, -1);
  std::vector<std::vector<int>> clusters;
  for (int i = 0; i < nm; ++i) {
    if (group[i] >= 0) continue;
    group[i] = static_cast<int>(clusters.size());
    clusters.push_back({i});
    // transitive closure
    for (std::size_t q = 0; q < clusters.back().size(); ++q) {
      const int a = clusters.back()[q];
      for (int j = 0; j < nm; ++j) {
        if (group[j] >= 0) continue;
        if (std::abs(modes.modes[j].mu - modes.modes[a].mu) <=
            cluster_tol * scale_of(modes.modes[a].mu)) {
          group[j] = group[i];
          clusters.back().push_back(j);
        }
      }
    }
  }

  const DiscreteOperator op = assemble_linearization(pencil);
  const MatrixXcd mc = op.m.cast<cplx>();
  const VectorXcd ec = op.e.cast<cplx>();

  std::vector<JordanChain> chains;
  for (auto& cl : clusters) {
    std::sort(cl.begin(), cl.end());
    const int s = static_cast<int>(cl.size());
    if (s == 1) {
      const Mode& m = modes.modes[cl[0]];
      JordanChain c;
      c.mu = m.mu;
      c.beta = m.beta;
      c.vectors = {m.v};
      c.residuals = {m.residual * m.v.norm() /
                     std::max((pencil.derivative(m.mu) * m.v).norm(), 1e-300)};
      c.mode_indices = cl;
      chains.push_back(std::move(c));
      continue;
    }

    cplx mu = 0.0;
    for (int i : cl) mu += modes.modes[i].mu;
    mu /= static_cast<double>(s);

    MatrixXcd span(modes.modes[cl[0]].v.size(), s);
    for (int q = 0; q < s; ++q) span.col(q) = modes.modes[cl[q]].v.normalized();
    Eigen::JacobiSVD<MatrixXcd> sv(span);
    const auto& sig = sv.singularValues();
    int rank = 0;
    for (int q = 0; q < s; ++q)
      if (sig(q) > 1e-3 * sig(0)) ++rank;

    if (rank == s) {
      for (int i : cl) {
        const Mode& m = modes.modes[i];
        JordanChain c;
        c.mu = m.mu;
        c.beta = m.beta;
        c.vectors = {m.v};
        c.residuals = {m.residual * m.v.norm() /
                       std::max((pencil.derivative(m.mu) * m.v).norm(), 1e-300)};
        c.mode_indices = {i};
        c.note = "semisimple cluster";
        chains.push_back(std::move(c));
      }
      continue;
    }

    // Defective: chains at the cluster mean.  Only the single-block case
    // (rank 1) gets a full chain; larger ranks report the deficit.
    const MatrixXcd P = pencil.eval(mu);
    const MatrixXcd P1 = pencil.derivative(mu);
    const MatrixXcd P2h = 0.5 * pencil.second_derivative();
    Eigen::JacobiSVD<MatrixXcd> psvd(P, Eigen::ComputeFullV);
    const Eigen::Index nn = P.cols();
    const int max_len = s - rank + 1;

    JordanChain c;
    c.mu = mu;
    c.beta = -I1 * mu;
    c.mode_indices = cl;
    if (rank > 1) c.note = "several blocks; leading block only";
    VectorXcd v0 = psvd.matrixV().col(nn - 1);
    c.vectors.push_back(v0);
    c.residuals.push_back((P * v0).norm() / std::max((P1 * v0).norm(), 1e-300));

    MatrixXcd bordered(nn + 1, nn);
    bordered.topRows(nn) = P;
    bordered.row(nn) = v0.adjoint();
    Eigen::CompleteOrthogonalDecomposition<MatrixXcd> cod(bordered);
    const double cond = psvd.singularValues()(0) /
                        std::max(psvd.singularValues()(nn - 2), 1e-300);
    if (cond > 1e14) c.ill_conditioned = true;

    for (int p = 1; p < max_len; ++p) {
      VectorXcd rhs_top = -P1 * c.vectors[p - 1];
      if (p >= 2) rhs_top -= P2h * c.vectors[p - 2];
      VectorXcd rhs(nn + 1);
      rhs.head(nn) = rhs_top;
      rhs(nn) = 0.0;
      VectorXcd vp = cod.solve(rhs);
      const double res = (P * vp - rhs_top).norm() / std::max(rhs_top.norm(), 1e-300);
      if (!(res <= chain_tol)) {
        c.note += c.note.empty() ? "" : "; ";
        c.note += "chain stopped at length " + std::to_string(p) +
                  " (relation residual " + std::to_string(res) + ")";
        break;
      }
      c.vectors.push_back(vp);
      c.residuals.push_back(res);
    }

    // Stacked chain V_p = (v_p, mu v_p + v_{p-1}) must satisfy
    // (m - mu e) V_p = e V_{p-1}.
    const Eigen::Index b = pencil.size();
    double worst = 0.0;
    VectorXcd prev;
    for (int p = 0; p < c.length(); ++p) {
      VectorXcd V(2 * b);
      V.head(b) = c.vectors[p];
      V.tail(b) = mu * c.vectors[p];
      if (p > 0) V.tail(b) += c.vectors[p - 1];
      if (p > 0) {
        const VectorXcd rhs = ec.cwiseProduct(prev);
        const VectorXcd r = mc * V - mu * ec.cwiseProduct(V) - rhs;
        worst = std::max(worst, r.norm() / std::max(rhs.norm(), 1e-300));
      }
      prev = V;
    }
    c.linearization_residual = worst;
    chains.push_back(std::move(c));
  }
  return chains;
}

void annotate_chain_lengths(ModeSet& modes, const std::vector<JordanChain>& chains) {
  for (const auto& c : chains)
    for (int i : c.mode_indices) modes.modes[i].chain_length = c.length();
}

BiorthogonalSystem biorthogonalize(const ModeSet& modes, const DiscreteOperator& op,
                                   double cluster_tol) {
  const int nm = static_cast<int>(modes.size());
  const Eigen::Index dim = op.size();
  BiorthogonalSystem sys;
  sys.right.resize(dim, nm);
  sys.left.resize(dim, nm);
  Eigen::LLT<MatrixXd> gl(op.gram);
  for (int i = 0; i < nm; ++i) {
    const Mode& m = modes.modes[i];
    sys.mu.push_back(m.mu);
    sys.right.col(i) = m.qz_right;
    const VectorXcd ey = op.e.cast<cplx>().cwiseProduct(m.qz_left);
    sys.left.col(i) = gl.solve(ey);
  }

  // clusters as blocks
  std::vector<int> seen(nm, 0);
  for (int i = 0; i < nm; ++i) {
    if (seen[i]) continue;
    std::vector<int> blk{i};
    seen[i] = 1;
    for (int j = i + 1; j < nm; ++j)
      if (!seen[j] && std::abs(modes.modes[j].mu - modes.modes[i].mu) <=
                          cluster_tol * scale_of(modes.modes[i].mu)) {
        blk.push_back(j);
        seen[j] = 1;
      }
    sys.blocks.push_back(blk);
  }

  const MatrixXcd GV = op.gram * sys.right;
  for (const auto& blk : sys.blocks) {
    const int s = static_cast<int>(blk.size());
    MatrixXcd Wb(dim, s), GVb(dim, s);
    for (int q = 0; q < s; ++q) {
      Wb.col(q) = sys.left.col(blk[q]);
      GVb.col(q) = GV.col(blk[q]);
    }
    // pairing block Pb(q, r) = W_q^H G V_r; make it the identity
    const MatrixXcd Pb = Wb.adjoint() * GVb;
    Eigen::FullPivLU<MatrixXcd> lu(Pb);
    if (!lu.isInvertible() || lu.rcond() < 1e-14) {
      sys.singular = true;
      continue;
    }
    const MatrixXcd Wn = Wb * lu.inverse().adjoint();
    for (int q = 0; q < s; ++q) sys.left.col(blk[q]) = Wn.col(q);
  }
  sys.pairing = sys.left.adjoint() * GV;
  return sys;
}

}  // namespace lamb
