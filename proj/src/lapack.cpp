#include "lamb/lapack.hpp"

#include <stdexcept>
#include <string>
#include <vector>

extern "C" {
void dggev_(const char* jobvl, const char* jobvr, const int* n, double* a,
            const int* lda, double* b, const int* ldb, double* alphar,
            double* alphai, double* beta, double* vl, const int* ldvl,
            double* vr, const int* ldvr, double* work, const int* lwork,
            int* info);
}

namespace lamb {

namespace {

// Real storage packs a conjugate pair into columns j, j+1.
Eigen::MatrixXcd unpack(const Eigen::MatrixXd& v, const Eigen::VectorXd& ai) {
  const auto n = v.rows();
  Eigen::MatrixXcd out(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    if (ai(j) == 0.0) {
      out.col(j) = v.col(j).cast<cplx>();
    } else {
      for (Eigen::Index i = 0; i < n; ++i) {
        out(i, j) = cplx(v(i, j), v(i, j + 1));
        out(i, j + 1) = cplx(v(i, j), -v(i, j + 1));
      }
      ++j;
    }
  }
  return out;
}

}  // namespace

QZResult generalized_eigen(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                           bool want_right, bool want_left) {
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n || b.rows() != n || b.cols() != n)
    throw std::invalid_argument("generalized_eigen: shape mismatch");

  Eigen::MatrixXd aa = a;
  Eigen::MatrixXd bb = b;
  Eigen::VectorXd ar(n), ai(n), be(n);
  Eigen::MatrixXd vl(want_left ? n : 1, want_left ? n : 1);
  Eigen::MatrixXd vr(want_right ? n : 1, want_right ? n : 1);
  const char jl = want_left ? 'V' : 'N';
  const char jr = want_right ? 'V' : 'N';
  const int ldvl = static_cast<int>(vl.rows());
  const int ldvr = static_cast<int>(vr.rows());
  int info = 0;
  int lwork = -1;
  double query = 0.0;
  dggev_(&jl, &jr, &n, aa.data(), &n, bb.data(), &n, ar.data(), ai.data(),
         be.data(), vl.data(), &ldvl, vr.data(), &ldvr, &query, &lwork, &info);
  if (info != 0) throw std::runtime_error("dggev workspace query failed");
  lwork = static_cast<int>(query);
  std::vector<double> work(static_cast<std::size_t>(lwork));
  dggev_(&jl, &jr, &n, aa.data(), &n, bb.data(), &n, ar.data(), ai.data(),
         be.data(), vl.data(), &ldvl, vr.data(), &ldvr, work.data(), &lwork,
         &info);
  if (info != 0)
    throw std::runtime_error("dggev failed, info = " + std::to_string(info));

  QZResult r;
  r.alpha.resize(n);
  for (int j = 0; j < n; ++j) r.alpha(j) = cplx(ar(j), ai(j));
  r.beta = be;
  if (want_right) r.right = unpack(vr, ai);
  if (want_left) r.left = unpack(vl, ai);
  return r;
}

}  // namespace lamb
