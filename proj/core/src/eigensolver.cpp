#include "trispec/eigensolver.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/SparseCholesky>

#include "trispec/errors.hpp"

namespace trispec {

namespace {

double relative_residual(const SparseMatrix& A, const SparseMatrix& B, const Eigen::VectorXd& x,
                         double value) {
  const Eigen::VectorXd Ax = A * x;
  const double scale = Ax.norm();
  if (scale == 0.0) return 0.0;
  return (Ax - value * (B * x)).norm() / scale;
}

EigenResult dense_solve(const SparseMatrix& A, const SparseMatrix& B) {
  const Eigen::MatrixXd Ad(A);
  const Eigen::MatrixXd Bd(B);
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(Ad, Bd, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericError("dense generalized eigensolver failed");
  EigenResult r;
  r.value = es.eigenvalues()(0);
  r.dense = true;
  // Eigenvector by shifted inverse iteration; the next distinct eigenvalue
  // is far from the shift, so a few steps suffice.
  const double gap = es.eigenvalues().size() > 2 ? es.eigenvalues()(2) - r.value : 1.0;
  const double shift = r.value - 1e-3 * std::max(gap, 1e-12);
  const Eigen::LDLT<Eigen::MatrixXd> ldlt(Ad - shift * Bd);
  Eigen::VectorXd x = Eigen::VectorXd::Ones(Ad.rows());
  for (int it = 0; it < 4; ++it) {
    x = ldlt.solve(Bd * x);
    x /= x.norm();
  }
  r.vector = x;
  r.residual = relative_residual(A, B, x, r.value);
  return r;
}

// Block inverse iteration with Rayleigh-Ritz on the subspace.
EigenResult sparse_solve(const SparseMatrix& A, const SparseMatrix& B, const EigenOptions& opts) {
  const Eigen::Index n = A.rows();
  const Eigen::Index p = std::min<Eigen::Index>(opts.block_size, n);
  Eigen::SimplicialLDLT<SparseMatrix> ldlt(A);
  if (ldlt.info() != Eigen::Success) throw NumericError("factorization of the form failed");

  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd X(n, p);
  for (Eigen::Index j = 0; j < p; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) X(i, j) = normal(rng);
  }

  EigenResult r;
  double residual = 1.0;
  for (int it = 1; it <= opts.max_iterations; ++it) {
    const Eigen::MatrixXd Y = ldlt.solve(B * X);
    const Eigen::MatrixXd AY = A * Y;
    const Eigen::MatrixXd BY = B * Y;
    Eigen::MatrixXd As = Y.transpose() * AY;
    Eigen::MatrixXd Bs = Y.transpose() * BY;
    As = 0.5 * (As + As.transpose()).eval();
    Bs = 0.5 * (Bs + Bs.transpose()).eval();
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(As, Bs);
    if (es.info() != Eigen::Success) throw NumericError("Rayleigh-Ritz step failed");
    X = Y * es.eigenvectors();
    const double value = es.eigenvalues()(0);
    const Eigen::VectorXd x = X.col(0);
    residual = relative_residual(A, B, x, value);
    r.value = value;
    r.vector = x;
    r.iterations = it;
    if (residual <= opts.residual_tol) {
      r.residual = residual;
      return r;
    }
  }
  std::ostringstream os;
  os << "inverse iteration did not converge; residual norm " << residual;
  throw NumericError(os.str());
}

}  // namespace

EigenResult smallest_eigenpair(const SparseMatrix& A, const SparseMatrix& B,
                               const EigenOptions& opts) {
  if (A.rows() != A.cols() || B.rows() != B.cols() || A.rows() != B.rows() || A.rows() == 0) {
    throw DomainError("pencil matrices must be square and of equal size");
  }
  EigenResult r = A.rows() <= opts.dense_limit ? dense_solve(A, B) : sparse_solve(A, B, opts);
  if (!std::isfinite(r.value)) throw NumericError("eigenvalue is not finite");
  const double norm = std::sqrt(r.vector.dot(B * r.vector));
  if (norm > 0.0) r.vector /= norm;
  return r;
}

}  // namespace trispec
