#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "trispec/form.hpp"

namespace trispec {

struct EigenOptions {
  int dense_limit = 3000;  ///< dense solve up to this realified dimension
  int block_size = 8;
  double residual_tol = 1e-10;
  int max_iterations = 4000;
  std::uint64_t seed = 0x5eed;
};

struct EigenResult {
  double value = 0.0;
  Eigen::VectorXd vector;  ///< B-normalized
  double residual = 0.0;   ///< ||A x - value B x|| / ||A x||
  int iterations = 0;
  bool dense = false;
};

/// Smallest eigenpair of the symmetric pencil A x = value B x with A positive
/// semi-definite and B positive definite. Throws NumericError on failure.
EigenResult smallest_eigenpair(const SparseMatrix& A, const SparseMatrix& B,
                               const EigenOptions& opts = {});

}  // namespace trispec
