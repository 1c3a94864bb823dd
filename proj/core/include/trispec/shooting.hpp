#pragma once

#include <complex>
#include <vector>

#include "trispec/dirac1d.hpp"

namespace trispec {

// Independent check of the fiber spectra: integrate the first-order system
//   -i u1' - m u2 = lambda u1,   i u2' - m u1 = lambda u2
// from x = 0 with the left boundary relation and measure how far the right
// boundary relation is from holding.

struct ShootingOptions {
  double abs_tol = 1e-14;
  double rel_tol = 1e-14;
};

/// u2(L) - p u1(L) for the solution with u1(0) = 1, u2(0) = left_phase.
std::complex<double> shooting_oracle(const FiberProblem& prob, double trial,
                                     const ShootingOptions& opts = {});

/// Solution (u1, u2) at x = L.
Spinor shoot(const FiberProblem& prob, double trial, const ShootingOptions& opts = {});

/// Eigenvalues located by zeros of the shooting defect inside the window,
/// sorted by value, at most max_count closest to zero.
std::vector<double> shooting_eigenvalues(const FiberProblem& prob, Window window,
                                         int max_count, const ShootingOptions& opts = {});

}  // namespace trispec
