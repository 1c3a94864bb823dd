#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "trispec/dirac1d.hpp"
#include "trispec/eigensolver.hpp"
#include "trispec/form.hpp"
#include "trispec/geometry.hpp"

namespace trispec {

struct Lambda1Options {
  EigenOptions eigen;
  int threads = 1;  ///< assembly workers
};

/// Smallest eigenvalue of a discrete form. The pencil is shifted by m^2
/// internally, so `energy` = mu_min - m^2 carries no cancellation error.
struct Lambda1Result {
  double lambda1 = 0.0;  ///< positive root of mu_min
  double mu_min = 0.0;
  double energy = 0.0;
  int n = 0;
  int dofs = 0;  ///< realified
  double residual = 0.0;
  bool dense = false;
};

Lambda1Result smallest_form_eigenvalue(const DiscreteForm& form, const EigenOptions& opts = {});

Lambda1Result lambda1_2d(const RightTriangle& tri, MassParam m, int n,
                         const Lambda1Options& opts = {});

struct Extrapolation {
  double value = 0.0;
  double order = 0.0;  ///< fitted p; NaN when declined
  double error = 0.0;  ///< |finest - value|, or the last increment when declined
  bool declined = false;
};

/// Richardson extrapolation on the three finest (n, value) pairs, assuming
/// value(n) = value* + C n^-p. Resolutions must form a geometric progression.
Extrapolation extrapolate(std::span<const std::pair<int, double>> values);

struct Lambda1Estimate {
  std::vector<Lambda1Result> levels;
  Extrapolation energy;  ///< extrapolated lambda1^2 - m^2
  double mass = 0.0;
  double lambda1 = 0.0;
  double lambda1_error = 0.0;
};

Lambda1Estimate lambda1_extrapolated(const RightTriangle& tri, MassParam m,
                                     std::span<const int> ladder, const Lambda1Options& opts = {});

struct TrialSample {
  Spinor value;
  Spinor dx;
  Spinor dy;
};

/// Smooth spinor field on the triangle with its partial derivatives.
using TrialField = std::function<TrialSample(double x, double y)>;

/// psi_o(x/a, y/b) (1, 1) with psi_o(X, Y) = sin 2piX sin piY + sin 2piY sin piX.
TrialField dirichlet_trial(const RightTriangle& tri);

/// Q[trial] / ||trial||^2 by Gauss quadrature. Throws DomainError when the
/// trial violates a boundary relation by more than `constraint_tol` relative
/// to its RMS size.
double rayleigh_quotient(const TrialField& trial, const RightTriangle& tri, MassParam m,
                         double constraint_tol = 1e-10);

}  // namespace trispec
