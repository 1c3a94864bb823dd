#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "trispec/geometry.hpp"

namespace trispec {

// One-dimensional Dirac operators
//
//   ( -i d/dx   -m      )
//   ( -m         i d/dx )   on L^2((0, L); C^2)
//
// with phi_2(L) = p * phi_1(L) at the right end (p the hypotenuse phase of a
// right triangle unless overridden) and, at the left end, phi_2(0) = phi_1(0)
// (family H) or phi_2(0) = -i phi_1(0) (family G).
//
// With E = lambda^2 - m^2 > 0 and s = sqrt(E) L the eigenvalues solve
//
//   H:  ((lambda + m)/sqrt(E)) tan(s) - z0 = 0,
//   G:  sqrt(E) cot(s) + m - alpha0 * lambda = 0.
//
// Roots are enumerated branch by branch between consecutive poles of tan/cot
// and refined by bisection in s.

enum class FiberFamily { H, G };

std::string_view to_string(FiberFamily f);
FiberFamily parse_fiber_family(std::string_view name);

struct FiberProblem {
  FiberFamily family = FiberFamily::H;
  double length = 1.0;
  double mass = 0.0;
  BoundaryPhases phases{};
  std::complex<double> right_phase{};
  /// z (family H) or alpha (family G) of the secular equation; equals
  /// phases.z0 / phases.alpha0 unless the right phase was overridden.
  double coefficient = 0.0;

  static FiberProblem make(FiberFamily family, const RightTriangle& tri, double length,
                           MassParam m);
  /// Same problem with phi_2(L) = p * phi_1(L); |p| must be 1.
  FiberProblem with_right_phase(std::complex<double> p) const;

  std::complex<double> left_phase() const;
};

/// Residual of a secular equation. `pole` marks arguments where tan (H) or
/// cot (G) is unbounded; the value is then meaningless.
struct SecularValue {
  double value = 0.0;
  bool pole = false;
};

SecularValue h_secular_residual(double lambda, const FiberProblem& prob);
SecularValue g_secular_residual(double eta, const FiberProblem& prob);

struct Window {
  double lo;
  double hi;
};

struct FiberEigenvalue {
  double value = 0.0;    ///< lambda (H) or eta (G)
  double energy = 0.0;   ///< value^2 - m^2
  int branch = 0;        ///< tan/cot period index of sqrt(energy) * L
  double residual = 0.0;
  /// False for G roots with sqrt(energy) * L outside (0, pi), the range the
  /// closed-form analysis of the G problem covers.
  bool validated_range = true;
};

struct Spectrum1D {
  FiberFamily family = FiberFamily::H;
  double mass = 0.0;
  std::vector<FiberEigenvalue> eigenvalues;  ///< sorted by value
  bool monotone_branches = true;  ///< every scanned branch had <= 1 sign change
  bool truncated = false;         ///< more roots exist in the window
};

/// Every secular root with value in (lo, hi) \ [-m, m], at most `max_count`
/// of them (those closest to zero).
Spectrum1D eigenvalues_in_window(const FiberProblem& prob, Window window, int max_count);

struct ClosestEigenvalue {
  FiberEigenvalue eigenvalue;
  bool tie = false;  ///< an exact +-lambda pair; the negative member is returned
};

ClosestEigenvalue closest_to_zero(const Spectrum1D& spec);

/// Closest-to-zero eigenvalue of the problem (searches the first branches on
/// both sides of the mass gap).
ClosestEigenvalue lowest_eigenvalue(const FiberProblem& prob);

using Spinor = std::array<std::complex<double>, 2>;

/// Eigenfunction of family H normalised by C_1 = 1:
/// (cos(kx) + iM sin(kx), cos(kx) - iM sin(kx)), k = sqrt(E), M = (lambda+m)/k.
Spinor eigenfunction_h(double lambda, const FiberProblem& prob, double x);

/// Eigenfunction of family G normalised by D_1 = 1.
Spinor eigenfunction_g(double eta, const FiberProblem& prob, double x);

/// H: arctan^2(|z0|)/L^2; G: arctan^2(1/alpha0)/L^2.
double poincare_constant(const FiberProblem& prob);

/// Mass at which the first G eigenvalue sits at sqrt(F) L = pi/2:
/// (pi/(2L)) sqrt(alpha0^2/(1 - alpha0^2)).
double mass_threshold_m0(const FiberProblem& prob);

/// Roots of sqrt(F) cot(sqrt(F) L) + m + eta/|z0| = 0: the spectrum of the
/// G-type problem with right phase (b + i a)/c.
Spectrum1D htilde_eigenvalues(const FiberProblem& prob_h, Window window, int max_count);

struct EquivalenceReport {
  bool equivalent = false;
  std::vector<double> htilde;
  std::vector<double> gtilde;
  double max_relative_gap = 0.0;
  std::string diagnostics;
};

/// Compares the closed-form H~ spectrum with the spectrum of G~ computed by
/// the shooting oracle, both restricted to `window`.
EquivalenceReport unitary_equivalence_check(const FiberProblem& prob_h,
                                            const FiberProblem& prob_gtilde, Window window,
                                            double rel_tol = 1e-10);

/// The G~ problem (left phase -i, right phase (b + i a)/c) belonging to an H
/// problem.
FiberProblem gtilde_problem(const RightTriangle& tri, double length, MassParam m);

}  // namespace trispec
