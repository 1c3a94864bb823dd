#pragma once

#include <optional>
#include <string_view>

#include "trispec/geometry.hpp"

namespace trispec {

// Closed-form two-sided estimates for lambda_1(a,b)^2 - m^2 on right
// triangles, and the eccentricity classifiers derived from them. All values
// are energies (inverse length squared).

/// arctan^2(a/b + sqrt(1+a^2/b^2))/b^2 + arctan^2(b/a + sqrt(1+b^2/a^2))/a^2.
double lower_bound_sq(const RightTriangle& tri);

/// (5 pi^2 / 2)(1/a^2 + 1/b^2), the Rayleigh quotient of the scaled
/// isosceles Dirichlet ground state.
double upper_bound_sq(const RightTriangle& tri);

/// Large-mass threshold (pi/(2a)) sqrt(alpha0^2/(1 - alpha0^2)) above which
/// the improved lower bound applies (fiber length taken along the leg a).
double improved_bound_mass_threshold(const RightTriangle& tri);

/// pi^2/(4a^2) + pi^2/(16b^2) when m >= improved_bound_mass_threshold(tri);
/// empty otherwise. Never falls back to lower_bound_sq.
std::optional<double> improved_lower_bound_sq(const RightTriangle& tri, MassParam m);

struct BoundPair {
  double lower_sq;
  double upper_sq;
};

BoundPair bound_pair(const RightTriangle& tri);

enum class CorollaryConstraint { Area, Perimeter };
enum class CorollaryVariant { Base, LargeMass };

CorollaryConstraint corollary_constraint_for(ConstraintKind kind);
std::string_view to_string(CorollaryConstraint c);
std::string_view to_string(CorollaryVariant v);

struct RegionVerdict {
  bool in_region = false;
  /// LargeMass only: the mass above which the verdict is backed by the
  /// improved bound. Empty when the partner leg is not admissible.
  std::optional<double> mass_threshold;
};

/// Literal eccentricity thresholds: Base/Area a >= 9k or a <= k/9,
/// Base/Perimeter a >= 3.5k or a <= k/9, LargeMass replaces k/9 by k/5.
RegionVerdict corollary_region(double a, double k, CorollaryConstraint constraint,
                               CorollaryVariant variant);

/// lower_bound_sq(a,b) >= 5 pi^2 / k^2.
bool sufficient_condition_raw(double a, double b, double k);

}  // namespace trispec
