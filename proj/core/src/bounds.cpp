#include "trispec/bounds.hpp"

#include <cmath>
#include <numbers>

#include "trispec/errors.hpp"

namespace trispec {

namespace {

constexpr double kPi = std::numbers::pi;

// arctan(x + sqrt(1 + x^2)) for x = p/q; equals pi/4 + arctan(x)/2.
double half_angle_arctan(double p, double q) {
  return std::atan(p / q + std::hypot(1.0, p / q));
}

}  // namespace

double lower_bound_sq(const RightTriangle& tri) {
  const double a = tri.a();
  const double b = tri.b();
  const double tb = half_angle_arctan(a, b);
  const double ta = half_angle_arctan(b, a);
  return tb * tb / (b * b) + ta * ta / (a * a);
}

double upper_bound_sq(const RightTriangle& tri) {
  const double a = tri.a();
  const double b = tri.b();
  return 2.5 * kPi * kPi * (1.0 / (a * a) + 1.0 / (b * b));
}

double improved_bound_mass_threshold(const RightTriangle& tri) {
  const double alpha0 = boundary_phases(tri).alpha0;
  const double a2 = alpha0 * alpha0;
  return kPi / (2.0 * tri.a()) * std::sqrt(a2 / (1.0 - a2));
}

std::optional<double> improved_lower_bound_sq(const RightTriangle& tri, MassParam m) {
  if (m.value() < improved_bound_mass_threshold(tri)) return std::nullopt;
  const double a = tri.a();
  const double b = tri.b();
  return kPi * kPi / (4.0 * a * a) + kPi * kPi / (16.0 * b * b);
}

BoundPair bound_pair(const RightTriangle& tri) {
  return {lower_bound_sq(tri), upper_bound_sq(tri)};
}

CorollaryConstraint corollary_constraint_for(ConstraintKind kind) {
  return kind == ConstraintKind::Area ? CorollaryConstraint::Area
                                      : CorollaryConstraint::Perimeter;
}

std::string_view to_string(CorollaryConstraint c) {
  return c == CorollaryConstraint::Area ? "area" : "perimeter";
}

std::string_view to_string(CorollaryVariant v) {
  return v == CorollaryVariant::Base ? "base" : "large-mass";
}

RegionVerdict corollary_region(double a, double k, CorollaryConstraint constraint,
                               CorollaryVariant variant) {
  if (!(a > 0.0) || !(k > 0.0)) {
    throw DomainError("corollary_region requires a > 0 and k > 0");
  }
  // Thresholds as stated for the eccentric-triangle corollaries.
  const double upper = constraint == CorollaryConstraint::Area ? 9.0 * k : 3.5 * k;
  const double lower = variant == CorollaryVariant::Base ? k / 9.0 : k / 5.0;

  RegionVerdict verdict;
  verdict.in_region = a >= upper || a <= lower;
  if (variant == CorollaryVariant::LargeMass) {
    const ConstraintSpec spec{constraint == CorollaryConstraint::Area
                                  ? ConstraintKind::Area
                                  : ConstraintKind::PerimeterExact,
                              k};
    const auto [lo, hi] = spec.admissible_interval();
    if (a > lo && a < hi) {
      verdict.mass_threshold =
          improved_bound_mass_threshold(RightTriangle(a, constraint_partner(a, spec)));
    }
  }
  return verdict;
}

bool sufficient_condition_raw(double a, double b, double k) {
  if (!(k > 0.0)) throw DomainError("sufficient_condition_raw requires k > 0");
  return lower_bound_sq(RightTriangle(a, b)) >= 5.0 * kPi * kPi / (k * k);
}

}  // namespace trispec
