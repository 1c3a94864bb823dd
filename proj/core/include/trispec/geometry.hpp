#pragma once

#include <complex>
#include <string_view>

namespace trispec {

/// Right triangle with vertices O = (0,0), A = (a,0), B = (0,b).
class RightTriangle {
 public:
  RightTriangle(double a, double b);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double hypotenuse() const noexcept;
  double area() const noexcept { return 0.5 * a_ * b_; }
  double perimeter() const noexcept { return a_ + b_ + hypotenuse(); }

  /// Same triangle reflected across the diagonal x = y.
  RightTriangle swapped() const { return {b_, a_}; }

 private:
  double a_;
  double b_;
};

/// Non-negative particle mass.
class MassParam {
 public:
  explicit MassParam(double m);
  double value() const noexcept { return m_; }

 private:
  double m_;
};

/// Constants of the infinite-mass boundary relations on a right triangle.
///
/// `z0` is the negative root of z^2 + 2(a/b) z - 1 = 0 and governs the H fiber
/// problem; `alpha0` = -b/a + sqrt(b^2/a^2 + 1) governs the G fiber problem;
/// `ab_phase` is the unimodular factor in psi_2 = ab_phase * psi_1 on the
/// hypotenuse. Note alpha0(a,b) * |z0(b,a)| = 1.
struct BoundaryPhases {
  double z0;
  double alpha0;
  std::complex<double> ab_phase;
};

BoundaryPhases boundary_phases(const RightTriangle& tri);

enum class ConstraintKind { Area, PerimeterExact, PerimeterPaperMode };

std::string_view to_string(ConstraintKind kind);
ConstraintKind parse_constraint_kind(std::string_view name);

/// A fixed-area or fixed-perimeter family of right triangles with reference
/// leg k (the isosceles member has legs k, k).
struct ConstraintSpec {
  ConstraintKind kind;
  double k;

  /// Total perimeter (2 + sqrt 2) k for the perimeter modes.
  double perimeter() const;
  /// Open interval of admissible first legs.
  std::pair<double, double> admissible_interval() const;
};

/// Second leg b completing (a, b) to a member of the constrained family.
double constraint_partner(double a, const ConstraintSpec& spec);

}  // namespace trispec
