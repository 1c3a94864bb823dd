#include "trispec/geometry.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "trispec/errors.hpp"

namespace trispec {

RightTriangle::RightTriangle(double a, double b) : a_(a), b_(b) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    std::ostringstream os;
    os << "right triangle legs must be finite and positive, got a=" << a << ", b=" << b;
    throw DomainError(os.str());
  }
}

double RightTriangle::hypotenuse() const noexcept { return std::hypot(a_, b_); }

MassParam::MassParam(double m) : m_(m) {
  if (!(m >= 0.0) || !std::isfinite(m)) {
    std::ostringstream os;
    os << "mass must be finite and non-negative, got m=" << m;
    throw DomainError(os.str());
  }
}

BoundaryPhases boundary_phases(const RightTriangle& tri) {
  const double a = tri.a();
  const double b = tri.b();
  const double c = tri.hypotenuse();
  BoundaryPhases p{};
  p.z0 = -(a + c) / b;
  // (c - b)/a rewritten to avoid cancellation when b >> a.
  p.alpha0 = a / (b + c);
  p.ab_phase = {-a / c, b / c};
  return p;
}

std::string_view to_string(ConstraintKind kind) {
  switch (kind) {
    case ConstraintKind::Area: return "area";
    case ConstraintKind::PerimeterExact: return "perimeter";
    case ConstraintKind::PerimeterPaperMode: return "perimeter-paper";
  }
  return "unknown";
}

ConstraintKind parse_constraint_kind(std::string_view name) {
  if (name == "area") return ConstraintKind::Area;
  if (name == "perimeter") return ConstraintKind::PerimeterExact;
  if (name == "perimeter-paper") return ConstraintKind::PerimeterPaperMode;
  throw DomainError("unknown constraint '" + std::string(name) +
                    "' (expected area, perimeter or perimeter-paper)");
}

double ConstraintSpec::perimeter() const { return (2.0 + std::numbers::sqrt2) * k; }

std::pair<double, double> ConstraintSpec::admissible_interval() const {
  switch (kind) {
    case ConstraintKind::Area:
      return {0.0, std::numeric_limits<double>::infinity()};
    case ConstraintKind::PerimeterExact:
      return {0.0, 0.5 * perimeter()};
    case ConstraintKind::PerimeterPaperMode:
      return {0.0, perimeter()};
  }
  return {0.0, 0.0};
}

double constraint_partner(double a, const ConstraintSpec& spec) {
  if (!(spec.k > 0.0) || !std::isfinite(spec.k)) {
    throw DomainError("constraint reference scale k must be positive");
  }
  const auto [lo, hi] = spec.admissible_interval();
  if (!(a > lo && a < hi)) {
    std::ostringstream os;
    os << "leg a=" << a << " outside admissible interval (" << lo << ", " << hi << ") for "
       << to_string(spec.kind) << " constraint with k=" << spec.k;
    throw DomainError(os.str());
  }
  switch (spec.kind) {
    case ConstraintKind::Area:
      return spec.k * spec.k / a;
    case ConstraintKind::PerimeterExact: {
      const double p = spec.perimeter();
      return p * (p - 2.0 * a) / (2.0 * (p - a));
    }
    case ConstraintKind::PerimeterPaperMode:
      return spec.perimeter() - a;
  }
  return 0.0;
}

}  // namespace trispec
