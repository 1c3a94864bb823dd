#include "trispec/dirac2d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

#include "trispec/errors.hpp"
#include "trispec/mesh.hpp"

namespace trispec {

namespace {

using boost::math::quadrature::gauss;
using cd = std::complex<double>;
constexpr double pi = std::numbers::pi;

double norm2(const Spinor& s) { return std::norm(s[0]) + std::norm(s[1]); }

// Integral over the triangle 0 <= x <= a, 0 <= y <= b (1 - x/a).
template <class F>
double triangle_integral(const RightTriangle& tri, F f) {
  const double a = tri.a();
  const double b = tri.b();
  return gauss<double, 30>::integrate(
      [&](double x) {
        const double top = b * (1.0 - x / a);
        return gauss<double, 30>::integrate([&](double y) { return f(x, y); }, 0.0, top);
      },
      0.0, a);
}

}  // namespace

Lambda1Result smallest_form_eigenvalue(const DiscreteForm& form, const EigenOptions& opts) {
  const double m = form.mass;
  const SparseMatrix shifted = form.stiffness + m * form.boundary;
  const EigenResult er = smallest_eigenpair(shifted, form.B, opts);
  Lambda1Result r;
  r.energy = er.value;
  r.mu_min = er.value + m * m;
  r.lambda1 = std::sqrt(std::max(r.mu_min, 0.0));
  r.dofs = form.dofs.real_dofs();
  r.residual = er.residual;
  r.dense = er.dense;
  return r;
}

Lambda1Result lambda1_2d(const RightTriangle& tri, MassParam m, int n, const Lambda1Options& opts) {
  const TriangleMesh mesh = build_mesh(tri, n);
  const DiscreteForm form = assemble_form(mesh, tri, m, opts.threads);
  Lambda1Result r = smallest_form_eigenvalue(form, opts.eigen);
  r.n = n;
  return r;
}

Extrapolation extrapolate(std::span<const std::pair<int, double>> values) {
  if (values.size() < 3) throw DomainError("extrapolation needs at least three resolutions");
  std::vector<std::pair<int, double>> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  const auto& [n1, f1] = v[v.size() - 3];
  const auto& [n2, f2] = v[v.size() - 2];
  const auto& [n3, f3] = v[v.size() - 1];
  if (n1 <= 0 || n1 >= n2 || n2 >= n3) throw DomainError("resolutions must be distinct and positive");
  const double r = static_cast<double>(n2) / n1;
  if (std::abs(static_cast<double>(n3) / n2 - r) > 1e-12 * r) {
    throw DomainError("resolutions must form a geometric progression");
  }
  for (const auto& [n, f] : v) {
    if (!std::isfinite(f)) throw DomainError("extrapolation input is not finite");
  }
  const double d1 = f1 - f2;
  const double d2 = f2 - f3;
  Extrapolation out;
  const bool monotone = (d1 > 0 && d2 > 0) || (d1 < 0 && d2 < 0);
  if (!monotone || std::abs(d2) >= std::abs(d1)) {
    out.value = f3;
    out.order = std::numeric_limits<double>::quiet_NaN();
    out.error = std::abs(d2);
    out.declined = true;
    return out;
  }
  out.order = std::log(d1 / d2) / std::log(r);
  out.value = f3 - d2 / (std::pow(r, out.order) - 1.0);
  out.error = std::abs(f3 - out.value);
  return out;
}

Lambda1Estimate lambda1_extrapolated(const RightTriangle& tri, MassParam m,
                                     std::span<const int> ladder, const Lambda1Options& opts) {
  Lambda1Estimate est;
  est.mass = m.value();
  std::vector<std::pair<int, double>> energies;
  for (int n : ladder) {
    est.levels.push_back(lambda1_2d(tri, m, n, opts));
    energies.emplace_back(n, est.levels.back().energy);
  }
  est.energy = extrapolate(energies);
  const double mu = est.energy.value + est.mass * est.mass;
  if (!(mu > 0.0)) throw NumericError("extrapolated eigenvalue is not positive");
  est.lambda1 = std::sqrt(mu);
  est.lambda1_error = est.energy.error / (2.0 * est.lambda1);
  return est;
}

TrialField dirichlet_trial(const RightTriangle& tri) {
  const double a = tri.a();
  const double b = tri.b();
  return [a, b](double x, double y) {
    const double X = x / a;
    const double Y = y / b;
    const double phi = std::sin(2 * pi * X) * std::sin(pi * Y) + std::sin(2 * pi * Y) * std::sin(pi * X);
    const double px = (2 * pi * std::cos(2 * pi * X) * std::sin(pi * Y) +
                       pi * std::sin(2 * pi * Y) * std::cos(pi * X)) /
                      a;
    const double py = (pi * std::sin(2 * pi * X) * std::cos(pi * Y) +
                       2 * pi * std::cos(2 * pi * Y) * std::sin(pi * X)) /
                      b;
    return TrialSample{{cd(phi), cd(phi)}, {cd(px), cd(px)}, {cd(py), cd(py)}};
  };
}

double rayleigh_quotient(const TrialField& trial, const RightTriangle& tri, MassParam m,
                         double constraint_tol) {
  const double a = tri.a();
  const double b = tri.b();
  const double mv = m.value();

  const double l2 = triangle_integral(tri, [&](double x, double y) { return norm2(trial(x, y).value); });
  const double grad = triangle_integral(tri, [&](double x, double y) {
    const TrialSample s = trial(x, y);
    return norm2(s.dx) + norm2(s.dy);
  });
  if (!(l2 > 0.0) || !std::isfinite(l2) || !std::isfinite(grad)) {
    throw DomainError("trial field must be finite and nonzero");
  }

  struct Side {
    Point from;
    Point to;
    cd phase;
  };
  const cd ab = boundary_phases(tri).ab_phase;
  const Side sides[] = {{{0.0, 0.0}, {a, 0.0}, cd(1.0)},
                        {{a, 0.0}, {0.0, b}, ab},
                        {{0.0, b}, {0.0, 0.0}, cd(0.0, -1.0)}};
  const double rms = std::sqrt(l2 / tri.area());
  double trace = 0.0;
  for (const Side& s : sides) {
    const double len = std::hypot(s.to.x - s.from.x, s.to.y - s.from.y);
    auto at = [&](double t) {
      return trial(s.from.x + t * (s.to.x - s.from.x), s.from.y + t * (s.to.y - s.from.y)).value;
    };
    trace += len * gauss<double, 30>::integrate([&](double t) { return norm2(at(t)); }, 0.0, 1.0);
    for (int k = 0; k <= 64; ++k) {
      const Spinor v = at(k / 64.0);
      if (std::abs(v[1] - s.phase * v[0]) > constraint_tol * std::max(1.0, rms)) {
        throw DomainError("trial field violates a boundary relation");
      }
    }
  }
  return (grad + mv * mv * l2 + mv * trace) / l2;
}

}  // namespace trispec
