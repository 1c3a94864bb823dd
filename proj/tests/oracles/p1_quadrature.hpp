#pragma once

// Quadratic form of a piecewise-linear spinor field evaluated element by
// element with tensor Gauss rules on the collapsed square. Gradients come
// from solving the 2x2 affine fit of the nodal values.

#include <array>
#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss.hpp>

namespace oracle {

struct P1Field {
  std::vector<std::array<double, 2>> nodes;
  std::vector<std::array<int, 3>> elements;
  std::vector<std::array<int, 2>> boundary_edges;
  std::vector<std::complex<double>> psi1;
  std::vector<std::complex<double>> psi2;
};

struct FormParts {
  double gradient = 0.0;
  double l2 = 0.0;
  double trace = 0.0;
};

inline FormParts quadratic_form(const P1Field& f) {
  using cd = std::complex<double>;
  using boost::math::quadrature::gauss;
  const auto& xs = gauss<double, 7>::abscissa();
  const auto& ws = gauss<double, 7>::weights();
  // Symmetric rule on [-1, 1] from the half-rule tables.
  std::vector<double> pts;
  std::vector<double> wts;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    pts.push_back(xs[k]);
    wts.push_back(ws[k]);
    if (xs[k] != 0.0) {
      pts.push_back(-xs[k]);
      wts.push_back(ws[k]);
    }
  }

  FormParts out;
  for (const auto& t : f.elements) {
    const auto& p0 = f.nodes[t[0]];
    const auto& p1 = f.nodes[t[1]];
    const auto& p2 = f.nodes[t[2]];
    Eigen::Matrix2d J;
    J << p1[0] - p0[0], p2[0] - p0[0], p1[1] - p0[1], p2[1] - p0[1];
    const double detJ = std::abs(J.determinant());
    for (int comp = 0; comp < 2; ++comp) {
      const auto& v = comp == 0 ? f.psi1 : f.psi2;
      // u(x) = v0 + g . (x - p0), g solves J^T g = (v1 - v0, v2 - v0).
      Eigen::Vector2cd rhs(v[t[1]] - v[t[0]], v[t[2]] - v[t[0]]);
      const Eigen::Vector2cd g = J.transpose().cast<cd>().fullPivLu().solve(rhs);
      for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = 0; j < pts.size(); ++j) {
          // Collapsed map of [-1,1]^2 onto the reference triangle.
          const double s = 0.5 * (1.0 + pts[i]);
          const double r = 0.5 * (1.0 + pts[j]) * (1.0 - s);
          const double w = wts[i] * wts[j] * 0.25 * (1.0 - s) * detJ;
          const cd val = v[t[0]] * (1.0 - s - r) + v[t[1]] * r + v[t[2]] * s;
          out.l2 += w * std::norm(val);
          out.gradient += w * (std::norm(g[0]) + std::norm(g[1]));
        }
      }
    }
  }
  for (const auto& e : f.boundary_edges) {
    const auto& a = f.nodes[e[0]];
    const auto& b = f.nodes[e[1]];
    const double len = std::hypot(b[0] - a[0], b[1] - a[1]);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double t = 0.5 * (1.0 + pts[i]);
      const double w = 0.5 * wts[i] * len;
      const cd u1 = f.psi1[e[0]] * (1.0 - t) + f.psi1[e[1]] * t;
      const cd u2 = f.psi2[e[0]] * (1.0 - t) + f.psi2[e[1]] * t;
      out.trace += w * (std::norm(u1) + std::norm(u2));
    }
  }
  return out;
}

}  // namespace oracle
