#include "trispec/form.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "trispec/errors.hpp"

namespace trispec {

namespace {

using Triplet = Eigen::Triplet<double>;
using cd = std::complex<double>;

struct Accumulator {
  std::vector<Triplet> stiffness;
  std::vector<Triplet> mass;
};

// Adds conj(alpha) * s * beta to the realified Hermitian block at (d, e).
void add_entry(std::vector<Triplet>& out, int D, int d, int e, cd w) {
  out.emplace_back(d, e, w.real());
  out.emplace_back(d + D, e + D, w.real());
  if (w.imag() != 0.0) {
    out.emplace_back(d, e + D, -w.imag());
    out.emplace_back(d + D, e, w.imag());
  }
}

template <std::size_t N>
void scatter(std::vector<Triplet>& out, const DofMap& dofs, const std::array<int, N>& nodes,
             const double (&S)[N][N]) {
  const int D = dofs.complex_dofs;
  for (int c = 0; c < 2; ++c) {
    for (std::size_t i = 0; i < N; ++i) {
      const int d = dofs.index[nodes[i]][c];
      if (d < 0) continue;
      const cd alpha = std::conj(dofs.coeff[nodes[i]][c]);
      for (std::size_t j = 0; j < N; ++j) {
        const int e = dofs.index[nodes[j]][c];
        if (e < 0) continue;
        add_entry(out, D, d, e, alpha * S[i][j] * dofs.coeff[nodes[j]][c]);
      }
    }
  }
}

void assemble_elements(const Mesh& mesh, const DofMap& dofs, std::size_t begin, std::size_t end,
                       Accumulator& acc) {
  for (std::size_t e = begin; e < end; ++e) {
    const auto& t = mesh.elements[e];
    const Point p[3] = {mesh.nodes[t[0]], mesh.nodes[t[1]], mesh.nodes[t[2]]};
    const double area = mesh.element_area(e);
    const double scale = std::max({std::abs(p[1].x - p[0].x), std::abs(p[1].y - p[0].y),
                                   std::abs(p[2].x - p[0].x), std::abs(p[2].y - p[0].y)});
    if (!(area > 1e-14 * scale * scale)) throw MeshError("singular element in assembly");
    double gx[3];
    double gy[3];
    for (int i = 0; i < 3; ++i) {
      const Point& pj = p[(i + 1) % 3];
      const Point& pk = p[(i + 2) % 3];
      gx[i] = (pj.y - pk.y) / (2.0 * area);
      gy[i] = (pk.x - pj.x) / (2.0 * area);
    }
    double K[3][3];
    double M[3][3];
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        K[i][j] = area * (gx[i] * gx[j] + gy[i] * gy[j]);
        M[i][j] = area / 12.0 * (i == j ? 2.0 : 1.0);
      }
    }
    scatter(acc.stiffness, dofs, t, K);
    scatter(acc.mass, dofs, t, M);
  }
}

ConstraintMap constraints_from_side_phases(const Mesh& mesh, const std::vector<cd>& phases) {
  check_boundary_tags(mesh);
  const auto sides = node_sides(mesh);
  ConstraintMap out(mesh.nodes.size());
  for (std::size_t v = 0; v < sides.size(); ++v) {
    const auto& s = sides[v];
    if (s.empty()) continue;
    const cd p0 = phases[s.front()];
    bool agree = true;
    for (int side : s) agree = agree && std::abs(phases[side] - p0) <= 1e-14;
    out[v] = agree ? NodeConstraint{NodeKind::Linked, p0} : NodeConstraint{NodeKind::Pinned, 0.0};
  }
  return out;
}

SparseMatrix from_triplets(int n, const std::vector<Triplet>& t) {
  SparseMatrix M(n, n);
  M.setFromTriplets(t.begin(), t.end());
  M.makeCompressed();
  return M;
}

}  // namespace

cd normal_phase(Point n) { return cd(0.0, 1.0) * cd(n.x, n.y); }

cd triangle_side_phase(TriangleSide side, const RightTriangle& tri) {
  switch (side) {
    case TriangleSide::OA:
      return {1.0, 0.0};
    case TriangleSide::OB:
      return {0.0, -1.0};
    case TriangleSide::AB:
      return boundary_phases(tri).ab_phase;
  }
  return {};
}

ConstraintMap boundary_constraints(const TriangleMesh& mesh, const RightTriangle& tri) {
  if (mesh.outline.size() != 3) throw MeshError("triangle mesh must have three sides");
  const std::vector<cd> phases = {triangle_side_phase(TriangleSide::OA, tri),
                                  triangle_side_phase(TriangleSide::AB, tri),
                                  triangle_side_phase(TriangleSide::OB, tri)};
  return constraints_from_side_phases(mesh, phases);
}

ConstraintMap polygon_constraints(const Mesh& mesh) {
  std::vector<cd> phases;
  for (std::size_t k = 0; k < mesh.outline.size(); ++k) {
    phases.push_back(normal_phase(mesh.outward_normal(static_cast<int>(k))));
  }
  return constraints_from_side_phases(mesh, phases);
}

DofMap make_dof_map(const ConstraintMap& constraints) {
  DofMap map;
  map.index.resize(constraints.size());
  map.coeff.resize(constraints.size());
  int next = 0;
  for (std::size_t v = 0; v < constraints.size(); ++v) {
    const NodeConstraint& c = constraints[v];
    switch (c.kind) {
      case NodeKind::Free:
        map.index[v] = {next, next + 1};
        map.coeff[v] = {cd(1.0), cd(1.0)};
        next += 2;
        break;
      case NodeKind::Linked:
        map.index[v] = {next, next};
        map.coeff[v] = {cd(1.0), c.phase};
        next += 1;
        break;
      case NodeKind::Pinned:
        map.index[v] = {-1, -1};
        map.coeff[v] = {cd(0.0), cd(0.0)};
        break;
    }
  }
  map.complex_dofs = next;
  return map;
}

SpinorField expand(const DofMap& dofs, const Eigen::VectorXd& x) {
  const int D = dofs.complex_dofs;
  if (x.size() != dofs.real_dofs()) throw DomainError("vector size does not match dof map");
  SpinorField f;
  f.psi1.resize(dofs.index.size());
  f.psi2.resize(dofs.index.size());
  for (std::size_t v = 0; v < dofs.index.size(); ++v) {
    for (int c = 0; c < 2; ++c) {
      const int d = dofs.index[v][c];
      const cd val = d < 0 ? cd(0.0) : dofs.coeff[v][c] * cd(x[d], x[d + D]);
      (c == 0 ? f.psi1 : f.psi2)[v] = val;
    }
  }
  return f;
}

DiscreteForm assemble_with_constraints(const Mesh& mesh, const ConstraintMap& constraints,
                                       MassParam m, int threads) {
  if (constraints.size() != mesh.nodes.size()) {
    throw MeshError("constraint map does not match mesh");
  }
  DiscreteForm form;
  form.mass = m.value();
  form.dofs = make_dof_map(constraints);
  const int n = form.dofs.real_dofs();
  if (n == 0) throw MeshError("mesh has no free unknowns");

  const std::size_t ne = mesh.elements.size();
  const std::size_t workers =
      std::clamp<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), 1, ne);
  std::vector<Accumulator> acc(workers);
  if (workers == 1) {
    assemble_elements(mesh, form.dofs, 0, ne, acc[0]);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          assemble_elements(mesh, form.dofs, ne * w / workers, ne * (w + 1) / workers, acc[w]);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  for (std::size_t w = 1; w < workers; ++w) {
    acc[0].stiffness.insert(acc[0].stiffness.end(), acc[w].stiffness.begin(),
                            acc[w].stiffness.end());
    acc[0].mass.insert(acc[0].mass.end(), acc[w].mass.begin(), acc[w].mass.end());
  }

  // |gamma u|^2 = |psi1|^2 + |psi2|^2 along each edge, exact for linears.
  std::vector<Triplet> boundary;
  for (const BoundaryEdge& e : mesh.boundary_edges) {
    const Point a = mesh.nodes[e.n0];
    const Point b = mesh.nodes[e.n1];
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    const double S[2][2] = {{len / 3.0, len / 6.0}, {len / 6.0, len / 3.0}};
    scatter(boundary, form.dofs, std::array<int, 2>{e.n0, e.n1}, S);
  }

  form.stiffness = from_triplets(n, acc[0].stiffness);
  form.B = from_triplets(n, acc[0].mass);
  form.boundary = from_triplets(n, boundary);
  const double mv = m.value();
  form.A = form.stiffness + (mv * mv) * form.B + mv * form.boundary;
  form.A.makeCompressed();
  return form;
}

DiscreteForm assemble_form(const TriangleMesh& mesh, const RightTriangle& tri, MassParam m,
                           int threads) {
  return assemble_with_constraints(mesh, boundary_constraints(mesh, tri), m, threads);
}

DiscreteForm assemble_polygon_form(const Mesh& mesh, MassParam m, int threads) {
  return assemble_with_constraints(mesh, polygon_constraints(mesh), m, threads);
}

DiscreteForm assemble_polygon_form(std::span<const Point> polygon, int n, MassParam m,
                                   int threads) {
  return assemble_polygon_form(mesh_polygon(polygon, n), m, threads);
}

double symmetry_defect(const SparseMatrix& M) {
  const double norm = M.norm();
  if (norm == 0.0) return 0.0;
  const SparseMatrix T = M.transpose();
  return (M - T).norm() / norm;
}

}  // namespace trispec
