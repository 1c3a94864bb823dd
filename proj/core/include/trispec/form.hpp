#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "trispec/geometry.hpp"
#include "trispec/mesh.hpp"

namespace trispec {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;

enum class NodeKind { Free, Linked, Pinned };

/// Per-node boundary relation: Free nodes carry (psi1, psi2) independently,
/// Linked nodes satisfy psi2 = phase * psi1, Pinned nodes vanish.
struct NodeConstraint {
  NodeKind kind = NodeKind::Free;
  std::complex<double> phase{1.0, 0.0};
};

using ConstraintMap = std::vector<NodeConstraint>;

/// Phase of the relation psi2 = phase * psi1 on a side with unit outward
/// normal n: i (n1 + i n2).
std::complex<double> normal_phase(Point outward_normal);

std::complex<double> triangle_side_phase(TriangleSide side, const RightTriangle& tri);

/// Relations on the right-triangle mesh from the side tags. Corner nodes get
/// both incident relations, which pins them when the phases differ.
ConstraintMap boundary_constraints(const TriangleMesh& mesh, const RightTriangle& tri);

/// Relations from the outward normals of the mesh outline.
ConstraintMap polygon_constraints(const Mesh& mesh);

/// Complex reduced unknowns. Component c of node v equals
/// coeff[v][c] * z[index[v][c]], or zero when index is -1.
struct DofMap {
  std::vector<std::array<int, 2>> index;
  std::vector<std::array<std::complex<double>, 2>> coeff;
  int complex_dofs = 0;

  /// Realified size: Re z occupies [0, D), Im z occupies [D, 2D).
  int real_dofs() const { return 2 * complex_dofs; }
};

DofMap make_dof_map(const ConstraintMap& constraints);

struct SpinorField {
  std::vector<std::complex<double>> psi1;
  std::vector<std::complex<double>> psi2;
};

SpinorField expand(const DofMap& dofs, const Eigen::VectorXd& x);

/// Realified quadratic form Q[u] = |grad u|^2 + m^2 |u|^2 + m |gamma u|^2 and
/// the mass matrix B, both symmetric in the realified basis. The parts are
/// kept so that shifted pencils can be formed without cancellation.
struct DiscreteForm {
  double mass = 0.0;
  SparseMatrix A;
  SparseMatrix B;
  SparseMatrix stiffness;
  SparseMatrix boundary;
  DofMap dofs;
};

DiscreteForm assemble_with_constraints(const Mesh& mesh, const ConstraintMap& constraints,
                                       MassParam m, int threads = 1);

DiscreteForm assemble_form(const TriangleMesh& mesh, const RightTriangle& tri, MassParam m,
                           int threads = 1);

DiscreteForm assemble_polygon_form(const Mesh& mesh, MassParam m, int threads = 1);
DiscreteForm assemble_polygon_form(std::span<const Point> polygon, int n, MassParam m,
                                   int threads = 1);

/// ||M - M^T||_F / ||M||_F.
double symmetry_defect(const SparseMatrix& M);

}  // namespace trispec
