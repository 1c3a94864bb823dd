#pragma once

#include <array>
#include <span>
#include <vector>

#include "trispec/geometry.hpp"

namespace trispec {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Boundary segment between two mesh nodes lying on polygon side `side`
/// (side k joins outline[k] and outline[k+1]).
struct BoundaryEdge {
  int n0 = 0;
  int n1 = 0;
  int side = 0;
};

/// Sides of the right triangle, indexed along the outline O -> A -> B.
enum class TriangleSide : int { OA = 0, AB = 1, OB = 2 };

/// Conforming P1 triangulation of a polygon obtained by splitting every
/// coarse triangle of a polygon triangulation into n^2 congruent pieces.
struct Mesh {
  int n = 0;
  std::vector<Point> outline;  ///< counter-clockwise polygon vertices
  std::vector<Point> nodes;
  std::vector<std::array<int, 3>> elements;  ///< counter-clockwise
  std::vector<BoundaryEdge> boundary_edges;
  std::vector<int> corner_nodes;  ///< node id of outline[k]

  double element_area(std::size_t e) const;
  double total_area() const;
  /// Unit outward normal of polygon side k.
  Point outward_normal(int side) const;
};

using TriangleMesh = Mesh;

/// Structured mesh of the right triangle with n subdivisions per leg:
/// (n+1)(n+2)/2 nodes and n^2 elements.
TriangleMesh build_mesh(const RightTriangle& tri, int n);

/// Throws GeometryError unless the polygon is simple, counter-clockwise and
/// free of repeated vertices.
void validate_polygon(std::span<const Point> polygon);

/// Ear-clipping triangulation of a simple counter-clockwise polygon.
std::vector<std::array<int, 3>> triangulate_polygon(std::span<const Point> polygon);

Mesh mesh_polygon(std::span<const Point> polygon, int n);

/// Checks that every topological boundary edge carries exactly one side tag
/// and that corner nodes touch two tagged sides. Throws MeshError.
void check_boundary_tags(const Mesh& mesh);

/// Side tags incident to each node (empty for interior nodes).
std::vector<std::vector<int>> node_sides(const Mesh& mesh);

}  // namespace trispec
