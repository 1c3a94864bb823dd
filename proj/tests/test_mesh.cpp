#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "doctest.h"
#include "trispec/errors.hpp"
#include "trispec/mesh.hpp"

using namespace trispec;

namespace {

const std::vector<Point> kPentagon = {{0, 0}, {2, 0}, {3, 1}, {2.5, 2}, {0.5, 1.5}};

double polygon_area(const std::vector<Point>& p) {
  double s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& q = p[(i + 1) % p.size()];
    s += p[i].x * q.y - q.x * p[i].y;
  }
  return s / 2;
}

}  // namespace

TEST_SUITE("mesh") {
  TEST_CASE("counts") {
    const auto m2 = build_mesh(RightTriangle(1, 1), 2);
    CHECK(m2.nodes.size() == 6);
    CHECK(m2.elements.size() == 4);
    CHECK(m2.boundary_edges.size() == 6);
    const auto m64 = build_mesh(RightTriangle(2, 1), 64);
    CHECK(m64.nodes.size() == 2145);
    CHECK(m64.elements.size() == 64u * 64u);
    CHECK_THROWS_AS(build_mesh(RightTriangle(1, 1), 1), DomainError);
  }

  TEST_CASE("areas, orientation and tags") {
    for (auto [a, b] : {std::pair{1.0, 1.0}, std::pair{2.0, 1.0}, std::pair{0.3, 5.0}}) {
      for (int n : {2, 3, 7, 16}) {
        const auto mesh = build_mesh(RightTriangle(a, b), n);
        CAPTURE(n);
        CHECK(mesh.n == n);
        CHECK(mesh.nodes.size() == static_cast<std::size_t>((n + 1) * (n + 2) / 2));
        for (std::size_t e = 0; e < mesh.elements.size(); ++e) CHECK(mesh.element_area(e) > 0.0);
        CHECK(std::abs(mesh.total_area() - a * b / 2) <= 1e-12 * a * b / 2);
        CHECK_NOTHROW(check_boundary_tags(mesh));
        REQUIRE(mesh.corner_nodes.size() == 3);
        const auto sides = node_sides(mesh);
        for (int c : mesh.corner_nodes) CHECK(sides[c].size() == 2);
        // Each side has n sub-edges.
        std::map<int, int> per_side;
        for (const auto& e : mesh.boundary_edges) ++per_side[e.side];
        CHECK(per_side[static_cast<int>(TriangleSide::OA)] == n);
        CHECK(per_side[static_cast<int>(TriangleSide::AB)] == n);
        CHECK(per_side[static_cast<int>(TriangleSide::OB)] == n);
      }
    }
  }

  TEST_CASE("side tags sit on the right lines") {
    const double a = 2.0;
    const double b = 1.0;
    const auto mesh = build_mesh(RightTriangle(a, b), 8);
    for (const auto& e : mesh.boundary_edges) {
      for (int v : {e.n0, e.n1}) {
        const Point p = mesh.nodes[v];
        switch (static_cast<TriangleSide>(e.side)) {
          case TriangleSide::OA: CHECK(p.y == 0.0); break;
          case TriangleSide::OB: CHECK(p.x == 0.0); break;
          case TriangleSide::AB: CHECK(std::abs(p.x / a + p.y / b - 1.0) < 1e-14); break;
        }
      }
    }
    CHECK(mesh.nodes[mesh.corner_nodes[0]].x == 0.0);
    CHECK(mesh.nodes[mesh.corner_nodes[1]].x == a);
    CHECK(mesh.nodes[mesh.corner_nodes[2]].y == b);
  }

  TEST_CASE("outward normals") {
    const auto mesh = build_mesh(RightTriangle(3, 4), 2);
    const Point nOA = mesh.outward_normal(0);
    const Point nAB = mesh.outward_normal(1);
    const Point nOB = mesh.outward_normal(2);
    CHECK(nOA.x == doctest::Approx(0.0));
    CHECK(nOA.y == doctest::Approx(-1.0));
    CHECK(nAB.x == doctest::Approx(0.8));
    CHECK(nAB.y == doctest::Approx(0.6));
    CHECK(nOB.x == doctest::Approx(-1.0));
    CHECK(nOB.y == doctest::Approx(0.0));
  }

  TEST_CASE("polygon validation") {
    CHECK_NOTHROW(validate_polygon(kPentagon));
    std::vector<Point> cw(kPentagon.rbegin(), kPentagon.rend());
    CHECK_THROWS_AS(validate_polygon(cw), GeometryError);
    const std::vector<Point> bowtie = {{0, 0}, {1, 1}, {1, 0}, {0, 1}};
    CHECK_THROWS_AS(validate_polygon(bowtie), GeometryError);
    CHECK_THROWS_AS(mesh_polygon(bowtie, 2), GeometryError);
    const std::vector<Point> two = {{0, 0}, {1, 0}};
    CHECK_THROWS_AS(validate_polygon(two), GeometryError);
    const std::vector<Point> repeated = {{0, 0}, {1, 0}, {1, 0}, {0, 1}};
    CHECK_THROWS_AS(validate_polygon(repeated), GeometryError);
  }

  TEST_CASE("ear clipping covers the polygon") {
    const std::vector<Point> notch = {{0, 0}, {4, 0}, {4, 3}, {2, 1}, {0, 3}};
    for (const auto& poly : {kPentagon, notch}) {
      const auto tris = triangulate_polygon(poly);
      CHECK(tris.size() == poly.size() - 2);
      double area = 0;
      for (const auto& t : tris) {
        const Point& p = poly[t[0]];
        const Point& q = poly[t[1]];
        const Point& r = poly[t[2]];
        const double s = 0.5 * ((q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x));
        CHECK(s > 0);
        area += s;
      }
      CHECK(area == doctest::Approx(polygon_area(poly)).epsilon(1e-14));
    }
  }

  TEST_CASE("polygon meshes are conforming") {
    const std::vector<Point> square = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    for (const auto& poly : {kPentagon, square}) {
      for (int n : {1, 2, 5}) {
        const Mesh mesh = mesh_polygon(poly, n);
        CAPTURE(n);
        CHECK(mesh.elements.size() == (poly.size() - 2) * n * n);
        CHECK(mesh.total_area() == doctest::Approx(polygon_area(poly)).epsilon(1e-13));
        CHECK_NOTHROW(check_boundary_tags(mesh));
        CHECK(mesh.boundary_edges.size() == poly.size() * n);
        // No duplicate coordinates.
        std::set<std::pair<double, double>> seen;
        for (const auto& p : mesh.nodes) CHECK(seen.insert({p.x, p.y}).second);
        // Euler characteristic of a disk: V - E + F = 1.
        std::set<std::pair<int, int>> edges;
        for (const auto& t : mesh.elements) {
          for (int k = 0; k < 3; ++k) {
            edges.insert({std::min(t[k], t[(k + 1) % 3]), std::max(t[k], t[(k + 1) % 3])});
          }
        }
        CHECK(static_cast<long>(mesh.nodes.size()) - static_cast<long>(edges.size()) +
                  static_cast<long>(mesh.elements.size()) ==
              1);
      }
    }
  }

  TEST_CASE("a single-triangle polygon reproduces the structured mesh") {
    const RightTriangle t(2.0, 1.5);
    const Mesh a = build_mesh(t, 6);
    const std::vector<Point> tri = {{0, 0}, {2.0, 0}, {0, 1.5}};
    const Mesh b = mesh_polygon(tri, 6);
    REQUIRE(a.nodes.size() == b.nodes.size());
    for (std::size_t i = 0; i < a.nodes.size(); ++i) {
      CHECK(a.nodes[i].x == b.nodes[i].x);
      CHECK(a.nodes[i].y == b.nodes[i].y);
    }
    CHECK(a.elements == b.elements);
  }

  TEST_CASE("tag checker rejects a missing tag") {
    Mesh mesh = build_mesh(RightTriangle(1, 1), 3);
    mesh.boundary_edges.pop_back();
    CHECK_THROWS_AS(check_boundary_tags(mesh), MeshError);
  }
}
