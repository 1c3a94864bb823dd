#include "trispec/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "trispec/errors.hpp"

namespace trispec {

namespace {

double cross(Point o, Point a, Point b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

double signed_area(std::span<const Point> poly) {
  double s = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point& p = poly[i];
    const Point& q = poly[(i + 1) % poly.size()];
    s += p.x * q.y - q.x * p.y;
  }
  return 0.5 * s;
}

bool on_segment(Point p, Point a, Point b) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

bool segments_intersect(Point a, Point b, Point c, Point d) {
  const double d1 = cross(c, d, a);
  const double d2 = cross(c, d, b);
  const double d3 = cross(a, b, c);
  const double d4 = cross(a, b, d);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
    return true;
  }
  if (d1 == 0 && on_segment(a, c, d)) return true;
  if (d2 == 0 && on_segment(b, c, d)) return true;
  if (d3 == 0 && on_segment(c, a, b)) return true;
  if (d4 == 0 && on_segment(d, a, b)) return true;
  return false;
}

bool inside_or_on(Point p, Point a, Point b, Point c) {
  return cross(a, b, p) >= 0 && cross(b, c, p) >= 0 && cross(c, a, p) >= 0;
}

using EdgeKey = std::pair<int, int>;

// Builds the refined mesh, sharing nodes along coarse edges.
class Refiner {
 public:
  Refiner(std::span<const Point> outline, int n)
      : outline_(outline.begin(), outline.end()), n_(n), vertex_node_(outline.size(), -1) {}

  void add_triangle(const std::array<int, 3>& tri) {
    const int n = n_;
    std::vector<int> local((n + 1) * (n + 2) / 2);
    auto lid = [n](int i, int j) { return j * (n + 1) - j * (j - 1) / 2 + i; };
    const Point v0 = outline_[tri[0]];
    const Point v1 = outline_[tri[1]];
    const Point v2 = outline_[tri[2]];
    for (int j = 0; j <= n; ++j) {
      for (int i = 0; i + j <= n; ++i) {
        int id;
        if (i == 0 && j == 0) {
          id = vertex(tri[0]);
        } else if (i == n && j == 0) {
          id = vertex(tri[1]);
        } else if (i == 0 && j == n) {
          id = vertex(tri[2]);
        } else if (j == 0) {
          id = edge_node(tri[0], tri[1], i);
        } else if (i == 0) {
          id = edge_node(tri[0], tri[2], j);
        } else if (i + j == n) {
          id = edge_node(tri[1], tri[2], j);
        } else {
          id = new_node({v0.x + (v1.x - v0.x) * i / n + (v2.x - v0.x) * j / n,
                         v0.y + (v1.y - v0.y) * i / n + (v2.y - v0.y) * j / n});
        }
        local[lid(i, j)] = id;
      }
    }
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i + j < n; ++i) {
        mesh_.elements.push_back({local[lid(i, j)], local[lid(i + 1, j)], local[lid(i, j + 1)]});
        if (i + j < n - 1) {
          mesh_.elements.push_back(
              {local[lid(i + 1, j)], local[lid(i + 1, j + 1)], local[lid(i, j + 1)]});
        }
      }
    }
  }

  Mesh finish() {
    const int nv = static_cast<int>(outline_.size());
    for (int k = 0; k < nv; ++k) {
      const int a = k;
      const int b = (k + 1) % nv;
      std::vector<int> chain{vertex(a)};
      for (int step = 1; step < n_; ++step) chain.push_back(edge_node(a, b, step));
      chain.push_back(vertex(b));
      for (std::size_t t = 0; t + 1 < chain.size(); ++t) {
        mesh_.boundary_edges.push_back({chain[t], chain[t + 1], k});
      }
      mesh_.corner_nodes.push_back(vertex(a));
    }
    mesh_.n = n_;
    mesh_.outline = outline_;
    return std::move(mesh_);
  }

 private:
  int new_node(Point p) {
    mesh_.nodes.push_back(p);
    return static_cast<int>(mesh_.nodes.size()) - 1;
  }

  int vertex(int v) {
    if (vertex_node_[v] < 0) vertex_node_[v] = new_node(outline_[v]);
    return vertex_node_[v];
  }

  // Node `step` of n along the coarse edge from vertex `from` to `to`.
  int edge_node(int from, int to, int step) {
    const int lo = std::min(from, to);
    const int hi = std::max(from, to);
    auto& slots = edges_[{lo, hi}];
    if (slots.empty()) slots.assign(n_ - 1, -1);
    const int canonical = from == lo ? step : n_ - step;
    int& slot = slots[canonical - 1];
    if (slot < 0) {
      const Point a = outline_[lo];
      const Point b = outline_[hi];
      slot = new_node({a.x + (b.x - a.x) * canonical / n_, a.y + (b.y - a.y) * canonical / n_});
    }
    return slot;
  }

  std::vector<Point> outline_;
  int n_;
  std::vector<int> vertex_node_;
  std::map<EdgeKey, std::vector<int>> edges_;
  Mesh mesh_;
};

}  // namespace

double Mesh::element_area(std::size_t e) const {
  const auto& t = elements[e];
  return 0.5 * cross(nodes[t[0]], nodes[t[1]], nodes[t[2]]);
}

double Mesh::total_area() const {
  double s = 0.0;
  for (std::size_t e = 0; e < elements.size(); ++e) s += element_area(e);
  return s;
}

Point Mesh::outward_normal(int side) const {
  const Point a = outline[side];
  const Point b = outline[(side + 1) % outline.size()];
  const double len = std::hypot(b.x - a.x, b.y - a.y);
  return {(b.y - a.y) / len, -(b.x - a.x) / len};
}

void validate_polygon(std::span<const Point> polygon) {
  const std::size_t nv = polygon.size();
  if (nv < 3) throw GeometryError("polygon needs at least three vertices");
  for (const Point& p : polygon) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw GeometryError("polygon vertex is not finite");
    }
  }
  for (std::size_t i = 0; i < nv; ++i) {
    for (std::size_t j = i + 1; j < nv; ++j) {
      if (polygon[i].x == polygon[j].x && polygon[i].y == polygon[j].y) {
        throw GeometryError("polygon has repeated vertices");
      }
    }
  }
  for (std::size_t i = 0; i < nv; ++i) {
    for (std::size_t j = i + 1; j < nv; ++j) {
      const bool adjacent = j == i + 1 || (i == 0 && j == nv - 1);
      if (adjacent) continue;
      if (segments_intersect(polygon[i], polygon[(i + 1) % nv], polygon[j],
                             polygon[(j + 1) % nv])) {
        std::ostringstream os;
        os << "polygon is self-intersecting (sides " << i << " and " << j << ")";
        throw GeometryError(os.str());
      }
    }
  }
  if (!(signed_area(polygon) > 0.0)) {
    throw GeometryError("polygon vertices must be in counter-clockwise order");
  }
}

std::vector<std::array<int, 3>> triangulate_polygon(std::span<const Point> polygon) {
  std::vector<int> ring(polygon.size());
  for (std::size_t i = 0; i < ring.size(); ++i) ring[i] = static_cast<int>(i);
  std::vector<std::array<int, 3>> out;
  while (ring.size() > 3) {
    bool clipped = false;
    for (std::size_t k = 0; k < ring.size(); ++k) {
      const int prev = ring[(k + ring.size() - 1) % ring.size()];
      const int cur = ring[k];
      const int next = ring[(k + 1) % ring.size()];
      if (cross(polygon[prev], polygon[cur], polygon[next]) <= 0.0) continue;
      bool empty = true;
      for (int other : ring) {
        if (other == prev || other == cur || other == next) continue;
        if (inside_or_on(polygon[other], polygon[prev], polygon[cur], polygon[next])) {
          empty = false;
          break;
        }
      }
      if (!empty) continue;
      out.push_back({prev, cur, next});
      ring.erase(ring.begin() + static_cast<std::ptrdiff_t>(k));
      clipped = true;
      break;
    }
    if (!clipped) throw GeometryError("ear clipping failed; polygon is not simple");
  }
  out.push_back({ring[0], ring[1], ring[2]});
  return out;
}

Mesh mesh_polygon(std::span<const Point> polygon, int n) {
  if (n < 1) throw DomainError("mesh subdivision count must be positive");
  validate_polygon(polygon);
  Refiner refiner(polygon, n);
  for (const auto& tri : triangulate_polygon(polygon)) refiner.add_triangle(tri);
  Mesh mesh = refiner.finish();
  for (std::size_t e = 0; e < mesh.elements.size(); ++e) {
    if (!(mesh.element_area(e) > 0.0)) throw MeshError("mesh produced a degenerate element");
  }
  return mesh;
}

TriangleMesh build_mesh(const RightTriangle& tri, int n) {
  if (n < 2) throw DomainError("triangle mesh needs n >= 2 subdivisions per leg");
  const Point outline[] = {{0.0, 0.0}, {tri.a(), 0.0}, {0.0, tri.b()}};
  return mesh_polygon(outline, n);
}

std::vector<std::vector<int>> node_sides(const Mesh& mesh) {
  std::vector<std::vector<int>> sides(mesh.nodes.size());
  auto add = [&](int node, int side) {
    auto& s = sides[node];
    if (std::find(s.begin(), s.end(), side) == s.end()) s.push_back(side);
  };
  for (const BoundaryEdge& e : mesh.boundary_edges) {
    add(e.n0, e.side);
    add(e.n1, e.side);
  }
  return sides;
}

void check_boundary_tags(const Mesh& mesh) {
  std::map<EdgeKey, int> use;
  for (const auto& t : mesh.elements) {
    for (int k = 0; k < 3; ++k) {
      const int a = t[k];
      const int b = t[(k + 1) % 3];
      ++use[{std::min(a, b), std::max(a, b)}];
    }
  }
  std::map<EdgeKey, int> tags;
  for (const BoundaryEdge& e : mesh.boundary_edges) {
    ++tags[{std::min(e.n0, e.n1), std::max(e.n0, e.n1)}];
  }
  for (const auto& [key, count] : use) {
    if (count > 2) throw MeshError("mesh edge shared by more than two elements");
    const auto it = tags.find(key);
    const int tag_count = it == tags.end() ? 0 : it->second;
    if (count == 1 && tag_count != 1) {
      std::ostringstream os;
      os << "boundary edge (" << key.first << ", " << key.second << ") carries " << tag_count
         << " side tags";
      throw MeshError(os.str());
    }
    if (count == 2 && tag_count != 0) throw MeshError("interior edge carries a side tag");
  }
  if (tags.size() != mesh.boundary_edges.size()) {
    throw MeshError("duplicate boundary edge tags");
  }
  const auto sides = node_sides(mesh);
  for (int c : mesh.corner_nodes) {
    if (sides[c].size() != 2) throw MeshError("corner node must touch exactly two sides");
  }
}

}  // namespace trispec
