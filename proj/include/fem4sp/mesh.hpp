// Structured rectangular meshes of an axis-aligned rectangle.
#ifndef FEM4SP_MESH_HPP
#define FEM4SP_MESH_HPP

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace fem4sp {

using Index = std::int64_t;
using Point = Eigen::Vector2d;

struct Rectangle {
  double x_min = 0.0;
  double y_min = 0.0;
  double x_max = 1.0;
  double y_max = 1.0;

  double area() const { return (x_max - x_min) * (y_max - y_min); }
};

inline constexpr Rectangle unit_square{0.0, 0.0, 1.0, 1.0};

/// Direction an edge is aligned with. X edges are horizontal, Y edges vertical.
enum class Axis { X, Y };

/// Local edge slots of a cell, in the single internal order used everywhere.
enum LocalEdge : int { Right = 0, Top = 1, Left = 2, Bottom = 3 };

struct Edge {
  Axis axis;
  std::array<Index, 2> vertices;  // ordered by increasing coordinate
  std::array<Index, 2> cells{-1, -1};
  int cell_count = 0;
  bool boundary = false;
  double length = 0.0;
  Point midpoint;

  /// Fixed global normal: +x for vertical edges, +y for horizontal ones.
  Point normal() const { return axis == Axis::Y ? Point(1.0, 0.0) : Point(0.0, 1.0); }
  std::span<const Index> incident_cells() const {
    return {cells.data(), static_cast<std::size_t>(cell_count)};
  }
};

/// Affine image of the reference square: (xi, eta) -> center + (h1 xi, h2 eta).
struct CellGeometry {
  Point center;
  Eigen::Vector2d half_widths;

  Point map(const Eigen::Vector2d& ref) const {
    return center + half_widths.cwiseProduct(ref);
  }
  Eigen::Vector2d to_reference(const Point& x) const {
    return (x - center).cwiseQuotient(half_widths);
  }
  double area() const { return 4.0 * half_widths.x() * half_widths.y(); }
};

struct Cell {
  std::array<Index, 4> vertices;  // a1..a4 counterclockwise from lower-left
  std::array<Index, 4> edges;     // indexed by LocalEdge
  CellGeometry geometry;
};

class RectMesh {
public:
  RectMesh(Rectangle domain, int nx, int ny);

  const Rectangle& domain() const { return domain_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }

  Index num_vertices() const { return static_cast<Index>(vertices_.size()); }
  Index num_edges() const { return static_cast<Index>(edges_.size()); }
  Index num_cells() const { return static_cast<Index>(cells_.size()); }

  const Point& vertex(Index v) const;
  const Edge& edge(Index e) const;
  const Cell& cell(Index c) const;

  std::span<const Point> vertices() const { return vertices_; }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const Cell> cells() const { return cells_; }

  bool is_boundary_vertex(Index v) const;
  /// Largest cell diameter.
  double h() const;

  Index cell_index(int i, int j) const { return static_cast<Index>(j) * nx_ + i; }
  Index vertex_index(int i, int j) const { return static_cast<Index>(j) * (nx_ + 1) + i; }
  /// Horizontal edge from vertex (i, j) to (i + 1, j).
  Index horizontal_edge(int i, int j) const { return static_cast<Index>(j) * nx_ + i; }
  /// Vertical edge from vertex (i, j) to (i, j + 1).
  Index vertical_edge(int i, int j) const {
    return static_cast<Index>(nx_) * (ny_ + 1) + static_cast<Index>(j) * (nx_ + 1) + i;
  }

private:
  Rectangle domain_;
  int nx_;
  int ny_;
  std::vector<Point> vertices_;
  std::vector<Edge> edges_;
  std::vector<Cell> cells_;
};

RectMesh build_uniform_mesh(const Rectangle& domain, int nx, int ny);

CellGeometry cell_geometry(const RectMesh& mesh, Index cell);

struct EdgeInfo {
  Point global_normal;
  double length;
  Point midpoint;
  std::vector<Index> incident_cells;
  bool boundary;
};

EdgeInfo edge_info(const RectMesh& mesh, Index edge);

}  // namespace fem4sp

#endif  // FEM4SP_MESH_HPP
