#include "fem4sp/mesh.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fem4sp {

RectMesh::RectMesh(Rectangle domain, int nx, int ny) : domain_(domain), nx_(nx), ny_(ny) {
  if (nx < 1 || ny < 1) {
    throw std::invalid_argument("RectMesh: cell counts must be positive, got " +
                                std::to_string(nx) + "x" + std::to_string(ny));
  }
  const double lx = domain.x_max - domain.x_min;
  const double ly = domain.y_max - domain.y_min;
  if (!(lx > 0.0) || !(ly > 0.0) || !std::isfinite(lx) || !std::isfinite(ly)) {
    throw std::invalid_argument("RectMesh: degenerate domain");
  }
  const double dx = lx / nx;
  const double dy = ly / ny;
  auto xcoord = [&](int i) { return i == nx ? domain.x_max : domain.x_min + i * dx; };
  auto ycoord = [&](int j) { return j == ny ? domain.y_max : domain.y_min + j * dy; };

  vertices_.reserve(static_cast<std::size_t>((nx + 1) * (ny + 1)));
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      vertices_.emplace_back(xcoord(i), ycoord(j));
    }
  }

  edges_.resize(static_cast<std::size_t>(nx * (ny + 1) + ny * (nx + 1)));
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      Edge& e = edges_[horizontal_edge(i, j)];
      e.axis = Axis::X;
      e.vertices = {vertex_index(i, j), vertex_index(i + 1, j)};
      if (j > 0) e.cells[e.cell_count++] = cell_index(i, j - 1);
      if (j < ny) e.cells[e.cell_count++] = cell_index(i, j);
      e.boundary = (j == 0 || j == ny);
    }
  }
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      Edge& e = edges_[vertical_edge(i, j)];
      e.axis = Axis::Y;
      e.vertices = {vertex_index(i, j), vertex_index(i, j + 1)};
      if (i > 0) e.cells[e.cell_count++] = cell_index(i - 1, j);
      if (i < nx) e.cells[e.cell_count++] = cell_index(i, j);
      e.boundary = (i == 0 || i == nx);
    }
  }
  for (Edge& e : edges_) {
    const Point& a = vertices_[e.vertices[0]];
    const Point& b = vertices_[e.vertices[1]];
    e.length = (b - a).norm();
    e.midpoint = 0.5 * (a + b);
  }

  cells_.reserve(static_cast<std::size_t>(nx * ny));
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      Cell c;
      c.vertices = {vertex_index(i, j), vertex_index(i + 1, j), vertex_index(i + 1, j + 1),
                    vertex_index(i, j + 1)};
      c.edges[Right] = vertical_edge(i + 1, j);
      c.edges[Top] = horizontal_edge(i, j + 1);
      c.edges[Left] = vertical_edge(i, j);
      c.edges[Bottom] = horizontal_edge(i, j);
      const Point& lo = vertices_[c.vertices[0]];
      const Point& hi = vertices_[c.vertices[2]];
      c.geometry.center = 0.5 * (lo + hi);
      c.geometry.half_widths = 0.5 * (hi - lo);
      cells_.push_back(c);
    }
  }
}

const Point& RectMesh::vertex(Index v) const {
  if (v < 0 || v >= num_vertices()) throw std::out_of_range("RectMesh: vertex id out of range");
  return vertices_[static_cast<std::size_t>(v)];
}

const Edge& RectMesh::edge(Index e) const {
  if (e < 0 || e >= num_edges()) throw std::out_of_range("RectMesh: edge id out of range");
  return edges_[static_cast<std::size_t>(e)];
}

const Cell& RectMesh::cell(Index c) const {
  if (c < 0 || c >= num_cells()) throw std::out_of_range("RectMesh: cell id out of range");
  return cells_[static_cast<std::size_t>(c)];
}

bool RectMesh::is_boundary_vertex(Index v) const {
  const Index i = v % (nx_ + 1);
  const Index j = v / (nx_ + 1);
  return i == 0 || j == 0 || i == nx_ || j == ny_;
}

double RectMesh::h() const {
  double h = 0.0;
  for (const Cell& c : cells_) h = std::max(h, 2.0 * c.geometry.half_widths.norm());
  return h;
}

RectMesh build_uniform_mesh(const Rectangle& domain, int nx, int ny) {
  return RectMesh(domain, nx, ny);
}

CellGeometry cell_geometry(const RectMesh& mesh, Index cell) {
  return mesh.cell(cell).geometry;
}

EdgeInfo edge_info(const RectMesh& mesh, Index edge) {
  const Edge& e = mesh.edge(edge);
  const auto cells = e.incident_cells();
  return {e.normal(), e.length, e.midpoint, {cells.begin(), cells.end()}, e.boundary};
}

}  // namespace fem4sp
