#include "fem4sp/space.hpp"

#include "fem4sp/quadrature.hpp"

#include <algorithm>
#include <stdexcept>

namespace fem4sp {

namespace {

bool has_midpoints(const ReferenceElement& elem) {
  return std::ranges::any_of(elem.functionals(), [](const DofFunctional& d) { return d.kind == DofKind::MidpointValue; });
}

DofKind edge_kind(const ReferenceElement& elem) {
  for (const DofFunctional& d : elem.functionals()) {
    if (d.is_edge_normal()) return d.kind;
  }
  throw std::invalid_argument("element has no edge-normal functional");
}

// Local edge whose cell-outward normal agrees with the fixed global normal.
int outward_sign(int local_edge) { return (local_edge == Right || local_edge == Top) ? 1 : -1; }

}  // namespace

DofMap::DofMap(const RectMesh& mesh, const ReferenceElement& elem)
    : kind_(elem.kind()), per_cell_(elem.dof_count()) {
  const bool midpoints = has_midpoints(elem);
  const Index nv = mesh.num_vertices();
  const Index ne = mesh.num_edges();
  for (Index v = 0; v < nv; ++v) dofs_.push_back({DofEntity::Vertex, v});
  if (midpoints) {
    for (Index e = 0; e < ne; ++e) dofs_.push_back({DofEntity::Midpoint, e});
  }
  const Index normal_offset = nv + (midpoints ? ne : 0);
  for (Index e = 0; e < ne; ++e) dofs_.push_back({DofEntity::EdgeNormal, e});

  cell_dofs_.reserve(static_cast<std::size_t>(mesh.num_cells() * per_cell_));
  for (const Cell& cell : mesh.cells()) {
    for (const DofFunctional& f : elem.functionals()) {
      switch (f.kind) {
        case DofKind::VertexValue: cell_dofs_.push_back({cell.vertices[f.entity], 1}); break;
        case DofKind::MidpointValue: cell_dofs_.push_back({nv + cell.edges[f.entity], 1}); break;
        case DofKind::EdgeMeanNormalDerivative:
        case DofKind::EdgeIntegralNormalDerivative:
          cell_dofs_.push_back({normal_offset + cell.edges[f.entity], outward_sign(f.entity)});
          break;
      }
    }
  }
  constrained_.assign(dofs_.size(), std::nullopt);
}

void DofMap::set_constraint(Index i, double value) {
  if (i < 0 || i >= num_dofs()) throw std::out_of_range("DofMap: dof id out of range");
  constrained_[static_cast<std::size_t>(i)] = value;
}

Index DofMap::num_constrained() const {
  return static_cast<Index>(std::ranges::count_if(constrained_, [](const auto& c) { return c.has_value(); }));
}

std::vector<Index> DofMap::free_numbering() const {
  std::vector<Index> out(dofs_.size(), -1);
  Index next = 0;
  for (std::size_t i = 0; i < dofs_.size(); ++i) {
    if (!constrained_[i]) out[i] = next++;
  }
  return out;
}

Eigen::VectorXd DofMap::constraint_vector() const {
  Eigen::VectorXd g = Eigen::VectorXd::Zero(num_dofs());
  for (std::size_t i = 0; i < dofs_.size(); ++i) {
    if (constrained_[i]) g[static_cast<Index>(i)] = *constrained_[i];
  }
  return g;
}

DofMap build_dofmap(const RectMesh& mesh, const ReferenceElement& elem) {
  DofMap map(mesh, elem);
  boundary_constraints(map, mesh, elem, nullptr);
  return map;
}

double apply_global_functional(const DofMap& dofmap, const RectMesh& mesh, const ReferenceElement& elem, Index i,
                               const ScalarField& u) {
  const GlobalDof& d = dofmap.dof(i);
  switch (d.type) {
    case DofEntity::Vertex: return u.value(mesh.vertex(d.entity));
    case DofEntity::Midpoint: return u.value(mesh.edge(d.entity).midpoint);
    case DofEntity::EdgeNormal: {
      const Edge& e = mesh.edge(d.entity);
      const Point n = e.normal();
      const double integral =
          integrate_on_edge_adaptive(mesh.vertex(e.vertices[0]), mesh.vertex(e.vertices[1]),
                                     [&](const Point& x) { return u.gradient(x).dot(n); })
              .value;
      return edge_kind(elem) == DofKind::EdgeMeanNormalDerivative ? integral / e.length : integral;
    }
  }
  return 0.0;
}

Eigen::VectorXd interpolate(const DofMap& dofmap, const RectMesh& mesh, const ReferenceElement& elem,
                            const ScalarField& u) {
  Eigen::VectorXd out(dofmap.num_dofs());
  for (Index i = 0; i < dofmap.num_dofs(); ++i) out[i] = apply_global_functional(dofmap, mesh, elem, i, u);
  return out;
}

Eigen::VectorXd gather(const DofMap& dofmap, Index cell, const Eigen::VectorXd& global) {
  const auto slots = dofmap.cell_dofs(cell);
  Eigen::VectorXd local(static_cast<Index>(slots.size()));
  for (std::size_t k = 0; k < slots.size(); ++k) local[static_cast<Index>(k)] = slots[k].sign * global[slots[k].global];
  return local;
}

ShapeValues evaluate_on_cell(const DofMap& dofmap, const RectMesh& mesh, const ReferenceElement& elem,
                             const Eigen::VectorXd& global, Index cell, const Eigen::Vector2d& ref) {
  return evaluate_local(elem, mesh.cell(cell).geometry.half_widths, gather(dofmap, cell, global), ref);
}

Eigen::VectorXd bilinear_interpolant(const DofMap& dofmap, const RectMesh& mesh, const Eigen::VectorXd& v) {
  if (v.size() != dofmap.num_dofs()) throw std::invalid_argument("bilinear_interpolant: vector size mismatch");
  // Vertex DOFs are numbered first and coincide with mesh vertex ids.
  return v.head(mesh.num_vertices());
}

ShapeValues evaluate_bilinear(const RectMesh& mesh, const Eigen::VectorXd& vertex_values, Index cell,
                              const Eigen::Vector2d& ref) {
  const Cell& c = mesh.cell(cell);
  const Eigen::Vector2d hw = c.geometry.half_widths;
  ShapeValues out;
  for (int k = 0; k < 4; ++k) {
    const Eigen::Vector2d a = reference::kVertices[k];
    const double bx = 1.0 + a.x() * ref.x();
    const double by = 1.0 + a.y() * ref.y();
    const double vk = vertex_values[c.vertices[k]];
    out.value += 0.25 * vk * bx * by;
    out.gradient += 0.25 * vk * Eigen::Vector2d(a.x() * by / hw.x(), a.y() * bx / hw.y());
    const double mixed = 0.25 * vk * a.x() * a.y() / (hw.x() * hw.y());
    out.hessian(0, 1) += mixed;
    out.hessian(1, 0) += mixed;
  }
  return out;
}

void boundary_constraints(DofMap& dofmap, const RectMesh& mesh, const ReferenceElement& elem, const ScalarField* g) {
  for (Index i = 0; i < dofmap.num_dofs(); ++i) {
    const GlobalDof& d = dofmap.dof(i);
    const bool on_boundary = d.type == DofEntity::Vertex ? mesh.is_boundary_vertex(d.entity) : mesh.edge(d.entity).boundary;
    if (!on_boundary) continue;
    dofmap.set_constraint(i, g ? apply_global_functional(dofmap, mesh, elem, i, *g) : 0.0);
  }
}

}  // namespace fem4sp
