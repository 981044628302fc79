// Global finite element spaces: DOF numbering with edge-normal sign factors,
// interpolation, the bilinear operator Pi and essential boundary constraints.
#ifndef FEM4SP_SPACE_HPP
#define FEM4SP_SPACE_HPP

#include "fem4sp/element.hpp"
#include "fem4sp/mesh.hpp"

#include <Eigen/Core>

#include <optional>
#include <span>
#include <vector>

namespace fem4sp {

enum class DofEntity { Vertex, Midpoint, EdgeNormal };

struct GlobalDof {
  DofEntity type;
  Index entity;  // vertex id or edge id
};

/// One slot of a cell's local-to-global map. The local DOF value is
/// sign * global value; the global value of an edge-normal DOF uses the
/// mesh edge's fixed +x / +y normal.
struct LocalDof {
  Index global;
  int sign;
};

class DofMap {
public:
  DofMap(const RectMesh& mesh, const ReferenceElement& elem);

  ElementKind element_kind() const { return kind_; }
  Index num_dofs() const { return static_cast<Index>(dofs_.size()); }
  int dofs_per_cell() const { return per_cell_; }
  const GlobalDof& dof(Index i) const { return dofs_[static_cast<std::size_t>(i)]; }

  std::span<const LocalDof> cell_dofs(Index cell) const {
    return {cell_dofs_.data() + cell * per_cell_, static_cast<std::size_t>(per_cell_)};
  }

  bool is_constrained(Index i) const { return constrained_[static_cast<std::size_t>(i)].has_value(); }
  double constraint_value(Index i) const { return constrained_[static_cast<std::size_t>(i)].value_or(0.0); }
  void set_constraint(Index i, double value);
  Index num_constrained() const;
  Index num_free() const { return num_dofs() - num_constrained(); }

  /// Position of DOF i among the free DOFs, or -1 when constrained.
  std::vector<Index> free_numbering() const;
  /// Full-length vector of prescribed values (zero on free DOFs).
  Eigen::VectorXd constraint_vector() const;

private:
  ElementKind kind_;
  int per_cell_;
  std::vector<GlobalDof> dofs_;
  std::vector<LocalDof> cell_dofs_;
  std::vector<std::optional<double>> constrained_;
};

/// Numbers vertices, then edge midpoints (if any), then edge-normal DOFs, each
/// in mesh entity order. Every DOF on the boundary is clamped to zero.
DofMap build_dofmap(const RectMesh& mesh, const ReferenceElement& elem);

/// Value of the global functional attached to DOF i, applied to u.
double apply_global_functional(const DofMap& dofmap, const RectMesh& mesh, const ReferenceElement& elem, Index i,
                               const ScalarField& u);

/// I_h u as a global DOF vector.
Eigen::VectorXd interpolate(const DofMap& dofmap, const RectMesh& mesh, const ReferenceElement& elem,
                            const ScalarField& u);

/// Local (cell-outward) DOF values of a global vector.
Eigen::VectorXd gather(const DofMap& dofmap, Index cell, const Eigen::VectorXd& global);

/// Piecewise evaluation of a global DOF vector on one cell.
ShapeValues evaluate_on_cell(const DofMap& dofmap, const RectMesh& mesh, const ReferenceElement& elem,
                             const Eigen::VectorXd& global, Index cell, const Eigen::Vector2d& ref);

/// Pi v_h: vertex values of the continuous bilinear interpolant.
Eigen::VectorXd bilinear_interpolant(const DofMap& dofmap, const RectMesh& mesh, const Eigen::VectorXd& v);

/// Evaluates the bilinear interpolant given by vertex values on one cell.
ShapeValues evaluate_bilinear(const RectMesh& mesh, const Eigen::VectorXd& vertex_values, Index cell,
                              const Eigen::Vector2d& ref);

/// Whether Pi is the identity on this space (C0 elements).
inline bool pi_is_identity(ElementKind kind) { return kind != ElementKind::Morley; }

/// Prescribes every boundary DOF to the matching functional of g, or to zero
/// when g is absent. Edge integrals use adaptive composite quadrature.
void boundary_constraints(DofMap& dofmap, const RectMesh& mesh, const ReferenceElement& elem,
                          const ScalarField* g = nullptr);

}  // namespace fem4sp

#endif  // FEM4SP_SPACE_HPP
