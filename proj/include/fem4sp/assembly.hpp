// Assembly of the broken forms a_h (Hessian contraction) and b_h (gradient
// product), load vectors, and reduction to the free DOFs.
#ifndef FEM4SP_ASSEMBLY_HPP
#define FEM4SP_ASSEMBLY_HPP

#include "fem4sp/element.hpp"
#include "fem4sp/mesh.hpp"
#include "fem4sp/quadrature.hpp"
#include "fem4sp/space.hpp"

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <functional>
#include <stdexcept>
#include <string_view>

namespace fem4sp {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;
using SourceFunction = std::function<double(const Point&)>;

/// Right-hand side variant: (f, v_h) or (f, Pi v_h).
enum class Scheme { Standard, Modified };
/// full: eps^2 a_h + b_h; poisson: b_h only; biharmonic: a_h only.
enum class Mode { Full, Poisson, Biharmonic };

std::string_view to_string(Scheme scheme);
std::string_view to_string(Mode mode);
Scheme parse_scheme(std::string_view name);
Mode parse_mode(std::string_view name);

class EmptySystemError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct LocalMatrices {
  Eigen::MatrixXd hessian;   // int_T D^2 phi_i : D^2 phi_j
  Eigen::MatrixXd gradient;  // int_T grad phi_i . grad phi_j
};

LocalMatrices local_matrices(const ReferenceElement& elem, const CellGeometry& geom, const QuadRule& rule);

/// int_T f phi_i
Eigen::VectorXd local_load(const ReferenceElement& elem, const CellGeometry& geom, const SourceFunction& f,
                           const QuadRule& rule);

/// int_T f Pi phi_i. Pi maps the vertex shape functions to the bilinear hats
/// and annihilates the edge ones.
Eigen::VectorXd local_load_modified(const ReferenceElement& elem, const CellGeometry& geom, const SourceFunction& f,
                                    const QuadRule& rule);

/// A and B over all DOFs (constraints not applied). Assembled once per
/// (mesh, element); eps only enters when the two are combined.
struct GlobalOperators {
  SparseMatrix hessian;
  SparseMatrix gradient;

  SparseMatrix combine(double epsilon, Mode mode) const;
};

GlobalOperators assemble_operators(const RectMesh& mesh, const DofMap& dofmap, const ReferenceElement& elem,
                                   const QuadRule& rule);

Eigen::VectorXd assemble_load(const RectMesh& mesh, const DofMap& dofmap, const ReferenceElement& elem,
                              const SourceFunction& f, Scheme scheme, const QuadRule& rule);

struct LinearSystem {
  SparseMatrix matrix;           // free DOFs only
  Eigen::VectorXd rhs;           // free DOFs only
  Eigen::VectorXd prescribed;    // full length, zero on free DOFs
  std::vector<Index> free_index; // full -> free numbering, -1 if constrained
};

/// Restricts K = combine(eps, mode) to the free DOFs and lifts the prescribed
/// values into the right-hand side: rhs = F_f - K_fc g.
LinearSystem reduce_system(const GlobalOperators& ops, const Eigen::VectorXd& load, const DofMap& dofmap,
                           double epsilon, Mode mode);

LinearSystem assemble_system(const RectMesh& mesh, const DofMap& dofmap, const ReferenceElement& elem, double epsilon,
                             const SourceFunction& f, Scheme scheme, Mode mode, const QuadRule& rule);

/// Full DOF vector from a free-DOF solution and the prescribed values.
Eigen::VectorXd expand_solution(const LinearSystem& system, const Eigen::VectorXd& free_solution);

}  // namespace fem4sp

#endif  // FEM4SP_ASSEMBLY_HPP
