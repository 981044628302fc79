// Rectangular Morley element and the extended high-order C0 rectangular
// Morley element on the reference square [-1, 1]^2.
#ifndef FEM4SP_ELEMENT_HPP
#define FEM4SP_ELEMENT_HPP

#include "fem4sp/mesh.hpp"
#include "fem4sp/polynomial.hpp"

#include <Eigen/Core>

#include <array>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fem4sp {

enum class ElementKind { Morley, Extended, ExtendedAlt };

std::string_view to_string(ElementKind kind);
ElementKind parse_element_kind(std::string_view name);

/// The enrichment triple used by the extended element.
enum class ExtendedVariant { Primary, Alt };

enum class DofKind {
  VertexValue,
  MidpointValue,
  EdgeMeanNormalDerivative,      // (1/|e|) int_e du/dn ds
  EdgeIntegralNormalDerivative,  // int_e du/dn ds
};

/// A degree of freedom on the reference cell. entity is the vertex index
/// (0..3 for a1..a4) or a LocalEdge. Normals are cell-outward.
struct DofFunctional {
  DofKind kind;
  int entity;

  bool is_edge_normal() const {
    return kind == DofKind::EdgeMeanNormalDerivative || kind == DofKind::EdgeIntegralNormalDerivative;
  }
};

/// A function together with its gradient, in physical coordinates.
struct ScalarField {
  std::function<double(const Point&)> value;
  std::function<Eigen::Vector2d(const Point&)> gradient;
};

struct ShapeValues {
  double value = 0.0;
  Eigen::Vector2d gradient = Eigen::Vector2d::Zero();
  Eigen::Matrix2d hessian = Eigen::Matrix2d::Zero();
};

class UnisolvenceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

namespace reference {
inline const std::array<Eigen::Vector2d, 4> kVertices{
    Eigen::Vector2d(-1, -1), Eigen::Vector2d(1, -1), Eigen::Vector2d(1, 1), Eigen::Vector2d(-1, 1)};
/// Indexed by LocalEdge.
inline const std::array<Eigen::Vector2d, 4> kEdgeMidpoints{
    Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1), Eigen::Vector2d(-1, 0), Eigen::Vector2d(0, -1)};
inline const std::array<Eigen::Vector2d, 4> kOutwardNormals = kEdgeMidpoints;
/// Endpoints of each local edge as vertex indices, ordered by increasing coordinate.
inline constexpr std::array<std::array<int, 2>, 4> kEdgeVertices{{{1, 2}, {3, 2}, {0, 3}, {0, 1}}};
}  // namespace reference

/// Shape functions are stored on the reference square. The physical basis
/// function i is h1^a h2^b times the reference one, with (a, b) the scaling
/// exponents of DOF i, so that nodality holds on every cell geometry.
class ReferenceElement {
public:
  ReferenceElement(ElementKind kind, std::vector<DofFunctional> dofs, std::vector<BiPoly<double>> shapes,
                   std::vector<Eigen::Vector2i> scaling, double vandermonde_condition);

  ElementKind kind() const { return kind_; }
  std::string_view name() const { return to_string(kind_); }
  int dof_count() const { return static_cast<int>(dofs_.size()); }
  const std::vector<DofFunctional>& functionals() const { return dofs_; }
  const DofFunctional& functional(int i) const { return dofs_[i]; }
  const BiPoly<double>& reference_shape(int i) const { return shapes_[i]; }
  const Eigen::Vector2i& scaling_exponents(int i) const { return scaling_[i]; }
  double vandermonde_condition() const { return condition_; }
  /// True when the global space lies in H^1_0 (bilinear Pi is then replaced by the identity).
  bool is_c0() const { return kind_ != ElementKind::Morley; }

  double shape_scale(int i, const Eigen::Vector2d& half_widths) const;

  /// Values, physical gradients and physical Hessians of all shape functions.
  void evaluate(const Eigen::Vector2d& half_widths, const Eigen::Vector2d& ref, std::vector<ShapeValues>& out) const;
  std::vector<ShapeValues> evaluate(const Eigen::Vector2d& half_widths, const Eigen::Vector2d& ref) const;

private:
  struct Derivatives {
    BiPoly<double> v, dx, dy, dxx, dxy, dyy;
  };

  ElementKind kind_;
  std::vector<DofFunctional> dofs_;
  std::vector<BiPoly<double>> shapes_;
  std::vector<Eigen::Vector2i> scaling_;
  std::vector<Derivatives> derivs_;
  double condition_;
};

ReferenceElement morley_element();
ReferenceElement extended_element(ExtendedVariant variant = ExtendedVariant::Primary);
ReferenceElement make_element(ElementKind kind);

inline std::vector<ShapeValues> eval_shape(const ReferenceElement& elem, const Eigen::Vector2d& half_widths,
                                           const Eigen::Vector2d& ref) {
  return elem.evaluate(half_widths, ref);
}

/// Applies one functional to a physical field on the given cell.
double apply_functional(const DofFunctional& dof, const CellGeometry& geom, const ScalarField& u);

/// Local DOF values of u with cell-outward normals.
Eigen::VectorXd apply_dofs(const ReferenceElement& elem, const CellGeometry& geom, const ScalarField& u);

/// Physical shape function i of elem on geom, as a ScalarField.
ScalarField shape_field(const ReferenceElement& elem, const CellGeometry& geom, int i);

/// Entry (j, i) = functional_j(shape_i). Identity for a correct element.
Eigen::MatrixXd nodality_matrix(const ReferenceElement& elem, const CellGeometry& geom);

/// Throws if the nodality matrix deviates from the identity by more than tol,
/// naming the worst entry.
void check_nodality(const ReferenceElement& elem, const CellGeometry& geom, double tol = 1e-10);

/// Sum_i dofs_i * shape_i at a reference point.
ShapeValues evaluate_local(const ReferenceElement& elem, const Eigen::Vector2d& half_widths,
                           const Eigen::VectorXd& local_dofs, const Eigen::Vector2d& ref);

/// The Q2 basis p1..p9 (vertex, edge-midpoint and bubble Lagrange functions).
std::array<BiPoly<double>, 9> q2_lagrange_basis();
/// The enrichment functions phi1..phi3 of the chosen variant.
std::array<BiPoly<double>, 3> enrichment_functions(ExtendedVariant variant);

/// Applies a reference-cell functional (edge integrals in reference arclength) to a polynomial.
double apply_reference_functional(const DofFunctional& dof, const BiPoly<double>& p);

/// 12x12 generalized Vandermonde of the extended element: rows are the
/// functionals (vertex values, midpoint values, edge integrals), columns
/// p1..p9, phi1..phi3.
Eigen::MatrixXd extended_vandermonde(ExtendedVariant variant);

/// Edge integrals of the outward normal derivative (rows right, top, left,
/// bottom) applied to {p9, -p5-p7+phi1, -p6+p8+phi2, phi3} for the primary
/// enrichment. This is the reduced system that decides unisolvence.
Eigen::Matrix4d reduced_edge_integral_matrix();

}  // namespace fem4sp

#endif  // FEM4SP_ELEMENT_HPP
