#include "fem4sp/element.hpp"

#include "fem4sp/quadrature.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>

#include <cmath>
#include <sstream>

namespace fem4sp {

namespace {

using Poly = BiPoly<double>;

constexpr double kMaxVandermondeCondition = 1e12;

const Poly X = Poly::xi();
const Poly Y = Poly::eta();

std::vector<DofFunctional> vertex_and_edge_dofs(DofKind edge_kind, bool with_midpoints) {
  std::vector<DofFunctional> dofs;
  for (int v = 0; v < 4; ++v) dofs.push_back({DofKind::VertexValue, v});
  if (with_midpoints) {
    for (int e = 0; e < 4; ++e) dofs.push_back({DofKind::MidpointValue, e});
  }
  for (int e = 0; e < 4; ++e) dofs.push_back({edge_kind, e});
  return dofs;
}

bool is_vertical(int local_edge) { return local_edge == Right || local_edge == Left; }

}  // namespace

std::string_view to_string(ElementKind kind) {
  switch (kind) {
    case ElementKind::Morley: return "morley";
    case ElementKind::Extended: return "extended";
    case ElementKind::ExtendedAlt: return "extended-alt";
  }
  return "unknown";
}

ElementKind parse_element_kind(std::string_view name) {
  if (name == "morley") return ElementKind::Morley;
  if (name == "extended") return ElementKind::Extended;
  if (name == "extended-alt") return ElementKind::ExtendedAlt;
  throw std::invalid_argument("unknown element kind '" + std::string(name) + "'");
}

ReferenceElement::ReferenceElement(ElementKind kind, std::vector<DofFunctional> dofs, std::vector<Poly> shapes,
                                   std::vector<Eigen::Vector2i> scaling, double vandermonde_condition)
    : kind_(kind),
      dofs_(std::move(dofs)),
      shapes_(std::move(shapes)),
      scaling_(std::move(scaling)),
      condition_(vandermonde_condition) {
  if (dofs_.size() != shapes_.size() || dofs_.size() != scaling_.size()) {
    throw std::invalid_argument("ReferenceElement: dof, shape and scaling counts differ");
  }
  derivs_.reserve(shapes_.size());
  for (const Poly& s : shapes_) {
    const Poly dx = s.d_xi();
    const Poly dy = s.d_eta();
    derivs_.push_back({s, dx, dy, dx.d_xi(), dx.d_eta(), dy.d_eta()});
  }
}

double ReferenceElement::shape_scale(int i, const Eigen::Vector2d& hw) const {
  const Eigen::Vector2i& e = scaling_[i];
  return std::pow(hw.x(), e.x()) * std::pow(hw.y(), e.y());
}

void ReferenceElement::evaluate(const Eigen::Vector2d& hw, const Eigen::Vector2d& ref,
                                std::vector<ShapeValues>& out) const {
  out.resize(shapes_.size());
  const double ix = 1.0 / hw.x();
  const double iy = 1.0 / hw.y();
  for (std::size_t i = 0; i < shapes_.size(); ++i) {
    const Derivatives& d = derivs_[i];
    const double s = shape_scale(static_cast<int>(i), hw);
    ShapeValues& o = out[i];
    o.value = s * d.v(ref);
    o.gradient = s * Eigen::Vector2d(ix * d.dx(ref), iy * d.dy(ref));
    const double hxy = s * ix * iy * d.dxy(ref);
    o.hessian << s * ix * ix * d.dxx(ref), hxy, hxy, s * iy * iy * d.dyy(ref);
  }
}

std::vector<ShapeValues> ReferenceElement::evaluate(const Eigen::Vector2d& hw, const Eigen::Vector2d& ref) const {
  std::vector<ShapeValues> out;
  evaluate(hw, ref, out);
  return out;
}

ReferenceElement morley_element() {
  // The printed basis labels edges right, left, top, bottom (q5..q8); the
  // local slots below follow Right, Top, Left, Bottom.
  const Poly cubic_x = 0.125 * X * (X * X - 1.0);
  const Poly cubic_y = 0.125 * Y * (Y * Y - 1.0);
  const Poly q1 = 0.25 * (1.0 - X) * (1.0 - Y) + cubic_x + cubic_y;
  const Poly q2 = 0.25 * (1.0 + X) * (1.0 - Y) - cubic_x + cubic_y;
  const Poly q3 = 0.25 * (1.0 + X) * (1.0 + Y) - cubic_x - cubic_y;
  const Poly q4 = 0.25 * (1.0 - X) * (1.0 + Y) + cubic_x - cubic_y;
  // Reference parts; the h1 or h2 factor comes from the scaling exponents.
  const Poly q5 = 0.25 * (X + 1.0) * (X + 1.0) * (X - 1.0);
  const Poly q6 = -0.25 * (X + 1.0) * (X - 1.0) * (X - 1.0);
  const Poly q7 = 0.25 * (Y + 1.0) * (Y + 1.0) * (Y - 1.0);
  const Poly q8 = -0.25 * (Y + 1.0) * (Y - 1.0) * (Y - 1.0);

  std::vector<Poly> shapes{q1, q2, q3, q4, q5, q7, q6, q8};
  std::vector<Eigen::Vector2i> scaling(4, Eigen::Vector2i::Zero());
  for (int e = 0; e < 4; ++e) scaling.push_back(is_vertical(e) ? Eigen::Vector2i(1, 0) : Eigen::Vector2i(0, 1));
  return ReferenceElement(ElementKind::Morley, vertex_and_edge_dofs(DofKind::EdgeMeanNormalDerivative, false),
                          std::move(shapes), std::move(scaling), 1.0);
}

std::array<Poly, 9> q2_lagrange_basis() {
  return {0.25 * X * Y * (1.0 - X) * (1.0 - Y),
          -0.25 * X * Y * (1.0 + X) * (1.0 - Y),
          0.25 * X * Y * (1.0 + X) * (1.0 + Y),
          -0.25 * X * Y * (1.0 - X) * (1.0 + Y),
          0.5 * (1.0 - Y * Y) * X * (1.0 + X),
          0.5 * (1.0 - X * X) * Y * (1.0 + Y),
          -0.5 * (1.0 - Y * Y) * X * (1.0 - X),
          -0.5 * (1.0 - X * X) * Y * (1.0 - Y),
          (1.0 - X * X) * (1.0 - Y * Y)};
}

std::array<Poly, 3> enrichment_functions(ExtendedVariant variant) {
  const Poly bubble3 = (X + Y) * (1.0 - X * X) * (1.0 - Y * Y);
  if (variant == ExtendedVariant::Primary) {
    return {X * X * X * X * (1.0 - Y * Y), Y * Y * Y * (1.0 - X * X), bubble3};
  }
  return {X * X * X * (1.0 - Y * Y), Y * Y * Y * Y * (1.0 - X * X), bubble3};
}

double apply_reference_functional(const DofFunctional& dof, const Poly& p) {
  switch (dof.kind) {
    case DofKind::VertexValue: return p(reference::kVertices[dof.entity]);
    case DofKind::MidpointValue: return p(reference::kEdgeMidpoints[dof.entity]);
    case DofKind::EdgeMeanNormalDerivative:
    case DofKind::EdgeIntegralNormalDerivative: {
      const Eigen::Vector2d n = reference::kOutwardNormals[dof.entity];
      const Poly dn = n.x() * p.d_xi() + n.y() * p.d_eta();
      const auto [a, b] = reference::kEdgeVertices[dof.entity];
      const double integral = integrate_on_edge(reference::kVertices[a], reference::kVertices[b],
                                                [&](const Point& x) { return dn(x); }, kDefaultQuadOrder, 0);
      return dof.kind == DofKind::EdgeMeanNormalDerivative ? 0.5 * integral : integral;
    }
  }
  return 0.0;
}

Eigen::MatrixXd extended_vandermonde(ExtendedVariant variant) {
  const auto dofs = vertex_and_edge_dofs(DofKind::EdgeIntegralNormalDerivative, true);
  std::vector<Poly> basis;
  for (const Poly& p : q2_lagrange_basis()) basis.push_back(p);
  for (const Poly& p : enrichment_functions(variant)) basis.push_back(p);
  Eigen::MatrixXd v(12, 12);
  for (int j = 0; j < 12; ++j) {
    for (int k = 0; k < 12; ++k) v(j, k) = apply_reference_functional(dofs[j], basis[k]);
  }
  return v;
}

Eigen::Matrix4d reduced_edge_integral_matrix() {
  const auto p = q2_lagrange_basis();
  const auto phi = enrichment_functions(ExtendedVariant::Primary);
  const std::array<Poly, 4> combos{p[8], -p[4] - p[6] + phi[0], -p[5] + p[7] + phi[1], phi[2]};
  Eigen::Matrix4d m;
  for (int e = 0; e < 4; ++e) {
    for (int k = 0; k < 4; ++k) {
      m(e, k) = apply_reference_functional({DofKind::EdgeIntegralNormalDerivative, e}, combos[k]);
    }
  }
  return m;
}

ReferenceElement extended_element(ExtendedVariant variant) {
  const Eigen::MatrixXd v = extended_vandermonde(variant);
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(v);
  const auto& sv = svd.singularValues();
  const double condition = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1) : INFINITY;
  if (!(condition <= kMaxVandermondeCondition)) {
    std::ostringstream msg;
    msg << "extended element: functionals are not unisolvent (condition " << condition << ")";
    throw UnisolvenceError(msg.str());
  }
  const Eigen::MatrixXd coeff = v.fullPivLu().inverse();

  std::vector<Poly> basis;
  for (const Poly& p : q2_lagrange_basis()) basis.push_back(p);
  for (const Poly& p : enrichment_functions(variant)) basis.push_back(p);

  std::vector<Poly> shapes(12);
  for (int i = 0; i < 12; ++i) {
    for (int k = 0; k < 12; ++k) shapes[i] += coeff(k, i) * basis[k];
  }
  std::vector<Eigen::Vector2i> scaling(8, Eigen::Vector2i::Zero());
  // Physical edge integral = (h2/h1) or (h1/h2) times the reference one.
  for (int e = 0; e < 4; ++e) scaling.push_back(is_vertical(e) ? Eigen::Vector2i(1, -1) : Eigen::Vector2i(-1, 1));
  const ElementKind kind = variant == ExtendedVariant::Primary ? ElementKind::Extended : ElementKind::ExtendedAlt;
  return ReferenceElement(kind, vertex_and_edge_dofs(DofKind::EdgeIntegralNormalDerivative, true), std::move(shapes),
                          std::move(scaling), condition);
}

ReferenceElement make_element(ElementKind kind) {
  switch (kind) {
    case ElementKind::Morley: return morley_element();
    case ElementKind::Extended: return extended_element(ExtendedVariant::Primary);
    case ElementKind::ExtendedAlt: return extended_element(ExtendedVariant::Alt);
  }
  throw std::invalid_argument("make_element: unknown kind");
}

double apply_functional(const DofFunctional& dof, const CellGeometry& geom, const ScalarField& u) {
  switch (dof.kind) {
    case DofKind::VertexValue: return u.value(geom.map(reference::kVertices[dof.entity]));
    case DofKind::MidpointValue: return u.value(geom.map(reference::kEdgeMidpoints[dof.entity]));
    case DofKind::EdgeMeanNormalDerivative:
    case DofKind::EdgeIntegralNormalDerivative: {
      const Eigen::Vector2d n = reference::kOutwardNormals[dof.entity];
      const auto [ia, ib] = reference::kEdgeVertices[dof.entity];
      const Point a = geom.map(reference::kVertices[ia]);
      const Point b = geom.map(reference::kVertices[ib]);
      const double integral =
          integrate_on_edge_adaptive(a, b, [&](const Point& x) { return u.gradient(x).dot(n); }).value;
      return dof.kind == DofKind::EdgeMeanNormalDerivative ? integral / (b - a).norm() : integral;
    }
  }
  return 0.0;
}

Eigen::VectorXd apply_dofs(const ReferenceElement& elem, const CellGeometry& geom, const ScalarField& u) {
  Eigen::VectorXd out(elem.dof_count());
  for (int j = 0; j < elem.dof_count(); ++j) out[j] = apply_functional(elem.functional(j), geom, u);
  return out;
}

ScalarField shape_field(const ReferenceElement& elem, const CellGeometry& geom, int i) {
  const double s = elem.shape_scale(i, geom.half_widths);
  const Poly p = elem.reference_shape(i);
  const Poly dx = p.d_xi();
  const Poly dy = p.d_eta();
  const Eigen::Vector2d hw = geom.half_widths;
  return {[=](const Point& x) { return s * p(geom.to_reference(x)); },
          [=](const Point& x) {
            const Eigen::Vector2d r = geom.to_reference(x);
            return Eigen::Vector2d(s * dx(r) / hw.x(), s * dy(r) / hw.y());
          }};
}

Eigen::MatrixXd nodality_matrix(const ReferenceElement& elem, const CellGeometry& geom) {
  const int n = elem.dof_count();
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i) {
    const ScalarField shape = shape_field(elem, geom, i);
    for (int j = 0; j < n; ++j) m(j, i) = apply_functional(elem.functional(j), geom, shape);
  }
  return m;
}

void check_nodality(const ReferenceElement& elem, const CellGeometry& geom, double tol) {
  const Eigen::MatrixXd m = nodality_matrix(elem, geom);
  const Eigen::MatrixXd dev = (m - Eigen::MatrixXd::Identity(m.rows(), m.cols())).cwiseAbs();
  Eigen::Index r = 0, c = 0;
  const double worst = dev.maxCoeff(&r, &c);
  if (worst > tol) {
    std::ostringstream msg;
    msg << elem.name() << ": nodality matrix deviates by " << worst << " at (" << r << ", " << c << ")";
    throw std::logic_error(msg.str());
  }
}

ShapeValues evaluate_local(const ReferenceElement& elem, const Eigen::Vector2d& half_widths,
                           const Eigen::VectorXd& local_dofs, const Eigen::Vector2d& ref) {
  thread_local std::vector<ShapeValues> shapes;
  elem.evaluate(half_widths, ref, shapes);
  ShapeValues sum;
  for (int i = 0; i < elem.dof_count(); ++i) {
    sum.value += local_dofs[i] * shapes[i].value;
    sum.gradient += local_dofs[i] * shapes[i].gradient;
    sum.hessian += local_dofs[i] * shapes[i].hessian;
  }
  return sum;
}

}  // namespace fem4sp
