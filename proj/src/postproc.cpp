#include "fem4sp/postproc.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace fem4sp {

double energy_norm(double h1_seminorm, double h2_seminorm, double epsilon, Mode mode) {
  switch (mode) {
    case Mode::Poisson: return h1_seminorm;
    case Mode::Biharmonic: return h2_seminorm;
    case Mode::Full: break;
  }
  return std::sqrt(epsilon * epsilon * h2_seminorm * h2_seminorm + h1_seminorm * h1_seminorm);
}

namespace {

bool touches_boundary(const RectMesh& mesh, const Cell& cell) {
  for (Index e : cell.edges) {
    if (mesh.edge(e).boundary) return true;
  }
  return false;
}

// Calls visit(ref_point, weight) with weights summing to 4 over the reference square.
template <typename Visit>
void for_each_point(const QuadRule& rule, int subdivisions, Visit&& visit) {
  if (subdivisions == 1) {
    for (std::size_t q = 0; q < rule.size(); ++q) visit(rule.points[q], rule.weights[q]);
    return;
  }
  const double w = 2.0 / subdivisions;
  const double scale = 1.0 / (subdivisions * subdivisions);
  for (int j = 0; j < subdivisions; ++j) {
    for (int i = 0; i < subdivisions; ++i) {
      const Eigen::Vector2d center(-1.0 + (i + 0.5) * w, -1.0 + (j + 0.5) * w);
      for (std::size_t q = 0; q < rule.size(); ++q) visit(Eigen::Vector2d(center + 0.5 * w * rule.points[q]), scale * rule.weights[q]);
    }
  }
}

double hessian_contraction(const Eigen::Matrix2d& h) { return h.cwiseAbs2().sum(); }

}  // namespace

ErrorReport energy_error(const RectMesh& mesh, const DofMap& dofmap, const ReferenceElement& elem,
                         const Eigen::VectorXd& uh, const ManufacturedSolution& exact, double epsilon, Mode mode,
                         const QuadRule& rule, bool layer_refine) {
  double err1 = 0.0, err2 = 0.0, ex1 = 0.0, ex2 = 0.0;
  std::vector<ShapeValues> shapes;
  for (Index c = 0; c < mesh.num_cells(); ++c) {
    const Cell& cell = mesh.cell(c);
    const CellGeometry& geom = cell.geometry;
    const Eigen::VectorXd local = gather(dofmap, c, uh);
    const double jac = geom.half_widths.x() * geom.half_widths.y();
    const int sub = (layer_refine && touches_boundary(mesh, cell)) ? 4 : 1;
    for_each_point(rule, sub, [&](const Eigen::Vector2d& ref, double w) {
      elem.evaluate(geom.half_widths, ref, shapes);
      Eigen::Vector2d grad = Eigen::Vector2d::Zero();
      Eigen::Matrix2d hess = Eigen::Matrix2d::Zero();
      for (int i = 0; i < elem.dof_count(); ++i) {
        grad += local[i] * shapes[i].gradient;
        hess += local[i] * shapes[i].hessian;
      }
      const Point x = geom.map(ref);
      const Eigen::Vector2d g = exact.gradient(x);
      const Eigen::Matrix2d hx = exact.hessian(x);
      const double wj = w * jac;
      err1 += wj * (g - grad).squaredNorm();
      err2 += wj * hessian_contraction(hx - hess);
      ex1 += wj * g.squaredNorm();
      ex2 += wj * hessian_contraction(hx);
    });
  }
  ErrorReport r;
  r.epsilon = epsilon;
  r.h = mesh.h();
  r.h1_seminorm = std::sqrt(err1);
  r.h2_seminorm = std::sqrt(err2);
  r.energy_error = energy_norm(r.h1_seminorm, r.h2_seminorm, epsilon, mode);
  r.exact_energy_norm = energy_norm(std::sqrt(ex1), std::sqrt(ex2), epsilon, mode);
  r.relative_energy_error = r.exact_energy_norm > 0.0 ? r.energy_error / r.exact_energy_norm : r.energy_error;
  return r;
}

BrokenSeminorms broken_seminorms(const RectMesh& mesh, const DofMap& dofmap, const ReferenceElement& elem,
                                 const Eigen::VectorXd& vh, const QuadRule& rule) {
  double s1 = 0.0, s2 = 0.0;
  std::vector<ShapeValues> shapes;
  for (Index c = 0; c < mesh.num_cells(); ++c) {
    const CellGeometry& geom = mesh.cell(c).geometry;
    const Eigen::VectorXd local = gather(dofmap, c, vh);
    const double jac = geom.half_widths.x() * geom.half_widths.y();
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const ShapeValues v = evaluate_local(elem, geom.half_widths, local, rule.points[q]);
      s1 += rule.weights[q] * jac * v.gradient.squaredNorm();
      s2 += rule.weights[q] * jac * hessian_contraction(v.hessian);
    }
  }
  return {std::sqrt(s1), std::sqrt(s2)};
}

namespace {

void check_rate_input(std::span<const double> errors, std::span<const double> hs) {
  if (errors.size() != hs.size()) throw std::invalid_argument("fit_rate: errors and mesh sizes differ in length");
  if (errors.size() < 2) throw std::invalid_argument("fit_rate: need at least two entries");
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!(errors[i] > 0.0)) throw std::domain_error("fit_rate: errors must be positive");
    if (!(hs[i] > 0.0)) throw std::domain_error("fit_rate: mesh sizes must be positive");
  }
}

}  // namespace

double fit_rate(std::span<const double> errors, std::span<const double> hs) {
  check_rate_input(errors, hs);
  return std::log(errors.front() / errors.back()) / std::log(hs.front() / hs.back());
}

double fit_rate_least_squares(std::span<const double> errors, std::span<const double> hs) {
  check_rate_input(errors, hs);
  const double n = static_cast<double>(errors.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    mx += std::log2(hs[i]);
    my += std::log2(errors[i]);
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    const double dx = std::log2(hs[i]) - mx;
    sxy += dx * (std::log2(errors[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

double last_pair_rate(std::span<const double> errors, std::span<const double> hs) {
  check_rate_input(errors, hs);
  return fit_rate(errors.last(2), hs.last(2));
}

}  // namespace fem4sp
