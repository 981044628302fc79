#include "fem4sp/verify.hpp"

#include "fem4sp/quadrature.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <stdexcept>

namespace fem4sp {

bool VerificationReport::passed() const {
  for (const CheckResult& c : checks) {
    if (c.status == CheckStatus::Fail) return false;
  }
  return true;
}

const CheckResult& VerificationReport::check(const std::string& name) const {
  for (const CheckResult& c : checks) {
    if (c.name == name) return c;
  }
  throw std::out_of_range("no check named '" + name + "'");
}

namespace {

struct Monomial {
  int px, py;
};

ScalarField monomial_field(Monomial m) {
  return {[m](const Point& x) { return std::pow(x.x(), m.px) * std::pow(x.y(), m.py); },
          [m](const Point& x) {
            const double dx = m.px == 0 ? 0.0 : m.px * std::pow(x.x(), m.px - 1) * std::pow(x.y(), m.py);
            const double dy = m.py == 0 ? 0.0 : m.py * std::pow(x.x(), m.px) * std::pow(x.y(), m.py - 1);
            return Eigen::Vector2d(dx, dy);
          }};
}

CheckResult make_check(std::string name, double deviation, double tol, std::string note = {}) {
  return {std::move(name), deviation <= tol ? CheckStatus::Pass : CheckStatus::Fail, deviation, tol,
          std::move(note)};
}

}  // namespace

double polynomial_reproduction_defect(const RectMesh& mesh, const DofMap& dofmap, const ReferenceElement& elem,
                                      bool with_q2, int samples_per_axis) {
  std::vector<Monomial> monomials{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
  if (with_q2) monomials.insert(monomials.end(), {{2, 1}, {1, 2}, {2, 2}});
  double worst = 0.0;
  for (const Monomial& m : monomials) {
    const ScalarField u = monomial_field(m);
    const Eigen::VectorXd coeffs = interpolate(dofmap, mesh, elem, u);
    for (Index c = 0; c < mesh.num_cells(); ++c) {
      const CellGeometry& geom = mesh.cell(c).geometry;
      const Eigen::VectorXd local = gather(dofmap, c, coeffs);
      for (int j = 0; j < samples_per_axis; ++j) {
        for (int i = 0; i < samples_per_axis; ++i) {
          const Eigen::Vector2d ref(-1.0 + 2.0 * i / (samples_per_axis - 1), -1.0 + 2.0 * j / (samples_per_axis - 1));
          const double vh = evaluate_local(elem, geom.half_widths, local, ref).value;
          worst = std::max(worst, std::abs(vh - u.value(geom.map(ref))));
        }
      }
    }
  }
  return worst;
}

double vertex_continuity_defect(const RectMesh& mesh, const DofMap& dofmap, const ReferenceElement& elem,
                                const Eigen::VectorXd& v) {
  std::vector<double> first(static_cast<std::size_t>(mesh.num_vertices()), NAN);
  double worst = 0.0;
  for (Index c = 0; c < mesh.num_cells(); ++c) {
    const Cell& cell = mesh.cell(c);
    const Eigen::VectorXd local = gather(dofmap, c, v);
    for (int k = 0; k < 4; ++k) {
      const Index vid = cell.vertices[k];
      const double value = evaluate_local(elem, cell.geometry.half_widths, local, reference::kVertices[k]).value;
      double& f = first[static_cast<std::size_t>(vid)];
      if (std::isnan(f)) {
        f = value;
      } else {
        worst = std::max(worst, std::abs(value - f));
      }
      if (mesh.is_boundary_vertex(vid)) worst = std::max(worst, std::abs(value));
    }
  }
  return worst;
}

double edge_flux_continuity_defect(const RectMesh& mesh, const DofMap& dofmap, const ReferenceElement& elem,
                                   const Eigen::VectorXd& v) {
  std::vector<double> first(static_cast<std::size_t>(mesh.num_edges()), NAN);
  double worst = 0.0;
  for (Index c = 0; c < mesh.num_cells(); ++c) {
    const Cell& cell = mesh.cell(c);
    const CellGeometry& geom = cell.geometry;
    const Eigen::VectorXd local = gather(dofmap, c, v);
    for (int e = 0; e < 4; ++e) {
      const Edge& edge = mesh.edge(cell.edges[e]);
      const Point n = edge.normal();
      const double flux = integrate_on_edge(
          mesh.vertex(edge.vertices[0]), mesh.vertex(edge.vertices[1]),
          [&](const Point& x) {
            return evaluate_local(elem, geom.half_widths, local, geom.to_reference(x)).gradient.dot(n);
          },
          kDefaultQuadOrder, 0);
      double& f = first[static_cast<std::size_t>(cell.edges[e])];
      if (std::isnan(f)) {
        f = flux;
      } else {
        worst = std::max(worst, std::abs(flux - f));
      }
      if (edge.boundary) worst = std::max(worst, std::abs(flux));
    }
  }
  return worst;
}

double trace_continuity_defect(const RectMesh& mesh, const DofMap& dofmap, const ReferenceElement& elem,
                               const Eigen::VectorXd& v, int points_per_edge) {
  double worst = 0.0;
  for (const Edge& edge : mesh.edges()) {
    if (edge.cell_count != 2) continue;
    const Point a = mesh.vertex(edge.vertices[0]);
    const Point b = mesh.vertex(edge.vertices[1]);
    for (int k = 1; k <= points_per_edge; ++k) {
      const Point x = a + (static_cast<double>(k) / (points_per_edge + 1)) * (b - a);
      double values[2];
      for (int s = 0; s < 2; ++s) {
        const Index c = edge.cells[s];
        const CellGeometry& geom = mesh.cell(c).geometry;
        values[s] = evaluate_on_cell(dofmap, mesh, elem, v, c, geom.to_reference(x)).value;
      }
      worst = std::max(worst, std::abs(values[0] - values[1]));
    }
  }
  return worst;
}

double mean_gradient_defect(const RectMesh& mesh, const DofMap& dofmap, const ReferenceElement& elem,
                            const Eigen::VectorXd& v) {
  const Eigen::VectorXd pi = bilinear_interpolant(dofmap, mesh, v);
  const QuadRule rule = gauss_rule(kDefaultQuadOrder);
  double worst = 0.0;
  for (Index c = 0; c < mesh.num_cells(); ++c) {
    const CellGeometry& geom = mesh.cell(c).geometry;
    const Eigen::VectorXd local = gather(dofmap, c, v);
    Eigen::Vector2d mean = Eigen::Vector2d::Zero();
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const Eigen::Vector2d g = evaluate_local(elem, geom.half_widths, local, rule.points[q]).gradient;
      const Eigen::Vector2d gp = evaluate_bilinear(mesh, pi, c, rule.points[q]).gradient;
      mean += rule.weights[q] * (g - gp);
    }
    mean *= geom.half_widths.x() * geom.half_widths.y();
    worst = std::max(worst, mean.cwiseAbs().maxCoeff());
  }
  return worst;
}

Eigen::VectorXd random_free_vector(const DofMap& dofmap, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(dofmap.num_dofs());
  for (Index i = 0; i < dofmap.num_dofs(); ++i) {
    const double r = dist(rng);
    if (!dofmap.is_constrained(i)) v[i] = r;
  }
  return v;
}

VerificationReport verify_assumptions(ElementKind kind, int n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("verify_assumptions: n must be at least 2");
  const ReferenceElement elem = make_element(kind);
  const RectMesh mesh = build_uniform_mesh(unit_square, n, n);
  const DofMap dofmap = build_dofmap(mesh, elem);
  VerificationReport report{kind, n, seed, {}};

  {
    double worst = 0.0;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> width(0.05, 2.0);
    std::vector<CellGeometry> geoms{mesh.cell(0).geometry, {Point(0.0, 0.0), Eigen::Vector2d(1.0, 1.0)}};
    for (int k = 0; k < 3; ++k) geoms.push_back({Point(0.3, -0.2), Eigen::Vector2d(width(rng), width(rng))});
    for (const CellGeometry& g : geoms) {
      const Eigen::MatrixXd m = nodality_matrix(elem, g);
      worst = std::max(worst, (m - Eigen::MatrixXd::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff());
    }
    report.checks.push_back(make_check("nodality", worst, kNodalityTol));
  }

  report.checks.push_back(make_check("H1", polynomial_reproduction_defect(mesh, dofmap, elem, elem.is_c0()),
                                     kReproductionTol, elem.is_c0() ? "P2 and Q2 monomials" : "P2 monomials"));

  double h2 = 0.0, h3 = 0.0, h4 = 0.0, c0 = 0.0;
  for (int k = 0; k < kRandomFunctions; ++k) {
    const Eigen::VectorXd v = random_free_vector(dofmap, seed + static_cast<std::uint64_t>(k));
    h2 = std::max(h2, vertex_continuity_defect(mesh, dofmap, elem, v));
    h3 = std::max(h3, edge_flux_continuity_defect(mesh, dofmap, elem, v));
    if (elem.is_c0()) {
      c0 = std::max(c0, trace_continuity_defect(mesh, dofmap, elem, v));
    } else {
      h4 = std::max(h4, mean_gradient_defect(mesh, dofmap, elem, v));
    }
  }
  report.checks.push_back(make_check("H2", h2, kContinuityTol));
  report.checks.push_back(make_check("H3", h3, kContinuityTol));
  if (elem.is_c0()) {
    report.checks.push_back({"H4", CheckStatus::Vacuous, 0.0, kMeanGradientTol, "space is C0, Pi = I"});
    report.checks.push_back(make_check("C0-trace", c0, kContinuityTol));
  } else {
    report.checks.push_back(make_check("H4", h4, kMeanGradientTol));
  }
  return report;
}

void print_report(const VerificationReport& report, std::ostream& out) {
  out << "element " << to_string(report.element) << ", n = " << report.n << ", seed = " << report.seed << '\n';
  for (const CheckResult& c : report.checks) {
    const char* status = c.status == CheckStatus::Pass ? "PASS" : c.status == CheckStatus::Fail ? "FAIL" : "VACUOUS";
    char line[160];
    std::snprintf(line, sizeof line, "  %-9s %-8s max deviation %.3e (tol %.0e)", c.name.c_str(), status,
                  c.max_deviation, c.tolerance);
    out << line;
    if (!c.note.empty()) out << "  [" << c.note << "]";
    out << '\n';
  }
  out << (report.passed() ? "all checks passed" : "verification FAILED") << '\n';
}

}  // namespace fem4sp
