#include "fem4sp/assembly.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace fem4sp {

std::string_view to_string(Scheme scheme) {
  return scheme == Scheme::Standard ? "standard" : "modified";
}

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::Full: return "full";
    case Mode::Poisson: return "poisson";
    case Mode::Biharmonic: return "biharmonic";
  }
  return "unknown";
}

Scheme parse_scheme(std::string_view name) {
  if (name == "standard") return Scheme::Standard;
  if (name == "modified") return Scheme::Modified;
  throw std::invalid_argument("unknown scheme '" + std::string(name) + "'");
}

Mode parse_mode(std::string_view name) {
  if (name == "full") return Mode::Full;
  if (name == "poisson") return Mode::Poisson;
  if (name == "biharmonic") return Mode::Biharmonic;
  throw std::invalid_argument("unknown mode '" + std::string(name) + "'");
}

LocalMatrices local_matrices(const ReferenceElement& elem, const CellGeometry& geom, const QuadRule& rule) {
  const int n = elem.dof_count();
  LocalMatrices m{Eigen::MatrixXd::Zero(n, n), Eigen::MatrixXd::Zero(n, n)};
  const double jac = geom.half_widths.x() * geom.half_widths.y();
  Eigen::MatrixXd grads(2, n);
  Eigen::MatrixXd hess(3, n);
  std::vector<ShapeValues> shapes;
  for (std::size_t q = 0; q < rule.size(); ++q) {
    elem.evaluate(geom.half_widths, rule.points[q], shapes);
    for (int i = 0; i < n; ++i) {
      grads.col(i) = shapes[i].gradient;
      // D^2u : D^2v = uxx vxx + 2 uxy vxy + uyy vyy
      hess.col(i) << shapes[i].hessian(0, 0), std::sqrt(2.0) * shapes[i].hessian(0, 1), shapes[i].hessian(1, 1);
    }
    const double w = rule.weights[q] * jac;
    m.gradient.noalias() += w * grads.transpose() * grads;
    m.hessian.noalias() += w * hess.transpose() * hess;
  }
  return m;
}

Eigen::VectorXd local_load(const ReferenceElement& elem, const CellGeometry& geom, const SourceFunction& f,
                           const QuadRule& rule) {
  const int n = elem.dof_count();
  Eigen::VectorXd load = Eigen::VectorXd::Zero(n);
  const double jac = geom.half_widths.x() * geom.half_widths.y();
  std::vector<ShapeValues> shapes;
  for (std::size_t q = 0; q < rule.size(); ++q) {
    elem.evaluate(geom.half_widths, rule.points[q], shapes);
    const double fw = rule.weights[q] * jac * f(geom.map(rule.points[q]));
    for (int i = 0; i < n; ++i) load[i] += fw * shapes[i].value;
  }
  return load;
}

Eigen::VectorXd local_load_modified(const ReferenceElement& elem, const CellGeometry& geom, const SourceFunction& f,
                                    const QuadRule& rule) {
  if (elem.is_c0()) return local_load(elem, geom, f, rule);
  Eigen::VectorXd load = Eigen::VectorXd::Zero(elem.dof_count());
  const double jac = geom.half_widths.x() * geom.half_widths.y();
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const Eigen::Vector2d& r = rule.points[q];
    const double fw = rule.weights[q] * jac * f(geom.map(r));
    for (int i = 0; i < elem.dof_count(); ++i) {
      const DofFunctional& d = elem.functional(i);
      if (d.kind != DofKind::VertexValue) continue;
      const Eigen::Vector2d a = reference::kVertices[d.entity];
      load[i] += fw * 0.25 * (1.0 + a.x() * r.x()) * (1.0 + a.y() * r.y());
    }
  }
  return load;
}

SparseMatrix GlobalOperators::combine(double epsilon, Mode mode) const {
  switch (mode) {
    case Mode::Full: return SparseMatrix(epsilon * epsilon * hessian + gradient);
    case Mode::Poisson: return gradient;
    case Mode::Biharmonic: return hessian;
  }
  return gradient;
}

GlobalOperators assemble_operators(const RectMesh& mesh, const DofMap& dofmap, const ReferenceElement& elem,
                                   const QuadRule& rule) {
  using Triplet = Eigen::Triplet<double>;
  const int n = elem.dof_count();
  std::vector<Triplet> a_entries;
  std::vector<Triplet> b_entries;
  a_entries.reserve(static_cast<std::size_t>(mesh.num_cells() * n * n));
  b_entries.reserve(a_entries.capacity());
  for (Index c = 0; c < mesh.num_cells(); ++c) {
    const LocalMatrices local = local_matrices(elem, mesh.cell(c).geometry, rule);
    const auto slots = dofmap.cell_dofs(c);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double s = slots[i].sign * slots[j].sign;
        a_entries.emplace_back(slots[i].global, slots[j].global, s * local.hessian(i, j));
        b_entries.emplace_back(slots[i].global, slots[j].global, s * local.gradient(i, j));
      }
    }
  }
  GlobalOperators ops;
  ops.hessian.resize(dofmap.num_dofs(), dofmap.num_dofs());
  ops.gradient.resize(dofmap.num_dofs(), dofmap.num_dofs());
  ops.hessian.setFromTriplets(a_entries.begin(), a_entries.end());
  ops.gradient.setFromTriplets(b_entries.begin(), b_entries.end());
  return ops;
}

Eigen::VectorXd assemble_load(const RectMesh& mesh, const DofMap& dofmap, const ReferenceElement& elem,
                              const SourceFunction& f, Scheme scheme, const QuadRule& rule) {
  Eigen::VectorXd load = Eigen::VectorXd::Zero(dofmap.num_dofs());
  for (Index c = 0; c < mesh.num_cells(); ++c) {
    const CellGeometry& geom = mesh.cell(c).geometry;
    const Eigen::VectorXd local =
        scheme == Scheme::Modified ? local_load_modified(elem, geom, f, rule) : local_load(elem, geom, f, rule);
    const auto slots = dofmap.cell_dofs(c);
    for (std::size_t i = 0; i < slots.size(); ++i) load[slots[i].global] += slots[i].sign * local[static_cast<Index>(i)];
  }
  return load;
}

LinearSystem reduce_system(const GlobalOperators& ops, const Eigen::VectorXd& load, const DofMap& dofmap,
                           double epsilon, Mode mode) {
  if (epsilon < 0.0) throw std::invalid_argument("assemble_system: epsilon must be non-negative");
  LinearSystem sys;
  sys.free_index = dofmap.free_numbering();
  sys.prescribed = dofmap.constraint_vector();
  const Index nfree = dofmap.num_free();
  if (nfree == 0) throw EmptySystemError("assemble_system: no free degrees of freedom");

  const SparseMatrix k = ops.combine(epsilon, mode);
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(static_cast<std::size_t>(k.nonZeros()));
  sys.rhs = Eigen::VectorXd::Zero(nfree);
  for (Index row = 0; row < k.outerSize(); ++row) {
    const Index fr = sys.free_index[static_cast<std::size_t>(row)];
    if (fr < 0) continue;
    sys.rhs[fr] += load[row];
    for (SparseMatrix::InnerIterator it(k, row); it; ++it) {
      const Index fc = sys.free_index[static_cast<std::size_t>(it.col())];
      if (fc >= 0) {
        entries.emplace_back(fr, fc, it.value());
      } else {
        sys.rhs[fr] -= it.value() * sys.prescribed[it.col()];
      }
    }
  }
  sys.matrix.resize(nfree, nfree);
  sys.matrix.setFromTriplets(entries.begin(), entries.end());
  return sys;
}

LinearSystem assemble_system(const RectMesh& mesh, const DofMap& dofmap, const ReferenceElement& elem, double epsilon,
                             const SourceFunction& f, Scheme scheme, Mode mode, const QuadRule& rule) {
  if (epsilon < 0.0) throw std::invalid_argument("assemble_system: epsilon must be non-negative");
  if (dofmap.num_free() == 0) throw EmptySystemError("assemble_system: no free degrees of freedom");
  const GlobalOperators ops = assemble_operators(mesh, dofmap, elem, rule);
  return reduce_system(ops, assemble_load(mesh, dofmap, elem, f, scheme, rule), dofmap, epsilon, mode);
}

Eigen::VectorXd expand_solution(const LinearSystem& system, const Eigen::VectorXd& free_solution) {
  Eigen::VectorXd full = system.prescribed;
  for (std::size_t i = 0; i < system.free_index.size(); ++i) {
    const Index f = system.free_index[i];
    if (f >= 0) full[static_cast<Index>(i)] = free_solution[f];
  }
  return full;
}

}  // namespace fem4sp
