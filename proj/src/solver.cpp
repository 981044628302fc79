#include "fem4sp/solver.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/OrderingMethods>
#include <Eigen/SparseCholesky>

#include <sstream>
#include <string>

namespace fem4sp {

std::string_view to_string(SolverMethod method) { return method == SolverMethod::Direct ? "direct" : "cg"; }

SolverMethod parse_solver_method(std::string_view name) {
  if (name == "direct") return SolverMethod::Direct;
  if (name == "cg") return SolverMethod::Cg;
  throw std::invalid_argument("unknown solver '" + std::string(name) + "'");
}

namespace {

double relative_residual(const SparseMatrix& a, const Eigen::VectorXd& x, const Eigen::VectorXd& b) {
  const double bn = b.norm();
  const double rn = (b - a * x).norm();
  return bn > 0.0 ? rn / bn : rn;
}

}  // namespace

SolveReport solve_spd(const SparseMatrix& matrix, const Eigen::VectorXd& rhs, SolverMethod method, double tol,
                      int max_iter) {
  if (matrix.rows() == 0) throw EmptySystemError("solve_spd: empty system");
  if (matrix.rows() != matrix.cols() || matrix.rows() != rhs.size()) {
    throw std::invalid_argument("solve_spd: dimension mismatch");
  }
  if (!(tol > 0.0 && tol <= 1e-6)) throw std::invalid_argument("solve_spd: tolerance must lie in (0, 1e-6]");

  SolveReport report;
  report.method = method;
  if (rhs.squaredNorm() == 0.0) {
    report.solution = Eigen::VectorXd::Zero(rhs.size());
    return report;
  }

  // Eigen's Cholesky and CG work on column-major storage.
  const Eigen::SparseMatrix<double> a = matrix;
  if (method == SolverMethod::Direct) {
    Eigen::SimplicialLLT<Eigen::SparseMatrix<double>, Eigen::Lower, Eigen::AMDOrdering<int>> llt(a);
    if (llt.info() != Eigen::Success) throw NotSpdError("solve_spd: Cholesky factorization hit a non-positive pivot");
    report.solution = llt.solve(rhs);
  } else {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (!(a.coeff(i, i) > 0.0)) throw NotSpdError("solve_spd: non-positive diagonal entry");
    }
    Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper,
                             Eigen::DiagonalPreconditioner<double>>
        cg(a);
    cg.setTolerance(tol);
    cg.setMaxIterations(max_iter);
    report.solution = cg.solve(rhs);
    report.iterations = static_cast<int>(cg.iterations());
  }
  report.relative_residual = relative_residual(matrix, report.solution, rhs);
  if (method == SolverMethod::Cg && report.relative_residual > tol) {
    std::ostringstream msg;
    msg << "solve_spd: CG stopped after " << report.iterations << " iterations at relative residual "
        << report.relative_residual;
    throw NonConvergenceError(msg.str(), report.solution, report.relative_residual);
  }
  return report;
}

}  // namespace fem4sp
