// Solvers for the reduced symmetric positive definite systems.
#ifndef FEM4SP_SOLVER_HPP
#define FEM4SP_SOLVER_HPP

#include "fem4sp/assembly.hpp"

#include <Eigen/Core>

#include <stdexcept>
#include <string_view>

namespace fem4sp {

enum class SolverMethod { Direct, Cg };

std::string_view to_string(SolverMethod method);
SolverMethod parse_solver_method(std::string_view name);

struct SolveReport {
  Eigen::VectorXd solution;
  double relative_residual = 0.0;  // recomputed from scratch
  int iterations = 0;              // 0 for the direct path
  SolverMethod method = SolverMethod::Direct;
};

class NotSpdError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// CG hit its iteration cap. Carries the last iterate.
class NonConvergenceError : public std::runtime_error {
public:
  NonConvergenceError(const std::string& what, Eigen::VectorXd best, double residual)
      : std::runtime_error(what), best_iterate(std::move(best)), relative_residual(residual) {}

  Eigen::VectorXd best_iterate;
  double relative_residual;
};

inline constexpr double kDefaultSolverTolerance = 1e-12;

/// Direct: sparse Cholesky with an approximate-minimum-degree ordering.
/// Cg: Jacobi-preconditioned conjugate gradients.
SolveReport solve_spd(const SparseMatrix& matrix, const Eigen::VectorXd& rhs, SolverMethod method,
                      double tol = kDefaultSolverTolerance, int max_iter = 100000);

inline SolveReport solve_spd(const LinearSystem& system, SolverMethod method, double tol = kDefaultSolverTolerance,
                             int max_iter = 100000) {
  return solve_spd(system.matrix, system.rhs, method, tol, max_iter);
}

}  // namespace fem4sp

#endif  // FEM4SP_SOLVER_HPP
