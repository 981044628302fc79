// Broken seminorms, energy-norm errors and convergence rates.
#ifndef FEM4SP_POSTPROC_HPP
#define FEM4SP_POSTPROC_HPP

#include "fem4sp/assembly.hpp"
#include "fem4sp/manufactured.hpp"
#include "fem4sp/space.hpp"

#include <span>

namespace fem4sp {

struct ErrorReport {
  double epsilon = 0.0;
  double h = 0.0;
  double h1_seminorm = 0.0;   // |u - u_h|_{1,h}
  double h2_seminorm = 0.0;   // |u - u_h|_{2,h}
  double energy_error = 0.0;  // ||u - u_h||_{eps,h} under the mode's convention
  double exact_energy_norm = 0.0;
  double relative_energy_error = 0.0;
};

/// Energy norm from broken seminorms. poisson: |.|_1; biharmonic: |.|_2;
/// full: sqrt(eps^2 |.|_2^2 + |.|_1^2).
double energy_norm(double h1_seminorm, double h2_seminorm, double epsilon, Mode mode);

/// With layer_refine, cells touching the boundary are integrated on a 4x4
/// composite subdivision of the rule.
ErrorReport energy_error(const RectMesh& mesh, const DofMap& dofmap, const ReferenceElement& elem,
                         const Eigen::VectorXd& uh, const ManufacturedSolution& exact, double epsilon, Mode mode,
                         const QuadRule& rule, bool layer_refine = false);

struct BrokenSeminorms {
  double h1 = 0.0;
  double h2 = 0.0;
};

/// Broken |v_h|_{1,h} and |v_h|_{2,h} of a discrete function.
BrokenSeminorms broken_seminorms(const RectMesh& mesh, const DofMap& dofmap, const ReferenceElement& elem,
                                 const Eigen::VectorXd& vh, const QuadRule& rule);

/// Convergence rate as reported in the result tables: the mean of the
/// successive log2 error ratios, i.e. log(e_first / e_last) / log(h_first / h_last).
double fit_rate(std::span<const double> errors, std::span<const double> hs);

/// Least-squares slope of log2(error) against log2(h).
double fit_rate_least_squares(std::span<const double> errors, std::span<const double> hs);

/// Rate between the last two entries.
double last_pair_rate(std::span<const double> errors, std::span<const double> hs);

}  // namespace fem4sp

#endif  // FEM4SP_POSTPROC_HPP
