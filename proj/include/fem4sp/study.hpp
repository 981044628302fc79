// Convergence studies over (eps, n) for one element and one example.
#ifndef FEM4SP_STUDY_HPP
#define FEM4SP_STUDY_HPP

#include "fem4sp/assembly.hpp"
#include "fem4sp/element.hpp"
#include "fem4sp/manufactured.hpp"
#include "fem4sp/postproc.hpp"
#include "fem4sp/solver.hpp"
#include "fem4sp/space.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fem4sp {

/// Parses "2^-6", "2^0", "0.25", "1e-3".
double parse_epsilon(std::string_view text);
std::vector<double> parse_epsilon_list(std::string_view text);
/// "2^-k" when eps is an exact power of two, otherwise %g.
std::string format_epsilon(double epsilon);

struct ExperimentConfig {
  ElementKind element = ElementKind::Morley;
  ExampleId example = ExampleId::Smooth;
  std::vector<Mode> modes{Mode::Full};
  Scheme scheme = Scheme::Standard;
  std::vector<double> epsilons{1.0, 0.25, 0.0625, 0.015625, 0.00390625, 0.0009765625};
  std::vector<int> ns{4, 8, 16, 32};
  int quad_order = kDefaultQuadOrder;
  SolverMethod solver = SolverMethod::Direct;
  double tol = kDefaultSolverTolerance;
  bool layer_refine = false;

  /// Throws std::invalid_argument on an inconsistent configuration.
  void validate() const;
};

struct TableSettings {
  Scheme scheme;
  int quad_order;
};

/// Scheme and Gauss order of the reference convergence tables. Morley on the
/// smooth example uses the modified load with 2x2 Gauss points (stiffness,
/// load and error alike); everything else uses the standard scheme with 3x3.
TableSettings table_settings(ElementKind element, ExampleId example);

/// Default study for one element/example: table settings, all three modes
/// for the smooth example and full mode only for the layer example.
ExperimentConfig table_config(ElementKind element, ExampleId example);

struct StudyRow {
  ElementKind element;
  ExampleId example;
  Mode mode;
  Scheme scheme;
  double epsilon;  // meaningful in full mode only
  int n;
  double h;
  Index free_dofs;
  double relative_error;
  std::optional<double> rate;  // shared by all rows of one eps group
  std::optional<double> last_pair_rate;
  std::optional<double> least_squares_rate;
};

/// One (eps, n) solve.
struct CaseSpec {
  ElementKind element = ElementKind::Morley;
  ExampleId example = ExampleId::Smooth;
  Mode mode = Mode::Full;
  Scheme scheme = Scheme::Standard;
  double epsilon = 1.0;
  int n = 4;
  int quad_order = kDefaultQuadOrder;
  SolverMethod solver = SolverMethod::Direct;
  double tol = kDefaultSolverTolerance;
  bool layer_refine = false;
};

struct CaseResult {
  RectMesh mesh;
  ReferenceElement elem;
  DofMap dofmap;
  Eigen::VectorXd uh;  // full DOF vector including prescribed values
  SolveReport solve;
  ErrorReport error;
};

CaseResult solve_case(const CaseSpec& spec);

/// Rows ordered as in the result tables: full mode by decreasing eps, then
/// poisson, then biharmonic; within a group by decreasing h.
std::vector<StudyRow> run_study(const ExperimentConfig& config);

}  // namespace fem4sp

#endif  // FEM4SP_STUDY_HPP
