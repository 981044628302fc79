// Executable checks of the element construction assumptions:
//   H1  local interpolation reproduces P2 (Q2 for the extended element)
//   H2  continuity at vertices, zero at boundary vertices
//   H3  continuity of edge integrals of the normal derivative, zero on boundary edges
//   H4  cell means of grad(v_h - Pi v_h) vanish (vacuous when Pi = I)
#ifndef FEM4SP_VERIFY_HPP
#define FEM4SP_VERIFY_HPP

#include "fem4sp/element.hpp"
#include "fem4sp/space.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace fem4sp {

enum class CheckStatus { Pass, Fail, Vacuous };

struct CheckResult {
  std::string name;
  CheckStatus status;
  double max_deviation;
  double tolerance;
  std::string note;
};

struct VerificationReport {
  ElementKind element;
  int n;
  std::uint64_t seed;
  std::vector<CheckResult> checks;

  bool passed() const;
  const CheckResult& check(const std::string& name) const;
};

inline constexpr double kReproductionTol = 1e-11;
inline constexpr double kContinuityTol = 1e-11;
inline constexpr double kMeanGradientTol = 1e-12;
inline constexpr double kNodalityTol = 1e-10;
inline constexpr int kRandomFunctions = 20;

/// Max |I_h m - m| over sample points of every cell, for each monomial m of
/// P2 (and Q2 when with_q2 is set).
double polynomial_reproduction_defect(const RectMesh& mesh, const DofMap& dofmap, const ReferenceElement& elem,
                                      bool with_q2, int samples_per_axis = 5);

/// Max disagreement of values at shared vertices plus boundary vertex values.
double vertex_continuity_defect(const RectMesh& mesh, const DofMap& dofmap, const ReferenceElement& elem,
                                const Eigen::VectorXd& v);

/// Max disagreement of int_e dv/dn (global normal) between the incident cells,
/// plus the boundary-edge values.
double edge_flux_continuity_defect(const RectMesh& mesh, const DofMap& dofmap, const ReferenceElement& elem,
                                   const Eigen::VectorXd& v);

/// Max disagreement of traces at interior points of shared edges.
double trace_continuity_defect(const RectMesh& mesh, const DofMap& dofmap, const ReferenceElement& elem,
                               const Eigen::VectorXd& v, int points_per_edge = 5);

/// Max over cells of |int_T grad(v - Pi v)|.
double mean_gradient_defect(const RectMesh& mesh, const DofMap& dofmap, const ReferenceElement& elem,
                            const Eigen::VectorXd& v);

/// Random values on the free DOFs, zero on the constrained ones.
Eigen::VectorXd random_free_vector(const DofMap& dofmap, std::uint64_t seed);

VerificationReport verify_assumptions(ElementKind kind, int n, std::uint64_t seed = 42);

void print_report(const VerificationReport& report, std::ostream& out);

}  // namespace fem4sp

#endif  // FEM4SP_VERIFY_HPP
