#include <gtest/gtest.h>

#include "fem4sp/assembly.hpp"
#include "fem4sp/solver.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>

#include <cmath>

using namespace fem4sp;

namespace {

Eigen::VectorXd constant_dofs(const ReferenceElement& elem) {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(elem.dof_count());
  for (int i = 0; i < elem.dof_count(); ++i) {
    if (!elem.functional(i).is_edge_normal()) c[i] = 1.0;
  }
  return c;
}

}  // namespace

TEST(LocalMatrices, ConstantsAreInBothNullspaces) {
  const CellGeometry g{Point(0.3, 0.6), Eigen::Vector2d(0.125, 0.2)};
  for (ElementKind kind : {ElementKind::Morley, ElementKind::Extended}) {
    const ReferenceElement elem = make_element(kind);
    const LocalMatrices m = local_matrices(elem, g, gauss_rule(5));
    const Eigen::VectorXd c = constant_dofs(elem);
    // the extended basis comes from a numerical inverse, so allow roundoff
    // relative to the matrix size
    const double scale = kind == ElementKind::Morley ? 1.0 : m.hessian.norm();
    EXPECT_LE((m.hessian * c).norm(), 1e-12 * scale);
    EXPECT_LE((m.gradient * c).norm(), 1e-12);
    EXPECT_LE((m.hessian - m.hessian.transpose()).norm(), 1e-12 * m.hessian.norm());
    EXPECT_LE((m.gradient - m.gradient.transpose()).norm(), 1e-12 * m.gradient.norm());
    EXPECT_GE(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m.gradient).eigenvalues().minCoeff(), -1e-12);
  }
}

TEST(LocalMatrices, ScalingWithCellSize) {
  const ReferenceElement elem = morley_element();
  const QuadRule rule = gauss_rule(5);
  const LocalMatrices big = local_matrices(elem, {Point(0, 0), Eigen::Vector2d(0.25, 0.25)}, rule);
  const LocalMatrices small = local_matrices(elem, {Point(0, 0), Eigen::Vector2d(0.125, 0.125)}, rule);
  const Eigen::Matrix4d a_big = big.hessian.topLeftCorner<4, 4>();
  const Eigen::Matrix4d a_small = small.hessian.topLeftCorner<4, 4>();
  EXPECT_LE((a_small - 4.0 * a_big).cwiseAbs().maxCoeff(), 1e-12 * a_small.cwiseAbs().maxCoeff());
  EXPECT_LE((small.gradient.topLeftCorner<4, 4>() - big.gradient.topLeftCorner<4, 4>()).cwiseAbs().maxCoeff(),
            1e-13);
}

TEST(LocalMatrices, MixedTermUsesFullHessianContraction) {
  // D^2(xy) only has the two off-diagonal entries, so a_T(u, u) = 2 |T|.
  const ReferenceElement elem = morley_element();
  const CellGeometry g{Point(0.5, 0.5), Eigen::Vector2d(0.25, 0.5)};
  const ScalarField u{[](const Point& x) { return x.x() * x.y(); },
                      [](const Point& x) { return Eigen::Vector2d(x.y(), x.x()); }};
  const Eigen::VectorXd d = apply_dofs(elem, g, u);
  const LocalMatrices m = local_matrices(elem, g, gauss_rule(5));
  EXPECT_NEAR(d.dot(m.hessian * d), 2.0 * g.area(), 1e-13);
}

TEST(LocalLoad, EdgeFunctionIntegral) {
  const ReferenceElement elem = morley_element();
  const double h1 = 0.25, h2 = 0.5;
  const CellGeometry g{Point(0.5, 0.5), Eigen::Vector2d(h1, h2)};
  const Eigen::VectorXd f = local_load(elem, g, [](const Point&) { return 1.0; }, gauss_rule(5));
  EXPECT_NEAR(f[4 + Right], -2.0 * h1 * h1 * h2 / 3.0, 1e-15);
  EXPECT_NEAR(f.head<4>().sum(), g.area(), 1e-15);
}

TEST(LocalLoad, ModifiedEqualsStandardForContinuousElements) {
  const CellGeometry g{Point(0.5, 0.5), Eigen::Vector2d(0.125, 0.125)};
  auto f = [](const Point& x) { return std::sin(3 * x.x()) + x.y() * x.y(); };
  const ReferenceElement elem = extended_element();
  const QuadRule rule = gauss_rule(5);
  EXPECT_LE((local_load_modified(elem, g, f, rule) - local_load(elem, g, f, rule)).norm(), 1e-15);
}

TEST(LocalLoad, ModifiedMorleyUsesBilinearHats) {
  const CellGeometry g{Point(0.5, 0.5), Eigen::Vector2d(0.125, 0.25)};
  const Eigen::VectorXd f =
      local_load_modified(morley_element(), g, [](const Point&) { return 1.0; }, gauss_rule(3));
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(f[i], g.area() / 4, 1e-15);
  EXPECT_EQ(f.tail<4>().norm(), 0.0);
}

TEST(GlobalOperators, EpsilonRecombination) {
  const RectMesh mesh = build_uniform_mesh(unit_square, 4, 4);
  const ReferenceElement elem = morley_element();
  const DofMap map = build_dofmap(mesh, elem);
  const GlobalOperators ops = assemble_operators(mesh, map, elem, gauss_rule(5));
  const double eps = 0.125;
  const SparseMatrix expected = eps * eps * ops.hessian + ops.gradient;
  EXPECT_LE((ops.combine(eps, Mode::Full) - expected).norm(), 1e-14 * expected.norm());
  EXPECT_LE((ops.combine(eps, Mode::Poisson) - ops.gradient).norm(), 0.0);
  EXPECT_LE((ops.combine(eps, Mode::Biharmonic) - ops.hessian).norm(), 0.0);
}

TEST(GlobalOperators, AssemblyIsDeterministic) {
  const RectMesh mesh = build_uniform_mesh(unit_square, 8, 8);
  const ReferenceElement elem = extended_element();
  const DofMap map = build_dofmap(mesh, elem);
  const GlobalOperators a = assemble_operators(mesh, map, elem, gauss_rule(3));
  const GlobalOperators b = assemble_operators(mesh, map, elem, gauss_rule(3));
  EXPECT_EQ((a.hessian - b.hessian).norm(), 0.0);
  EXPECT_EQ((a.gradient - b.gradient).norm(), 0.0);
}

TEST(LinearSystem, SmallMorleySystemIsSpd) {
  const RectMesh mesh = build_uniform_mesh(unit_square, 2, 2);
  const ReferenceElement elem = morley_element();
  const DofMap map = build_dofmap(mesh, elem);
  const LinearSystem sys =
      assemble_system(mesh, map, elem, 1.0, [](const Point&) { return 1.0; }, Scheme::Standard, Mode::Full, gauss_rule(5));
  ASSERT_EQ(sys.matrix.rows(), 5);
  const Eigen::MatrixXd dense(sys.matrix);
  EXPECT_LE((dense - dense.transpose()).norm(), 1e-14 * dense.norm());
  EXPECT_EQ(Eigen::LLT<Eigen::MatrixXd>(dense).info(), Eigen::Success);
}

TEST(LinearSystem, RejectsBadInput) {
  const RectMesh mesh = build_uniform_mesh(unit_square, 2, 2);
  const ReferenceElement elem = morley_element();
  const DofMap map = build_dofmap(mesh, elem);
  auto f = [](const Point&) { return 1.0; };
  EXPECT_THROW(assemble_system(mesh, map, elem, -1.0, f, Scheme::Standard, Mode::Full, gauss_rule(5)),
               std::invalid_argument);
  const RectMesh single = build_uniform_mesh(unit_square, 1, 1);
  const DofMap empty = build_dofmap(single, elem);
  EXPECT_THROW(assemble_system(single, empty, elem, 1.0, f, Scheme::Standard, Mode::Full, gauss_rule(5)),
               EmptySystemError);
}

TEST(LinearSystem, ConformingSolutionReproducesQ2Data) {
  // u = x^2 y^2 + xy - y lies in Q2, so the C0 element recovers it exactly
  // from inhomogeneous boundary data when solving the Poisson problem.
  const RectMesh mesh = build_uniform_mesh(unit_square, 4, 4);
  const ReferenceElement elem = extended_element();
  const ScalarField u{[](const Point& x) { return x.x() * x.x() * x.y() * x.y() + x.x() * x.y() - x.y(); },
                      [](const Point& x) {
                        return Eigen::Vector2d(2 * x.x() * x.y() * x.y() + x.y(),
                                               2 * x.x() * x.x() * x.y() + x.x() - 1);
                      }};
  auto f = [](const Point& x) { return -2 * (x.x() * x.x() + x.y() * x.y()); };
  DofMap map(mesh, elem);
  boundary_constraints(map, mesh, elem, &u);
  const LinearSystem sys = assemble_system(mesh, map, elem, 0.0, f, Scheme::Standard, Mode::Poisson, gauss_rule(5));
  const Eigen::VectorXd uh = expand_solution(sys, solve_spd(sys, SolverMethod::Direct).solution);
  const Eigen::VectorXd iu = interpolate(map, mesh, elem, u);
  EXPECT_LE((uh - iu).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Names, ModeAndSchemeRoundTrip) {
  for (Mode m : {Mode::Full, Mode::Poisson, Mode::Biharmonic}) EXPECT_EQ(parse_mode(to_string(m)), m);
  for (Scheme s : {Scheme::Standard, Scheme::Modified}) EXPECT_EQ(parse_scheme(to_string(s)), s);
  EXPECT_THROW(parse_mode("wave"), std::invalid_argument);
}
