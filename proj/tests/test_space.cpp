#include <gtest/gtest.h>

#include "fem4sp/space.hpp"
#include "fem4sp/verify.hpp"

#include <cmath>
#include <map>
#include <random>

using namespace fem4sp;

namespace {

ScalarField quadratic() {
  return {[](const Point& x) { return x.x() * x.x() + x.y() * x.y() - 0.5 * x.x() * x.y() + x.y(); },
          [](const Point& x) { return Eigen::Vector2d(2 * x.x() - 0.5 * x.y(), 2 * x.y() - 0.5 * x.x() + 1); }};
}

}  // namespace

TEST(DofMap, FreeDofCounts) {
  for (int n : {1, 2, 3, 4, 8}) {
    const RectMesh mesh = build_uniform_mesh(unit_square, n, n);
    EXPECT_EQ(build_dofmap(mesh, morley_element()).num_free(), (n - 1) * (n - 1) + 2 * n * (n - 1)) << n;
    EXPECT_EQ(build_dofmap(mesh, extended_element()).num_free(), (n - 1) * (n - 1) + 4 * n * (n - 1)) << n;
  }
  EXPECT_EQ(build_dofmap(build_uniform_mesh(unit_square, 2, 2), morley_element()).num_free(), 5);
  EXPECT_EQ(build_dofmap(build_uniform_mesh(unit_square, 2, 2), extended_element()).num_free(), 9);
  EXPECT_EQ(build_dofmap(build_uniform_mesh(unit_square, 1, 1), morley_element()).num_free(), 0);
}

TEST(DofMap, HomogeneousConstraintsCoverBoundary) {
  const RectMesh mesh = build_uniform_mesh(unit_square, 4, 4);
  const DofMap map = build_dofmap(mesh, morley_element());
  int vertices = 0, edges = 0;
  for (Index i = 0; i < map.num_dofs(); ++i) {
    if (!map.is_constrained(i)) continue;
    EXPECT_EQ(map.constraint_value(i), 0.0);
    (map.dof(i).type == DofEntity::Vertex ? vertices : edges)++;
  }
  EXPECT_EQ(vertices, 16);
  EXPECT_EQ(edges, 16);
}

TEST(DofMap, EdgeDofsAreSharedWithOppositeSigns) {
  for (ElementKind kind : {ElementKind::Morley, ElementKind::Extended}) {
    const ReferenceElement elem = make_element(kind);
    const RectMesh mesh = build_uniform_mesh(unit_square, 3, 3);
    const DofMap map = build_dofmap(mesh, elem);
    std::map<Index, std::vector<int>> signs;
    for (Index c = 0; c < mesh.num_cells(); ++c) {
      const auto dofs = map.cell_dofs(c);
      ASSERT_EQ(static_cast<int>(dofs.size()), elem.dof_count());
      for (int k = 0; k < elem.dof_count(); ++k) {
        if (!elem.functional(k).is_edge_normal()) {
          EXPECT_EQ(dofs[k].sign, 1);
          continue;
        }
        const int e = elem.functional(k).entity;
        EXPECT_EQ(dofs[k].sign, (e == Right || e == Top) ? 1 : -1);
        signs[dofs[k].global].push_back(dofs[k].sign);
      }
    }
    for (const auto& [dof, s] : signs) {
      const Edge& edge = mesh.edge(map.dof(dof).entity);
      ASSERT_EQ(s.size(), static_cast<std::size_t>(edge.cell_count));
      if (s.size() == 2) EXPECT_EQ(s[0] + s[1], 0);
    }
  }
}

TEST(Interpolation, ReproducesQuadratics) {
  const RectMesh mesh = build_uniform_mesh(unit_square, 4, 4);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  const ScalarField u = quadratic();
  for (ElementKind kind : {ElementKind::Morley, ElementKind::Extended}) {
    const ReferenceElement elem = make_element(kind);
    DofMap map(mesh, elem);
    const Eigen::VectorXd v = interpolate(map, mesh, elem, u);
    for (Index cell = 0; cell < mesh.num_cells(); ++cell) {
      for (int k = 0; k < 5; ++k) {
        const Eigen::Vector2d ref(c(rng), c(rng));
        const ShapeValues s = evaluate_on_cell(map, mesh, elem, v, cell, ref);
        const Point x = mesh.cell(cell).geometry.map(ref);
        EXPECT_NEAR(s.value, u.value(x), 1e-11);
        EXPECT_LT((s.gradient - u.gradient(x)).norm(), 1e-10);
      }
    }
  }
}

TEST(Interpolation, EdgeFunctionalUsesGlobalNormal) {
  const RectMesh mesh = build_uniform_mesh(unit_square, 2, 2);
  const ReferenceElement elem = morley_element();
  const DofMap map(mesh, elem);
  const ScalarField u{[](const Point& x) { return 3 * x.x() - x.y(); },
                      [](const Point&) { return Eigen::Vector2d(3, -1); }};
  for (Index i = 0; i < map.num_dofs(); ++i) {
    if (map.dof(i).type != DofEntity::EdgeNormal) continue;
    const double expected = mesh.edge(map.dof(i).entity).axis == Axis::Y ? 3.0 : -1.0;
    EXPECT_NEAR(apply_global_functional(map, mesh, elem, i, u), expected, 1e-14);
  }
}

TEST(BilinearOperator, ReproducesBilinearFunctions) {
  const RectMesh mesh = build_uniform_mesh(unit_square, 4, 4);
  const ReferenceElement elem = morley_element();
  const DofMap map(mesh, elem);
  const ScalarField u{[](const Point& x) { return 1 + 2 * x.x() - x.y() + 4 * x.x() * x.y(); },
                      [](const Point& x) { return Eigen::Vector2d(2 + 4 * x.y(), -1 + 4 * x.x()); }};
  const Eigen::VectorXd v = interpolate(map, mesh, elem, u);
  const Eigen::VectorXd pi = bilinear_interpolant(map, mesh, v);
  ASSERT_EQ(pi.size(), mesh.num_vertices());
  for (Index c = 0; c < mesh.num_cells(); ++c) {
    const ShapeValues s = evaluate_bilinear(mesh, pi, c, Eigen::Vector2d(0, 0));
    EXPECT_NEAR(s.value, u.value(mesh.cell(c).geometry.center), 1e-12);
  }
}

TEST(BilinearOperator, CellMeanGradientIsPreserved) {
  const RectMesh mesh = build_uniform_mesh(unit_square, 4, 4);
  const ReferenceElement elem = morley_element();
  const DofMap map = build_dofmap(mesh, elem);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    EXPECT_LE(mean_gradient_defect(mesh, map, elem, random_free_vector(map, seed)), 1e-12);
  }
}

TEST(BoundaryConstraints, InhomogeneousDataUsesFunctionals) {
  const RectMesh mesh = build_uniform_mesh(unit_square, 4, 4);
  const ReferenceElement elem = morley_element();
  DofMap map(mesh, elem);
  const double eps = std::ldexp(1.0, -10);
  const ScalarField g{[eps](const Point& x) { return eps * std::exp(-x.x() / eps); },
                      [eps](const Point& x) { return Eigen::Vector2d(-std::exp(-x.x() / eps), 0); }};
  boundary_constraints(map, mesh, elem, &g);
  EXPECT_EQ(map.num_constrained(), 32);
  for (Index i = 0; i < map.num_dofs(); ++i) {
    if (!map.is_constrained(i)) continue;
    const GlobalDof& d = map.dof(i);
    if (d.type == DofEntity::Vertex) {
      EXPECT_DOUBLE_EQ(map.constraint_value(i), g.value(mesh.vertex(d.entity)));
    } else if (d.entity == mesh.vertical_edge(0, 0)) {
      EXPECT_NEAR(map.constraint_value(i), -1.0, 1e-12);
    } else if (mesh.edge(d.entity).axis == Axis::X && mesh.vertex(mesh.edge(d.entity).vertices[0]).x() == 0.0) {
      // mean of dg/dy over the first bottom/top edges is zero
      EXPECT_NEAR(map.constraint_value(i), 0.0, 1e-14);
    }
  }
}
