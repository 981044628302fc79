#include <gtest/gtest.h>

#include "fem4sp/element.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>

#include <array>
#include <cmath>
#include <random>

using namespace fem4sp;

namespace {

// The eight Morley basis functions as printed, in the order q1..q8.
double printed_q(int i, double h1, double h2, double x, double y) {
  const double cx = x * (x * x - 1) / 8, cy = y * (y * y - 1) / 8;
  switch (i) {
    case 1: return (1 - x) * (1 - y) / 4 + cx + cy;
    case 2: return (1 + x) * (1 - y) / 4 - cx + cy;
    case 3: return (1 + x) * (1 + y) / 4 - cx - cy;
    case 4: return (1 - x) * (1 + y) / 4 + cx - cy;
    case 5: return h1 / 4 * (x + 1) * (x + 1) * (x - 1);
    case 6: return -h1 / 4 * (x + 1) * (x - 1) * (x - 1);
    case 7: return h2 / 4 * (y + 1) * (y + 1) * (y - 1);
    case 8: return -h2 / 4 * (y + 1) * (y - 1) * (y - 1);
  }
  return NAN;
}

// Local slot -> printed index: vertices, then right, top, left, bottom.
constexpr std::array<int, 8> kPrintedIndex{1, 2, 3, 4, 5, 7, 6, 8};

CellGeometry random_geometry(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> w(0.05, 2.0), c(-1.0, 1.0);
  return {Point(c(rng), c(rng)), Eigen::Vector2d(w(rng), w(rng))};
}

}  // namespace

TEST(MorleyElement, MatchesPrintedBasis) {
  const ReferenceElement elem = morley_element();
  ASSERT_EQ(elem.dof_count(), 8);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0), w(0.05, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Vector2d hw(w(rng), w(rng));
    const Eigen::Vector2d ref(u(rng), u(rng));
    const auto shapes = elem.evaluate(hw, ref);
    for (int i = 0; i < 8; ++i) {
      EXPECT_NEAR(shapes[i].value, printed_q(kPrintedIndex[i], hw.x(), hw.y(), ref.x(), ref.y()), 1e-14);
    }
  }
}

TEST(MorleyElement, NodalityOnAnyGeometry) {
  const ReferenceElement elem = morley_element();
  std::mt19937_64 rng(3);
  std::vector<CellGeometry> geoms{{Point(0, 0), Eigen::Vector2d(1, 1)}};
  for (int k = 0; k < 5; ++k) geoms.push_back(random_geometry(rng));
  for (const CellGeometry& g : geoms) {
    const Eigen::MatrixXd m = nodality_matrix(elem, g);
    EXPECT_LT((m - Eigen::MatrixXd::Identity(8, 8)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NO_THROW(check_nodality(elem, g));
  }
}

TEST(MorleyElement, CenterValueOfVertexFunction) {
  const auto shapes = morley_element().evaluate(Eigen::Vector2d(0.125, 0.125), Eigen::Vector2d(0, 0));
  EXPECT_NEAR(shapes[2].value, 0.25, 1e-15);
}

TEST(MorleyElement, EdgeFunctionHasUnitNormalDerivative) {
  const auto shapes = morley_element().evaluate(Eigen::Vector2d(0.125, 0.125), Eigen::Vector2d(1, 0));
  EXPECT_NEAR(shapes[Right + 4].gradient.x(), 1.0, 1e-14);
}

TEST(MorleyElement, VertexFunctionsFormPartitionOfUnity) {
  const ReferenceElement elem = morley_element();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 25; ++k) {
    const auto shapes = elem.evaluate(Eigen::Vector2d(0.3, 0.7), Eigen::Vector2d(u(rng), u(rng)));
    double value = 0.0;
    Eigen::Matrix2d hess = Eigen::Matrix2d::Zero();
    for (int i = 0; i < 4; ++i) {
      value += shapes[i].value;
      hess += shapes[i].hessian;
    }
    EXPECT_NEAR(value, 1.0, 1e-14);
    EXPECT_LT(hess.cwiseAbs().maxCoeff(), 1e-13);
  }
}

TEST(MorleyElement, ConstantHasTrivialDofs) {
  const CellGeometry g{Point(0.4, 0.2), Eigen::Vector2d(0.1, 0.3)};
  const ScalarField one{[](const Point&) { return 1.0; }, [](const Point&) { return Eigen::Vector2d(0, 0); }};
  Eigen::VectorXd expected(8);
  expected << 1, 1, 1, 1, 0, 0, 0, 0;
  EXPECT_LT((apply_dofs(morley_element(), g, one) - expected).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(MorleyElement, ShapeScalingIsLinearInCellSize) {
  const ReferenceElement elem = morley_element();
  const Eigen::Vector2d ref(0.2, -0.4);
  const auto a = elem.evaluate(Eigen::Vector2d(0.1, 0.2), ref);
  const auto b = elem.evaluate(Eigen::Vector2d(0.3, 0.2), ref);
  EXPECT_NEAR(b[Right + 4].value, 3 * a[Right + 4].value, 1e-15);
  EXPECT_NEAR(b[Top + 4].value, a[Top + 4].value, 1e-15);
}

TEST(MorleyElement, ChainRuleMatchesFiniteDifferences) {
  const ReferenceElement elem = morley_element();
  const CellGeometry g{Point(0.5, 0.5), Eigen::Vector2d(0.2, 0.35)};
  const Eigen::Vector2d ref(0.1, 0.6);
  const double d = 1e-5;
  for (int i = 0; i < 8; ++i) {
    const ScalarField f = shape_field(elem, g, i);
    const Point x = g.map(ref);
    const double fx = (f.value(x + Point(d, 0)) - f.value(x - Point(d, 0))) / (2 * d);
    const double fy = (f.value(x + Point(0, d)) - f.value(x - Point(0, d))) / (2 * d);
    const auto s = elem.evaluate(g.half_widths, ref);
    EXPECT_NEAR(s[i].gradient.x(), fx, 1e-8);
    EXPECT_NEAR(s[i].gradient.y(), fy, 1e-8);
    const double fxy = (f.gradient(x + Point(0, d)).x() - f.gradient(x - Point(0, d)).x()) / (2 * d);
    EXPECT_NEAR(s[i].hessian(0, 1), fxy, 1e-6);
  }
}

TEST(ExtendedElement, ReducedEdgeMatrixMatchesPrintedMatrix) {
  Eigen::Matrix4d printed;
  printed << -8, 8, 0, -8,
             -8, 1.6, 8, -8,
             -8, 8, 0, 8,
             -8, 1.6, -8, 8;
  printed /= 3.0;
  EXPECT_LT((reduced_edge_integral_matrix() - printed).cwiseAbs().maxCoeff(), 1e-13);
  EXPECT_GT(std::abs(printed.determinant()), 1e-3);
}

TEST(ExtendedElement, VandermondeIsWellConditioned) {
  for (ExtendedVariant v : {ExtendedVariant::Primary, ExtendedVariant::Alt}) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(extended_vandermonde(v));
    const auto& s = svd.singularValues();
    EXPECT_LT(s(0) / s(s.size() - 1), 1e6);
    EXPECT_LT(extended_element(v).vandermonde_condition(), 1e6);
  }
}

TEST(ExtendedElement, ZeroFunctionalsOnlyForZero) {
  Eigen::FullPivLU<Eigen::MatrixXd> lu(extended_vandermonde(ExtendedVariant::Primary));
  EXPECT_EQ(lu.rank(), 12);
}

TEST(ExtendedElement, NodalityOnAnyGeometry) {
  std::mt19937_64 rng(5);
  for (ElementKind kind : {ElementKind::Extended, ElementKind::ExtendedAlt}) {
    const ReferenceElement elem = make_element(kind);
    ASSERT_EQ(elem.dof_count(), 12);
    for (int k = 0; k < 4; ++k) {
      const Eigen::MatrixXd m = nodality_matrix(elem, random_geometry(rng));
      EXPECT_LT((m - Eigen::MatrixXd::Identity(12, 12)).cwiseAbs().maxCoeff(), 1e-10);
    }
  }
}

TEST(ExtendedElement, ReconstructsSpanFunctions) {
  const ReferenceElement elem = extended_element();
  const CellGeometry g{Point(0.1, 0.9), Eigen::Vector2d(0.25, 0.4)};
  const auto phi = enrichment_functions(ExtendedVariant::Primary);
  // A member of the span written in reference coordinates.
  const BiPoly<double> target = phi[0] * 0.7 - phi[2] * 1.3 + BiPoly<double>::monomial(2, 2, 0.5) +
                                BiPoly<double>::monomial(1, 0, -2.0) + 0.25;
  const ScalarField u{[&](const Point& x) { return target(g.to_reference(x)); },
                      [&](const Point& x) {
                        const Eigen::Vector2d r = g.to_reference(x);
                        return Eigen::Vector2d(target.d_xi()(r) / g.half_widths.x(),
                                               target.d_eta()(r) / g.half_widths.y());
                      }};
  const Eigen::VectorXd dofs = apply_dofs(elem, g, u);
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  for (int k = 0; k < 20; ++k) {
    const Eigen::Vector2d ref(c(rng), c(rng));
    EXPECT_NEAR(evaluate_local(elem, g.half_widths, dofs, ref).value, target(ref), 1e-11);
  }
}

TEST(ExtendedElement, EdgeTracesAreQuadratic) {
  const ReferenceElement elem = extended_element();
  const Eigen::Vector2d hw(0.3, 0.2);
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  Eigen::VectorXd dofs(12);
  for (int i = 0; i < 12; ++i) dofs[i] = c(rng);
  for (int e = 0; e < 4; ++e) {
    const auto [a, b] = reference::kEdgeVertices[e];
    const Eigen::Vector2d pa = reference::kVertices[a], pb = reference::kVertices[b];
    const double va = dofs[a], vb = dofs[b], vm = dofs[4 + e];
    for (int k = 0; k < 10; ++k) {
      const double t = -1.0 + 2.0 * (k + 0.5) / 10;
      const Eigen::Vector2d p = 0.5 * (1 - t) * pa + 0.5 * (1 + t) * pb;
      const double quad = va * t * (t - 1) / 2 + vb * t * (t + 1) / 2 + vm * (1 - t * t);
      EXPECT_NEAR(evaluate_local(elem, hw, dofs, p).value, quad, 1e-11) << "edge " << e;
    }
  }
}

TEST(ElementKind, NamesRoundTrip) {
  for (ElementKind k : {ElementKind::Morley, ElementKind::Extended, ElementKind::ExtendedAlt}) {
    EXPECT_EQ(parse_element_kind(to_string(k)), k);
  }
  EXPECT_THROW(parse_element_kind("argyris"), std::invalid_argument);
}
