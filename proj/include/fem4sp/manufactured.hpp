// Closed-form exact solutions and the matching sources.
#ifndef FEM4SP_MANUFACTURED_HPP
#define FEM4SP_MANUFACTURED_HPP

#include "fem4sp/assembly.hpp"
#include "fem4sp/element.hpp"

#include <Eigen/Core>

#include <functional>
#include <string_view>

namespace fem4sp {

enum class ExampleId { Smooth, Layer };

std::string_view to_string(ExampleId id);
ExampleId parse_example(std::string_view name);

struct ManufacturedSolution {
  std::function<double(const Point&)> u;
  std::function<Eigen::Vector2d(const Point&)> gradient;
  std::function<Eigen::Matrix2d(const Point&)> hessian;
  std::function<double(const Point&)> laplacian;
  std::function<double(const Point&)> bilaplacian;
  /// Matches the mode: eps^2 bilap - lap, -lap, or bilap.
  std::function<double(const Point&)> source;
  /// u and du/dn vanish on the boundary of the unit square.
  bool homogeneous_bc = true;

  ScalarField field() const { return {u, gradient}; }
};

/// u = sin^2(pi x) sin^2(pi y) on the unit square.
ManufacturedSolution example_smooth(double epsilon, Mode mode);

/// u = eps (exp(-x/eps) + exp(-y/eps)) - x^2 y, whose source is 2y for every eps > 0.
ManufacturedSolution example_layer(double epsilon);

ManufacturedSolution make_example(ExampleId id, double epsilon, Mode mode);

}  // namespace fem4sp

#endif  // FEM4SP_MANUFACTURED_HPP
