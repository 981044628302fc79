#include "fem4sp/manufactured.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fem4sp {

std::string_view to_string(ExampleId id) { return id == ExampleId::Smooth ? "smooth" : "layer"; }

ExampleId parse_example(std::string_view name) {
  if (name == "smooth") return ExampleId::Smooth;
  if (name == "layer") return ExampleId::Layer;
  throw std::invalid_argument("unknown example '" + std::string(name) + "'");
}

namespace {

constexpr double kPi = std::numbers::pi;

// s(t) = sin^2(pi t) and its derivatives.
struct SinSquared {
  static double d0(double t) {
    const double s = std::sin(kPi * t);
    return s * s;
  }
  static double d1(double t) { return kPi * std::sin(2 * kPi * t); }
  static double d2(double t) { return 2 * kPi * kPi * std::cos(2 * kPi * t); }
  static double d4(double t) { return -8 * kPi * kPi * kPi * kPi * std::cos(2 * kPi * t); }
};

}  // namespace

ManufacturedSolution example_smooth(double epsilon, Mode mode) {
  using S = SinSquared;
  ManufacturedSolution m;
  m.u = [](const Point& p) { return S::d0(p.x()) * S::d0(p.y()); };
  m.gradient = [](const Point& p) {
    return Eigen::Vector2d(S::d1(p.x()) * S::d0(p.y()), S::d0(p.x()) * S::d1(p.y()));
  };
  m.hessian = [](const Point& p) {
    const double x = p.x(), y = p.y();
    Eigen::Matrix2d h;
    h << S::d2(x) * S::d0(y), S::d1(x) * S::d1(y), S::d1(x) * S::d1(y), S::d0(x) * S::d2(y);
    return h;
  };
  m.laplacian = [](const Point& p) { return S::d2(p.x()) * S::d0(p.y()) + S::d0(p.x()) * S::d2(p.y()); };
  m.bilaplacian = [](const Point& p) {
    const double x = p.x(), y = p.y();
    return S::d4(x) * S::d0(y) + 2 * S::d2(x) * S::d2(y) + S::d0(x) * S::d4(y);
  };
  const double e2 = epsilon * epsilon;
  switch (mode) {
    case Mode::Full:
      m.source = [e2, lap = m.laplacian, bilap = m.bilaplacian](const Point& p) { return e2 * bilap(p) - lap(p); };
      break;
    case Mode::Poisson:
      m.source = [lap = m.laplacian](const Point& p) { return -lap(p); };
      break;
    case Mode::Biharmonic:
      m.source = m.bilaplacian;
      break;
  }
  m.homogeneous_bc = true;
  return m;
}

ManufacturedSolution example_layer(double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("example_layer: epsilon must be positive");
  const double e = epsilon;
  ManufacturedSolution m;
  m.u = [e](const Point& p) {
    return e * (std::exp(-p.x() / e) + std::exp(-p.y() / e)) - p.x() * p.x() * p.y();
  };
  m.gradient = [e](const Point& p) {
    return Eigen::Vector2d(-std::exp(-p.x() / e) - 2 * p.x() * p.y(), -std::exp(-p.y() / e) - p.x() * p.x());
  };
  m.hessian = [e](const Point& p) {
    Eigen::Matrix2d h;
    h << std::exp(-p.x() / e) / e - 2 * p.y(), -2 * p.x(), -2 * p.x(), std::exp(-p.y() / e) / e;
    return h;
  };
  m.laplacian = [e](const Point& p) { return (std::exp(-p.x() / e) + std::exp(-p.y() / e)) / e - 2 * p.y(); };
  m.bilaplacian = [e](const Point& p) { return (std::exp(-p.x() / e) + std::exp(-p.y() / e)) / (e * e * e); };
  m.source = [](const Point& p) { return 2 * p.y(); };
  m.homogeneous_bc = false;
  return m;
}

ManufacturedSolution make_example(ExampleId id, double epsilon, Mode mode) {
  if (id == ExampleId::Smooth) return example_smooth(epsilon, mode);
  if (mode != Mode::Full) throw std::invalid_argument("the layer example is only defined in full mode");
  return example_layer(epsilon);
}

}  // namespace fem4sp
