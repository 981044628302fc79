#include "fem4sp/quadrature.hpp"

namespace fem4sp {

QuadRule gauss_rule(int p) {
  const GaussRule1D<double> line = gauss_legendre<double>(p);
  QuadRule rule;
  rule.order = p;
  rule.points.reserve(static_cast<std::size_t>(p * p));
  rule.weights.reserve(static_cast<std::size_t>(p * p));
  for (int j = 0; j < p; ++j) {
    for (int i = 0; i < p; ++i) {
      rule.points.emplace_back(line.nodes[i], line.nodes[j]);
      rule.weights.push_back(line.weights[i] * line.weights[j]);
    }
  }
  return rule;
}

}  // namespace fem4sp
