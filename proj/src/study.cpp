#include "fem4sp/study.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace fem4sp {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse number '" + s + "'");
  }
  if (used != s.size()) throw std::invalid_argument("cannot parse number '" + s + "'");
  return v;
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

struct MeshLevel {
  RectMesh mesh;
  DofMap dofmap;
  GlobalOperators ops;
};

CaseResult solve_on_level(const MeshLevel& level, const ReferenceElement& elem, const CaseSpec& spec,
                          const QuadRule& rule) {
  const ManufacturedSolution exact = make_example(spec.example, spec.epsilon, spec.mode);
  DofMap dofmap = level.dofmap;
  if (!exact.homogeneous_bc) {
    const ScalarField g = exact.field();
    boundary_constraints(dofmap, level.mesh, elem, &g);
  }
  const Eigen::VectorXd load = assemble_load(level.mesh, dofmap, elem, exact.source, spec.scheme, rule);
  const LinearSystem system = reduce_system(level.ops, load, dofmap, spec.epsilon, spec.mode);
  SolveReport solve = solve_spd(system, spec.solver, spec.tol);
  Eigen::VectorXd uh = expand_solution(system, solve.solution);
  const ErrorReport error =
      energy_error(level.mesh, dofmap, elem, uh, exact, spec.epsilon, spec.mode, rule, spec.layer_refine);
  return {level.mesh, elem, std::move(dofmap), std::move(uh), std::move(solve), error};
}

MeshLevel make_level(const ReferenceElement& elem, int n, const QuadRule& rule) {
  RectMesh mesh = build_uniform_mesh(unit_square, n, n);
  DofMap dofmap = build_dofmap(mesh, elem);
  GlobalOperators ops = assemble_operators(mesh, dofmap, elem, rule);
  return {std::move(mesh), std::move(dofmap), std::move(ops)};
}

std::string case_context(const CaseSpec& spec) {
  std::ostringstream s;
  s << to_string(spec.element) << "/" << to_string(spec.example) << "/" << to_string(spec.mode)
    << " eps=" << format_epsilon(spec.epsilon) << " n=" << spec.n;
  return s.str();
}

}  // namespace

double parse_epsilon(std::string_view text) {
  const std::string s = trim(text);
  if (s.empty()) throw std::invalid_argument("empty epsilon value");
  double v = 0.0;
  if (const auto caret = s.find('^'); caret != std::string::npos) {
    const double base = parse_double(trim(s.substr(0, caret)));
    const double exponent = parse_double(trim(s.substr(caret + 1)));
    v = std::pow(base, exponent);
  } else {
    v = parse_double(s);
  }
  if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
    throw std::invalid_argument("epsilon '" + s + "' must lie in [0, 1]");
  }
  return v;
}

std::vector<double> parse_epsilon_list(std::string_view text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    out.push_back(parse_epsilon(piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string format_epsilon(double epsilon) {
  if (epsilon > 0.0) {
    int exp = 0;
    const double mant = std::frexp(epsilon, &exp);
    if (mant == 0.5) return "2^" + std::to_string(exp - 1);
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", epsilon);
  return buf;
}

TableSettings table_settings(ElementKind element, ExampleId example) {
  if (element == ElementKind::Morley && example == ExampleId::Smooth) return {Scheme::Modified, 2};
  return {Scheme::Standard, 3};
}

ExperimentConfig table_config(ElementKind element, ExampleId example) {
  ExperimentConfig c;
  c.element = element;
  c.example = example;
  if (example == ExampleId::Smooth) c.modes = {Mode::Full, Mode::Poisson, Mode::Biharmonic};
  const TableSettings s = table_settings(element, example);
  c.scheme = s.scheme;
  c.quad_order = s.quad_order;
  return c;
}

void ExperimentConfig::validate() const {
  if (modes.empty()) throw std::invalid_argument("at least one mode is required");
  const bool has_full = std::ranges::find(modes, Mode::Full) != modes.end();
  if (has_full && epsilons.empty()) throw std::invalid_argument("epsilon list is empty");
  for (double e : epsilons) {
    if (!(e >= 0.0 && e <= 1.0)) throw std::invalid_argument("epsilon values must lie in [0, 1]");
    if (example == ExampleId::Layer && e == 0.0) {
      throw std::invalid_argument("the layer example needs epsilon > 0");
    }
  }
  if (example == ExampleId::Layer && (modes.size() != 1 || modes.front() != Mode::Full)) {
    throw std::invalid_argument("the layer example is only defined in full mode");
  }
  if (ns.empty()) throw std::invalid_argument("n list is empty");
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (!is_power_of_two(ns[i])) throw std::invalid_argument("n values must be powers of two");
    if (i > 0 && ns[i] <= ns[i - 1]) throw std::invalid_argument("n values must be strictly increasing");
  }
  if (quad_order < 1 || quad_order > kMaxGaussPoints) throw std::invalid_argument("quadrature order must lie in [1, 16]");
  if (!(tol > 0.0 && tol <= 1e-6)) throw std::invalid_argument("solver tolerance must lie in (0, 1e-6]");
}

CaseResult solve_case(const CaseSpec& spec) {
  const ReferenceElement elem = make_element(spec.element);
  const QuadRule rule = gauss_rule(spec.quad_order);
  const MeshLevel level = make_level(elem, spec.n, rule);
  try {
    return solve_on_level(level, elem, spec, rule);
  } catch (const std::exception& e) {
    throw std::runtime_error(case_context(spec) + ": " + e.what());
  }
}

std::vector<StudyRow> run_study(const ExperimentConfig& config) {
  config.validate();
  const ReferenceElement elem = make_element(config.element);
  const QuadRule rule = gauss_rule(config.quad_order);

  // (mode, eps) groups in table order.
  std::vector<std::pair<Mode, double>> groups;
  for (Mode mode : {Mode::Full, Mode::Poisson, Mode::Biharmonic}) {
    if (std::ranges::find(config.modes, mode) == config.modes.end()) continue;
    if (mode == Mode::Full) {
      std::vector<double> eps = config.epsilons;
      std::ranges::sort(eps, std::greater<>());
      eps.erase(std::unique(eps.begin(), eps.end()), eps.end());
      for (double e : eps) groups.emplace_back(mode, e);
    } else {
      groups.emplace_back(mode, 0.0);
    }
  }

  std::vector<std::vector<StudyRow>> by_group(groups.size());
  for (int n : config.ns) {
    const MeshLevel level = make_level(elem, n, rule);
    for (std::size_t g = 0; g < groups.size(); ++g) {
      CaseSpec spec;
      spec.element = config.element;
      spec.example = config.example;
      spec.mode = groups[g].first;
      spec.scheme = config.scheme;
      spec.epsilon = groups[g].second;
      spec.n = n;
      spec.quad_order = config.quad_order;
      spec.solver = config.solver;
      spec.tol = config.tol;
      spec.layer_refine = config.layer_refine;
      CaseResult result = [&] {
        try {
          return solve_on_level(level, elem, spec, rule);
        } catch (const std::exception& e) {
          throw std::runtime_error(case_context(spec) + ": " + e.what());
        }
      }();
      by_group[g].push_back({config.element, config.example, spec.mode, config.scheme, spec.epsilon, n,
                             1.0 / n, result.dofmap.num_free(), result.error.relative_energy_error,
                             std::nullopt, std::nullopt, std::nullopt});
    }
  }

  std::vector<StudyRow> rows;
  for (auto& group : by_group) {
    if (group.size() >= 2) {
      std::vector<double> errors, hs;
      for (const StudyRow& r : group) {
        errors.push_back(r.relative_error);
        hs.push_back(r.h);
      }
      const bool positive = std::ranges::all_of(errors, [](double e) { return e > 0.0; });
      if (positive) {
        const double rate = fit_rate(errors, hs);
        const double last = last_pair_rate(errors, hs);
        const double ls = fit_rate_least_squares(errors, hs);
        for (StudyRow& r : group) {
          r.rate = rate;
          r.last_pair_rate = last;
          r.least_squares_rate = ls;
        }
      }
    }
    rows.insert(rows.end(), group.begin(), group.end());
  }
  return rows;
}

}  // namespace fem4sp
