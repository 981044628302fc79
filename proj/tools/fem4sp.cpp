// fem4sp: convergence studies and assumption checks for rectangular Morley-type
// elements applied to eps^2 Delta^2 u - Delta u = f.
#include "fem4sp/output.hpp"
#include "fem4sp/study.hpp"
#include "fem4sp/verify.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitVerificationFailed = 1;
constexpr int kExitBadParameters = 2;

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

struct RunOptions {
  std::string element = "morley";
  std::string example = "smooth";
  std::string modes;
  std::optional<std::string> scheme;
  std::string epsilons = "2^0,2^-2,2^-4,2^-6,2^-8,2^-10";
  std::string ns = "4,8,16,32";
  std::optional<int> quad;
  std::string solver = "direct";
  double tol = fem4sp::kDefaultSolverTolerance;
  bool layer_refine = false;
  std::string out = "-";
  std::string format = "csv";
  bool verbose = false;
};

fem4sp::ExperimentConfig make_config(const RunOptions& o) {
  using namespace fem4sp;
  ExperimentConfig c = table_config(parse_element_kind(o.element), parse_example(o.example));
  if (!o.modes.empty()) {
    c.modes.clear();
    for (const std::string& m : split(o.modes)) c.modes.push_back(parse_mode(m));
  }
  if (o.scheme) c.scheme = parse_scheme(*o.scheme);
  if (o.quad) c.quad_order = *o.quad;
  c.epsilons = parse_epsilon_list(o.epsilons);
  c.ns.clear();
  for (const std::string& n : split(o.ns)) {
    std::size_t used = 0;
    const int v = std::stoi(n, &used);
    if (used != n.size()) throw std::invalid_argument("cannot parse n value '" + n + "'");
    c.ns.push_back(v);
  }
  c.solver = parse_solver_method(o.solver);
  c.tol = o.tol;
  c.layer_refine = o.layer_refine;
  c.validate();
  return c;
}

void print_rates(const std::vector<fem4sp::StudyRow>& rows) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (i > 0 && rows[i - 1].mode == r.mode && rows[i - 1].epsilon == r.epsilon) continue;
    if (!r.rate) continue;
    std::fprintf(stderr, "%-10s eps=%-8s rate %.3f  last-pair %.3f  least-squares %.3f\n",
                 std::string(fem4sp::to_string(r.mode)).c_str(), fem4sp::format_epsilon(r.epsilon).c_str(), *r.rate,
                 *r.last_pair_rate, *r.least_squares_rate);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rectangular Morley and extended Morley elements for eps^2 Delta^2 u - Delta u = f"};
  app.require_subcommand(1);

  RunOptions run;
  CLI::App* run_cmd = app.add_subcommand("run", "Run a convergence study");
  run_cmd->add_option("--element", run.element, "morley | extended | extended-alt")->capture_default_str();
  run_cmd->add_option("--example", run.example, "smooth | layer")->capture_default_str();
  run_cmd->add_option("--mode", run.modes,
                      "Comma list of full | poisson | biharmonic (default: all three for smooth, full for layer)");
  run_cmd->add_option("--scheme", run.scheme, "standard | modified (default: table setting for the element/example)");
  run_cmd->add_option("--epsilon", run.epsilons, "Comma list, e.g. 2^-6,0.25")->capture_default_str();
  run_cmd->add_option("--n", run.ns, "Comma list of cells per axis (increasing powers of two)")->capture_default_str();
  run_cmd->add_option("--quad", run.quad, "Gauss points per axis (default: table setting, 2 for Morley/smooth, else 3)");
  run_cmd->add_option("--solver", run.solver, "direct | cg")->capture_default_str();
  run_cmd->add_option("--tol", run.tol, "Relative residual tolerance")->capture_default_str();
  run_cmd->add_flag("--layer-refine", run.layer_refine, "Subdivide boundary cells when integrating errors");
  run_cmd->add_option("--out", run.out, "Output path, '-' for stdout")->capture_default_str();
  run_cmd->add_option("--format", run.format, "csv | table")->capture_default_str();
  run_cmd->add_flag("--verbose", run.verbose, "Print last-pair and least-squares rates to stderr");

  std::string verify_element = "morley";
  int verify_n = 4;
  std::uint64_t verify_seed = 42;
  CLI::App* verify_cmd = app.add_subcommand("verify", "Check the element construction assumptions");
  verify_cmd->add_option("--element", verify_element, "morley | extended | extended-alt")->capture_default_str();
  verify_cmd->add_option("--n", verify_n, "Cells per axis")->capture_default_str();
  verify_cmd->add_option("--seed", verify_seed, "Seed for random test functions")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitBadParameters;
  }

  try {
    if (*run_cmd) {
      fem4sp::ExperimentConfig config;
      fem4sp::OutputFormat format;
      try {
        config = make_config(run);
        format = fem4sp::parse_output_format(run.format);
      } catch (const std::invalid_argument& e) {
        std::cerr << "fem4sp: " << e.what() << '\n';
        return kExitBadParameters;
      }
      const auto rows = fem4sp::run_study(config);
      if (run.verbose) print_rates(rows);
      fem4sp::write_output(rows, format, run.out);
      return 0;
    }
    if (*verify_cmd) {
      fem4sp::ElementKind kind;
      try {
        kind = fem4sp::parse_element_kind(verify_element);
        if (verify_n < 2) throw std::invalid_argument("--n must be at least 2");
      } catch (const std::invalid_argument& e) {
        std::cerr << "fem4sp: " << e.what() << '\n';
        return kExitBadParameters;
      }
      const auto report = fem4sp::verify_assumptions(kind, verify_n, verify_seed);
      fem4sp::print_report(report, std::cout);
      return report.passed() ? 0 : kExitVerificationFailed;
    }
  } catch (const std::exception& e) {
    std::cerr << "fem4sp: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
