#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "nlc/core/problem.hpp"
#include "nlc/core/stats.hpp"
#include "nlc/problems/cavity.hpp"
#include "nlc/problems/plaplacian.hpp"

namespace nlc {

struct ProblemConfig {
  std::string kind = "plaplacian";  // plaplacian | cavity
  PLaplacianParams plaplacian;
  CavityParams cavity;

  /// Numeric parameters of the selected problem, keyed by CLI flag name.
  std::map<std::string, double> params() const;
};

/// Builds the problem. Throws ConfigError for an unknown kind or invalid parameters.
ProblemPtr make_problem(const ProblemConfig& config);

struct RunOptions {
  std::optional<double> rtol, atol;
  std::optional<int> max_it;
  std::ostream* monitor = nullptr;  // receives "It <k> rnorm <value>" lines when set
};

struct ExperimentRecord {
  std::string problem;
  std::map<std::string, double> params;
  std::string solver;  // canonical spec
  ConvergedReason reason = ConvergedReason::iterating;
  SolveStats stats;

  /// Equality over every serialized field.
  friend bool operator==(const ExperimentRecord& a, const ExperimentRecord& b);
};

/// Parses the spec, applies the convergence overrides to the outermost solver, solves from the
/// problem's initial guess and returns the record. Solver divergence is a normal outcome.
ExperimentRecord run_experiment(const ProblemConfig& config, const std::string& spec, const RunOptions& options,
                                Vector* solution = nullptr);

/// "It <k> rnorm <value>" with the value in %g format.
std::string monitor_line(long iteration, double rnorm);

std::string emit_json(const ExperimentRecord& record);
std::string emit_csv(const ExperimentRecord& record);
/// Inverse of emit_json. Throws std::invalid_argument on malformed input.
ExperimentRecord parse_json(const std::string& text);

}  // namespace nlc
