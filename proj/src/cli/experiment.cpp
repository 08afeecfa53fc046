#include "nlc/cli/experiment.hpp"

#include <cstdio>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "nlc/cli/spec_parser.hpp"
#include "nlc/solvers/solver.hpp"

namespace nlc {

std::map<std::string, double> ProblemConfig::params() const {
  if (kind == "cavity") {
    return {{"nx", static_cast<double>(cavity.nx)},
            {"ny", static_cast<double>(cavity.ny)},
            {"grashof", cavity.grashof},
            {"prandtl", cavity.prandtl},
            {"lidvelocity", cavity.lid_velocity}};
  }
  return {{"nx", static_cast<double>(plaplacian.nx)},
          {"ny", static_cast<double>(plaplacian.ny)},
          {"p", plaplacian.p},
          {"epsilon", plaplacian.epsilon},
          {"source", plaplacian.source},
          {"lambda", plaplacian.bratu_lambda}};
}

ProblemPtr make_problem(const ProblemConfig& config) {
  if (config.kind == "plaplacian") return std::make_shared<PLaplacianProblem>(config.plaplacian);
  if (config.kind == "cavity") return std::make_shared<CavityProblem>(config.cavity);
  throw ConfigError("unknown problem '" + config.kind + "' (expected plaplacian or cavity)");
}

std::string monitor_line(long iteration, double rnorm) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "It %ld rnorm %g", iteration, rnorm);
  return buf;
}

bool operator==(const ExperimentRecord& a, const ExperimentRecord& b) {
  const SolveStats &s = a.stats, &t = b.stats;
  return a.problem == b.problem && a.params == b.params && a.solver == b.solver && a.reason == b.reason &&
         s.nonlinear_its == t.nonlinear_its && s.linear_its == t.linear_its && s.func_evals == t.func_evals &&
         s.jac_evals == t.jac_evals && s.pc_applies == t.pc_applies && s.npc_applies == t.npc_applies &&
         s.wall_time == t.wall_time && s.history == t.history;
}

ExperimentRecord run_experiment(const ProblemConfig& config, const std::string& spec, const RunOptions& options,
                                Vector* solution) {
  SolverNode node = parse_solver(spec);
  if (options.rtol) node.rtol = *options.rtol;
  if (options.atol) node.atol = *options.atol;
  if (options.max_it) node.max_it = *options.max_it;
  node.validate();
  ProblemPtr problem = make_problem(config);
  auto solver = make_solver(node, problem);
  if (options.monitor) {
    std::ostream* out = options.monitor;
    solver->set_monitor([out](long it, double rnorm) { *out << monitor_line(it, rnorm) << '\n' << std::flush; });
  }
  ExperimentRecord rec;
  rec.problem = config.kind;
  rec.params = config.params();
  rec.solver = to_string(node);
  Vector x = problem->initial_guess();
  SolveOutcome out = solver->solve(x, rec.stats);
  rec.reason = out.reason;
  if (solution) *solution = std::move(x);
  return rec;
}

std::string emit_json(const ExperimentRecord& r) {
  nlohmann::ordered_json j;
  j["problem"] = r.problem;
  j["params"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.params) j["params"][k] = v;
  j["solver"] = r.solver;
  j["reason"] = to_string(r.reason);
  j["counters"] = {{"nit", r.stats.nonlinear_its}, {"lit", r.stats.linear_its}, {"func", r.stats.func_evals},
                   {"jac", r.stats.jac_evals},     {"pc", r.stats.pc_applies},  {"npc", r.stats.npc_applies}};
  j["wall_time_s"] = r.stats.wall_time;
  j["history"] = nlohmann::ordered_json::array();
  for (const auto& [it, rnorm] : r.stats.history) j["history"].push_back({it, rnorm});
  return j.dump(2) + "\n";
}

std::string emit_csv(const ExperimentRecord& r) {
  std::ostringstream out;
  out.precision(17);
  out << "it,rnorm\n";
  for (const auto& [it, rnorm] : r.stats.history) out << it << ',' << rnorm << '\n';
  return out.str();
}

ExperimentRecord parse_json(const std::string& text) {
  ExperimentRecord r;
  try {
    const auto j = nlohmann::json::parse(text);
    r.problem = j.at("problem").get<std::string>();
    for (const auto& [k, v] : j.at("params").items()) r.params[k] = v.get<double>();
    r.solver = j.at("solver").get<std::string>();
    r.reason = reason_from_string(j.at("reason").get<std::string>());
    const auto& c = j.at("counters");
    r.stats.nonlinear_its = c.at("nit").get<long>();
    r.stats.linear_its = c.at("lit").get<long>();
    r.stats.func_evals = c.at("func").get<long>();
    r.stats.jac_evals = c.at("jac").get<long>();
    r.stats.pc_applies = c.at("pc").get<long>();
    r.stats.npc_applies = c.at("npc").get<long>();
    r.stats.wall_time = j.at("wall_time_s").get<double>();
    for (const auto& h : j.at("history")) r.stats.history.emplace_back(h.at(0).get<int>(), h.at(1).get<double>());
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed experiment record: ") + e.what());
  }
  return r;
}

}  // namespace nlc
