#include <gtest/gtest.h>

#include <sstream>

#include "nlc/cli/experiment.hpp"
#include "nlc/cli/presets.hpp"
#include "nlc/cli/spec_parser.hpp"

using namespace nlc;

TEST(SpecParser, NewtonWithMultigridPreconditioner) {
  const SolverNode node = parse_solver("newton(lpc=mg(levels=5,smoother=sor),ls=bt)");
  EXPECT_EQ(node.kind, SolverKind::newton);
  ASSERT_TRUE(node.lpc.has_value());
  EXPECT_EQ(node.lpc->kind, LinearPcKind::mg);
  EXPECT_EQ(node.lpc->levels, 5);
  EXPECT_EQ(node.lpc->smoother, "sor");
  EXPECT_EQ(node.ls, LineSearchKind::bt);
}

TEST(SpecParser, TunedAndersonShape) {
  const SolverNode node =
      parse_solver("anderson(rp=fas(levels=4,smoother=gsn(sweeps=6),coarse=newton(lpc=lu,max_it=5)),m=30)");
  EXPECT_EQ(node.kind, SolverKind::anderson);
  EXPECT_EQ(node.m, 30);
  ASSERT_TRUE(node.rp);
  EXPECT_EQ(node.rp->kind, SolverKind::fas);
  EXPECT_EQ(node.rp->levels, 4);
  ASSERT_TRUE(node.rp->smoother);
  EXPECT_EQ(node.rp->smoother->kind, SolverKind::gsn);
  EXPECT_EQ(node.rp->smoother->sweeps, 6);
  ASSERT_TRUE(node.rp->coarse);
  EXPECT_EQ(node.rp->coarse->max_it, 5);
  EXPECT_EQ(node.rp->coarse->lpc->kind, LinearPcKind::lu);
}

TEST(SpecParser, TruncatedInputReportsPosition) {
  try {
    parse_solver("newton(lpc=");
    FAIL() << "expected a parse error";
  } catch (const SpecError& e) {
    EXPECT_EQ(e.position(), 12u);
  }
}

TEST(SpecParser, UnknownNamesSuggestClosestMatch) {
  try {
    parse_solver("newtn");
    FAIL() << "expected an error";
  } catch (const SpecError& e) {
    EXPECT_NE(e.message().find("newton"), std::string::npos) << e.message();
  }
  try {
    parse_solver("newton(lpcc=lu)");
    FAIL() << "expected an error";
  } catch (const SpecError& e) {
    EXPECT_NE(e.message().find("lpc"), std::string::npos) << e.message();
    EXPECT_EQ(e.position(), 8u);
  }
}

TEST(SpecParser, StructuralErrors) {
  EXPECT_THROW(parse_solver("newton(lpc=lu) extra"), SpecError);
  EXPECT_THROW(parse_solver("anderson(m=0)"), ConfigError);
  EXPECT_THROW(parse_solver("newton(lp=ras,rp=gsn)"), ConfigError);
  EXPECT_THROW(parse_solver("newton(max_it=abc)"), SpecError);
}

TEST(SpecParser, CanonicalTextRoundTrips) {
  for (const char* text : {"newton(lpc=mg(levels=5,smoother=sor),ls=bt)", "nrich(lp=ras,ls=cp)",
                           "composite(type=multiplicative,ras,newton(lpc=asm))",
                           "anderson(rp=fas(levels=4,smoother=gsn(sweeps=6),coarse=newton(lpc=lu,max_it=5)),m=30)"}) {
    const SolverNode node = parse_solver(text);
    const std::string canonical = to_string(node);
    EXPECT_EQ(parse_solver(canonical), node) << canonical;
    EXPECT_EQ(to_string(parse_solver(canonical)), canonical);
  }
}

TEST(SpecParser, Levenshtein) {
  EXPECT_EQ(levenshtein("kitten", "sitting"), 3u);
  EXPECT_EQ(levenshtein("", "abc"), 3u);
  EXPECT_EQ(levenshtein("ras", "ras"), 0u);
}

TEST(Experiment, MonitorLineFormat) {
  EXPECT_EQ(monitor_line(0, 1228.95), "It 0 rnorm 1228.95");
  EXPECT_EQ(monitor_line(19, 1.11713e-05), "It 19 rnorm 1.11713e-05");
}

TEST(Experiment, QuadraticPLaplacianNewtonLu) {
  ProblemConfig config;
  config.plaplacian.p = 2.0;
  config.plaplacian.nx = config.plaplacian.ny = 17;
  std::ostringstream monitor;
  RunOptions options;
  options.monitor = &monitor;
  const ExperimentRecord record = run_experiment(config, "newton(lpc=lu)", options);
  EXPECT_EQ(record.reason, ConvergedReason::converged_rtol);
  EXPECT_GE(record.stats.nonlinear_its, 1);
  EXPECT_LE(record.stats.nonlinear_its, 2);
  EXPECT_EQ(monitor.str().rfind("It 0 rnorm ", 0), 0u);
  EXPECT_EQ(record.stats.history.size(), static_cast<std::size_t>(record.stats.nonlinear_its + 1));
}

TEST(Experiment, ConfigurationErrorsThrow) {
  ProblemConfig config;
  config.kind = "elasticity";
  EXPECT_THROW(make_problem(config), ConfigError);
  ProblemConfig ok;
  ok.plaplacian.nx = ok.plaplacian.ny = 9;
  EXPECT_THROW(run_experiment(ok, "newton(", RunOptions{}), SpecError);
}

TEST(Experiment, JsonRoundTripAndCounters) {
  ExperimentRecord record;
  record.problem = "cavity";
  record.params = {{"grashof", 5e4}, {"nx", 49}};
  record.solver = "newton(lpc=lu,ls=bt)";
  record.reason = ConvergedReason::diverged_max_it;
  record.stats.nonlinear_its = 30;
  record.stats.linear_its = 412;
  record.stats.func_evals = 95;
  record.stats.jac_evals = 30;
  record.stats.pc_applies = 442;
  record.stats.npc_applies = 0;
  record.stats.wall_time = 1.25;
  record.stats.history = {{0, 1228.95}, {1, 1001.5}};
  const std::string json = emit_json(record);
  const ExperimentRecord back = parse_json(json);
  EXPECT_EQ(back, record);
  EXPECT_EQ(back.stats.linear_its, 412);
  EXPECT_EQ(back.stats.pc_applies, 442);
  for (const char* key : {"\"problem\"", "\"params\"", "\"solver\"", "\"reason\"", "\"counters\"", "\"nit\"",
                          "\"lit\"", "\"func\"", "\"jac\"", "\"pc\"", "\"npc\"", "\"wall_time_s\"", "\"history\""}) {
    EXPECT_NE(json.find(key), std::string::npos) << key;
  }
}

TEST(Experiment, EmptyHistoryIsValidJson) {
  ExperimentRecord record;
  record.problem = "plaplacian";
  const std::string json = emit_json(record);
  EXPECT_NE(json.find("\"history\": []"), std::string::npos) << json;
  EXPECT_EQ(parse_json(json), record);
  EXPECT_THROW(parse_json("{not json"), std::invalid_argument);
}

TEST(Experiment, CsvHistory) {
  ExperimentRecord record;
  record.stats.history = {{0, 2.5}, {1, 0.125}};
  EXPECT_EQ(emit_csv(record), "it,rnorm\n0,2.5\n1,0.125\n");
}

TEST(Presets, CavityScenariosAreNamed) {
  for (const char* name : {"cavity-gr1e4-newton", "cavity-gr5e4-newton-lu", "cavity-gr5e4-fas-gsn",
                           "cavity-gr5e4-anderson-fas-gsn", "cavity-gr5e4-anderson-fas-newton", "plaplacian-aspin"}) {
    const Preset& preset = find_preset(name);
    EXPECT_EQ(preset.name, name);
    EXPECT_NO_THROW(parse_solver(preset.solver)) << preset.solver;
  }
  const Preset& lu = find_preset("cavity-gr5e4-newton-lu");
  EXPECT_EQ(lu.problem.cavity.grashof, 5e4);
  EXPECT_EQ(lu.problem.cavity.nx, 49u);
  EXPECT_EQ(lu.options.max_it, 30);
}

TEST(Presets, UnknownNameSuggests) {
  try {
    find_preset("cavity-gr5e4-newton-lux");
    FAIL() << "expected an error";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("cavity-gr5e4-newton-lu"), std::string::npos);
  }
}
