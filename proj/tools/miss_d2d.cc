// Command-line front end: batch experiments, single-run traces and the
// pricing oracle check.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "CLI11.hpp"
#include "d2d/experiment.h"
#include "d2d/graph.h"
#include "d2d/miss.h"
#include "d2d/oracles/pricing_oracle.h"

namespace {

struct RunOptions {
  std::string config_path;
  std::vector<int> m_values;
  std::optional<int> ratio;
  std::optional<int> instances;
  std::optional<std::uint64_t> seed;
  std::string algorithms;
  std::string out;
  std::optional<double> beta;
};

d2d::ExperimentConfig BuildConfig(const RunOptions& o) {
  d2d::ExperimentConfig config = o.config_path.empty() ? d2d::ExperimentConfig{}
                                                       : d2d::LoadConfigFile(o.config_path);
  if (!o.m_values.empty()) config.m_values = o.m_values;
  if (o.ratio) config.due_ratio = *o.ratio;
  if (o.instances) config.instances = *o.instances;
  if (o.seed) config.rng_seed = *o.seed;
  if (!o.algorithms.empty()) config.algorithms = d2d::ParseAlgorithmList(o.algorithms);
  if (!o.out.empty()) config.output_path = o.out;
  if (o.beta) config.miss.beta = *o.beta;
  config.Validate();
  return config;
}

int Run(const RunOptions& o) {
  const d2d::ExperimentConfig config = BuildConfig(o);
  const d2d::ExperimentResult result = d2d::RunToFile(config);
  for (const auto& a : result.aggregates) {
    fmt::print("{:<13} m={:<4} throughput={:.4g} bit/s/Hz  due_power={:.4g} W  permitted={:.3f}  runtime={:.3g} s\n",
               a.algorithm, a.m, a.mean.throughput_bps_hz_system, a.mean.due_total_power_w,
               a.mean.permitted_fraction, a.mean.runtime_s);
  }
  if (result.feasibility_violations > 0) {
    fmt::print(stderr, "error: {} SINR constraint violations in emitted assignments\n",
               result.feasibility_violations);
    return 3;
  }
  fmt::print("wrote {} rows to {}\n", result.rows.size() + 2 * result.aggregates.size(),
             config.output_path);
  return 0;
}

int Trace(const RunOptions& o, int instance, const std::string& graph_out) {
  const d2d::ExperimentConfig config = BuildConfig(o);
  const int m = config.m_values.front();
  const d2d::Scenario scenario = d2d::ScenarioForCell(config, m, instance);
  const d2d::MissResult result = d2d::RunMiss(scenario, config.miss);
  if (o.out.empty() || o.out == "-") {
    result.trace.Write(std::cout);
  } else {
    std::ofstream out(o.out);
    if (!out) throw std::runtime_error(fmt::format("cannot open '{}' for writing", o.out));
    result.trace.Write(out);
  }
  if (!graph_out.empty()) {
    std::ofstream g(graph_out);
    if (!g) throw std::runtime_error(fmt::format("cannot open '{}' for writing", graph_out));
    d2d::BuildConflictGraph(scenario.dues, config.miss.conflict_threshold_m, config.miss.pair_distance)
        .WriteEdgeList(g);
  }
  fmt::print(stderr, "m={} instance={}: granted {}/{} DUE pairs, {} solver calls\n", m, instance,
             result.assignment.GrantedCount(), scenario.num_dues(), result.trace.solver_calls);
  return 0;
}

int OracleCheck(int samples, std::uint64_t seed, int grid) {
  const auto report = d2d::oracles::RunOracleSuite(samples, seed, 1e-6, grid);
  fmt::print("samples={} failures={} worst_relative_gap={:.3e}\n", report.samples, report.failures,
             report.worst_relative_gap);
  for (int k = 0; k < d2d::kNumLeaderCases; ++k) {
    fmt::print("  case {:<10} {}\n", d2d::ToString(static_cast<d2d::LeaderCase>(k)), report.case_counts[k]);
  }
  for (int k = 0; k < d2d::kNumPriceOrigins; ++k) {
    fmt::print("  {:<9} emitted={:<6} chosen={}\n", d2d::ToString(static_cast<d2d::PriceOrigin>(k)),
               report.emitted_counts[k], report.winner_counts[k]);
  }
  if (report.failures > 0) fmt::print("first failure: {}\n", report.first_failure);
  return report.failures == 0 ? 0 : 1;
}

void AddCommonOptions(CLI::App* cmd, RunOptions& o) {
  cmd->add_option("--config", o.config_path, "JSON experiment config")->check(CLI::ExistingFile);
  cmd->add_option("--m", o.m_values, "CUE counts (comma separated)")->delimiter(',');
  cmd->add_option("--ratio", o.ratio, "DUE pairs per CUE");
  cmd->add_option("--seed", o.seed, "master RNG seed");
  cmd->add_option("--beta", o.beta, "revenue ratio override for the pricing game");
  cmd->add_option("--out", o.out, "output path");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-sharing D2D uplink: joint RB reuse and Stackelberg power control"};
  app.require_subcommand(1);

  RunOptions run_opts;
  auto* run = app.add_subcommand("run", "run a Monte-Carlo batch and write CSV/JSON");
  AddCommonOptions(run, run_opts);
  run->add_option("--instances", run_opts.instances, "instances per m");
  run->add_option("--algo", run_opts.algorithms,
                  "algorithms: miss,greedy-fixed,single-share,no-reuse");

  RunOptions trace_opts;
  int trace_instance = 0;
  std::string graph_out;
  auto* trace = app.add_subcommand("trace", "run MISS on one instance and write its event trace");
  AddCommonOptions(trace, trace_opts);
  trace->add_option("--instance", trace_instance, "instance index")->check(CLI::NonNegativeNumber);
  trace->add_option("--graph-out", graph_out, "also write the initial conflict graph as an edge list");

  int samples = 10000;
  std::uint64_t oracle_seed = 20240601;
  int grid = 10000;
  auto* oracle = app.add_subcommand("oracle-check", "compare the pricing solver with a grid search");
  oracle->add_option("--samples", samples, "random instances")->check(CLI::PositiveNumber);
  oracle->add_option("--seed", oracle_seed, "RNG seed");
  oracle->add_option("--grid", grid, "grid points per instance")->check(CLI::Range(2, 10000000));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return Run(run_opts);
    if (*trace) return Trace(trace_opts, trace_instance, graph_out);
    if (*oracle) return OracleCheck(samples, oracle_seed, grid);
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 2;
  }
  return 0;
}
