#ifndef D2D_EXPERIMENT_H_
#define D2D_EXPERIMENT_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "d2d/metrics.h"
#include "d2d/miss.h"
#include "d2d/model.h"

namespace d2d {

enum class Algorithm { kMiss, kGreedyFixed, kSingleShare, kNoReuse };

std::string ToString(Algorithm algorithm);
Algorithm ParseAlgorithm(const std::string& name);
// Comma-separated names, e.g. "miss,greedy-fixed".
std::vector<Algorithm> ParseAlgorithmList(const std::string& names);

struct ExperimentConfig {
  std::vector<int> m_values{40};
  int due_ratio = 4;
  int instances = 100;
  std::uint64_t rng_seed = 1;
  RadioParams radio;
  MissConfig miss;
  std::vector<Algorithm> algorithms{Algorithm::kMiss, Algorithm::kGreedyFixed,
                                    Algorithm::kSingleShare, Algorithm::kNoReuse};
  std::string output_path;
  // Worker threads; -1 picks the hardware concurrency, 0 runs serially.
  // MISS_D2D_THREADS overrides.
  int threads = -1;
  // Forces a serial pass so runtime_s is not perturbed by sibling workers.
  bool serial_timing = false;

  void Validate() const;
};

// Field names mirror ExperimentConfig; absent fields keep their defaults.
// Throws std::invalid_argument on unknown keys or bad values.
ExperimentConfig ConfigFromJson(const nlohmann::json& j);
nlohmann::json ConfigToJson(const ExperimentConfig& config);
ExperimentConfig LoadConfigFile(const std::string& path);

Scenario ScenarioForCell(const ExperimentConfig& config, int m, int instance);

Assignment RunAlgorithm(Algorithm algorithm, const Scenario& scenario, const MissConfig& miss);

struct AggregateReport {
  std::string algorithm;
  int m = 0;
  int count = 0;
  MetricsReport mean;
  MetricsReport stddev;  // sample standard deviation
};

struct ExperimentResult {
  // Sorted by (m in config order, instance, algorithm in config order).
  std::vector<MetricsReport> rows;
  // One per (m, algorithm), same order.
  std::vector<AggregateReport> aggregates;
  // Constraint violations found by the post-run audit, over all rows.
  int feasibility_violations = 0;
};

int ResolveWorkerCount(const ExperimentConfig& config);

ExperimentResult RunExperiment(const ExperimentConfig& config);

std::vector<AggregateReport> Aggregate(const std::vector<MetricsReport>& rows,
                                       const std::vector<int>& m_order,
                                       const std::vector<Algorithm>& algorithm_order);

void WriteCsv(std::ostream& os, const ExperimentResult& result, bool include_runtime = true);
void WriteJson(std::ostream& os, const ExperimentResult& result);

// Opens config.output_path before computing anything (so a bad path fails
// fast), runs the experiment and writes CSV, or JSON for a ".json" path.
ExperimentResult RunToFile(const ExperimentConfig& config);

}  // namespace d2d

#endif  // D2D_EXPERIMENT_H_
