#include "d2d/experiment.h"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <fmt/core.h>

#include "d2d/baselines.h"
#include "d2d/channel.h"
#include "d2d/rng.h"
#include "d2d/scenario.h"

namespace d2d {

using nlohmann::json;

std::string ToString(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kMiss: return "miss";
    case Algorithm::kGreedyFixed: return "greedy-fixed";
    case Algorithm::kSingleShare: return "single-share";
    case Algorithm::kNoReuse: return "no-reuse";
  }
  return "?";
}

Algorithm ParseAlgorithm(const std::string& name) {
  for (Algorithm a : {Algorithm::kMiss, Algorithm::kGreedyFixed, Algorithm::kSingleShare,
                      Algorithm::kNoReuse}) {
    if (ToString(a) == name) return a;
  }
  throw std::invalid_argument(fmt::format("unknown algorithm '{}'", name));
}

std::vector<Algorithm> ParseAlgorithmList(const std::string& names) {
  std::vector<Algorithm> out;
  std::istringstream is(names);
  std::string item;
  while (std::getline(is, item, ',')) {
    if (!item.empty()) out.push_back(ParseAlgorithm(item));
  }
  return out;
}

void ExperimentConfig::Validate() const {
  if (m_values.empty()) throw std::invalid_argument("config: m_values must be non-empty");
  for (int m : m_values) {
    if (m < 1) throw std::invalid_argument("config: every m must be >= 1");
  }
  if (due_ratio < 0) throw std::invalid_argument("config: due_ratio must be >= 0");
  if (instances < 1) throw std::invalid_argument("config: instances must be >= 1");
  if (algorithms.empty()) throw std::invalid_argument("config: algorithms must be non-empty");
  radio.Validate();
  miss.Validate();
}

namespace {

void RejectUnknownKeys(const json& j, std::initializer_list<const char*> known, const char* where) {
  if (!j.is_object()) throw std::invalid_argument(fmt::format("config: {} must be an object", where));
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw std::invalid_argument(fmt::format("config: unknown key '{}' in {}", key, where));
  }
}

template <typename T>
void Read(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

std::string PairDistanceName(PairDistance rule) {
  return rule == PairDistance::kMinEndpoint ? "min-endpoint" : "centroid";
}

PairDistance ParsePairDistance(const std::string& text) {
  if (text == "min-endpoint") return PairDistance::kMinEndpoint;
  if (text == "centroid") return PairDistance::kCentroid;
  throw std::invalid_argument(fmt::format("unknown pair_distance '{}'", text));
}

RadioParams RadioFromJson(const json& j) {
  RejectUnknownKeys(j,
                    {"cue_power_w", "due_power_min_w", "due_power_max_w", "due_fixed_power_w",
                     "cue_sinr_threshold", "due_sinr_threshold", "sinr_threshold_unit",
                     "noise_spectral_density_dbm_hz", "rb_bandwidth_hz", "cell_radius_m",
                     "due_pair_distance_m", "conflict_distance_m", "min_bs_distance_m", "beta"},
                    "radio");
  RadioParams r;
  Read(j, "cue_power_w", r.cue_power_w);
  Read(j, "due_power_min_w", r.due_power_min_w);
  Read(j, "due_power_max_w", r.due_power_max_w);
  Read(j, "due_fixed_power_w", r.due_fixed_power_w);
  Read(j, "cue_sinr_threshold", r.cue_sinr_threshold);
  Read(j, "due_sinr_threshold", r.due_sinr_threshold);
  if (j.contains("sinr_threshold_unit")) {
    r.sinr_threshold_unit = ParseSinrUnit(j.at("sinr_threshold_unit").get<std::string>());
  }
  Read(j, "noise_spectral_density_dbm_hz", r.noise_spectral_density_dbm_hz);
  Read(j, "rb_bandwidth_hz", r.rb_bandwidth_hz);
  Read(j, "cell_radius_m", r.cell_radius_m);
  Read(j, "due_pair_distance_m", r.due_pair_distance_m);
  Read(j, "conflict_distance_m", r.conflict_distance_m);
  Read(j, "min_bs_distance_m", r.min_bs_distance_m);
  Read(j, "beta", r.beta);
  return r;
}

json RadioToJson(const RadioParams& r) {
  return json{{"cue_power_w", r.cue_power_w},
              {"due_power_min_w", r.due_power_min_w},
              {"due_power_max_w", r.due_power_max_w},
              {"due_fixed_power_w", r.due_fixed_power_w},
              {"cue_sinr_threshold", r.cue_sinr_threshold},
              {"due_sinr_threshold", r.due_sinr_threshold},
              {"sinr_threshold_unit", ToString(r.sinr_threshold_unit)},
              {"noise_spectral_density_dbm_hz", r.noise_spectral_density_dbm_hz},
              {"rb_bandwidth_hz", r.rb_bandwidth_hz},
              {"cell_radius_m", r.cell_radius_m},
              {"due_pair_distance_m", r.due_pair_distance_m},
              {"conflict_distance_m", r.conflict_distance_m},
              {"min_bs_distance_m", r.min_bs_distance_m},
              {"beta", r.beta}};
}

MissConfig MissFromJson(const json& j, const RadioParams& radio) {
  RejectUnknownKeys(j, {"rounds_l", "conflict_threshold_m", "beta", "mis_scope", "pair_distance"},
                    "miss");
  MissConfig m;
  m.conflict_threshold_m = radio.conflict_distance_m;
  if (j.contains("rounds_l")) {
    const json& l = j.at("rounds_l");
    if (l.is_string()) {
      if (l.get<std::string>() != "auto") throw std::invalid_argument("config: rounds_l must be a number or \"auto\"");
    } else {
      m.rounds_l = l.get<int>();
    }
  }
  Read(j, "conflict_threshold_m", m.conflict_threshold_m);
  if (j.contains("beta") && !j.at("beta").is_null()) m.beta = j.at("beta").get<double>();
  if (j.contains("mis_scope")) m.mis_scope = ParseMisScope(j.at("mis_scope").get<std::string>());
  if (j.contains("pair_distance")) {
    m.pair_distance = ParsePairDistance(j.at("pair_distance").get<std::string>());
  }
  return m;
}

json MissToJson(const MissConfig& m) {
  json j{{"conflict_threshold_m", m.conflict_threshold_m},
         {"mis_scope", ToString(m.mis_scope)},
         {"pair_distance", PairDistanceName(m.pair_distance)}};
  j["rounds_l"] = m.rounds_l ? json(*m.rounds_l) : json("auto");
  j["beta"] = m.beta ? json(*m.beta) : json(nullptr);
  return j;
}

}  // namespace

ExperimentConfig ConfigFromJson(const json& j) {
  RejectUnknownKeys(j,
                    {"m_values", "due_ratio", "instances", "rng_seed", "radio", "miss",
                     "algorithms", "output_path", "threads", "serial_timing"},
                    "config");
  ExperimentConfig c;
  try {
    Read(j, "m_values", c.m_values);
    Read(j, "due_ratio", c.due_ratio);
    Read(j, "instances", c.instances);
    Read(j, "rng_seed", c.rng_seed);
    if (j.contains("radio")) c.radio = RadioFromJson(j.at("radio"));
    c.miss = MissFromJson(j.contains("miss") ? j.at("miss") : json::object(), c.radio);
    if (j.contains("algorithms")) {
      c.algorithms.clear();
      for (const auto& name : j.at("algorithms")) c.algorithms.push_back(ParseAlgorithm(name.get<std::string>()));
    }
    Read(j, "output_path", c.output_path);
    Read(j, "threads", c.threads);
    Read(j, "serial_timing", c.serial_timing);
  } catch (const json::exception& e) {
    throw std::invalid_argument(fmt::format("config: {}", e.what()));
  }
  c.Validate();
  return c;
}

json ConfigToJson(const ExperimentConfig& c) {
  json algos = json::array();
  for (Algorithm a : c.algorithms) algos.push_back(ToString(a));
  return json{{"m_values", c.m_values},   {"due_ratio", c.due_ratio},
              {"instances", c.instances}, {"rng_seed", c.rng_seed},
              {"radio", RadioToJson(c.radio)}, {"miss", MissToJson(c.miss)},
              {"algorithms", algos},      {"output_path", c.output_path},
              {"threads", c.threads},     {"serial_timing", c.serial_timing}};
}

ExperimentConfig LoadConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(fmt::format("cannot read config '{}'", path));
  json j;
  try {
    j = json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(fmt::format("config '{}': {}", path, e.what()));
  }
  return ConfigFromJson(j);
}

Scenario ScenarioForCell(const ExperimentConfig& config, int m, int instance) {
  Rng rng(DeriveSeed(config.rng_seed, static_cast<std::uint64_t>(m),
                     static_cast<std::uint64_t>(instance)));
  return GenerateScenario(m, config.due_ratio, config.radio, rng);
}

Assignment RunAlgorithm(Algorithm algorithm, const Scenario& scenario, const MissConfig& miss) {
  switch (algorithm) {
    case Algorithm::kMiss: return RunMiss(scenario, miss).assignment;
    case Algorithm::kGreedyFixed: return RunBaselineGreedyFixed(scenario);
    case Algorithm::kSingleShare:
      return RunBaselineSingleShare(scenario, miss.beta.value_or(scenario.radio.beta));
    case Algorithm::kNoReuse: return RunNoReuse(scenario);
  }
  throw std::logic_error("unreachable");
}

int ResolveWorkerCount(const ExperimentConfig& config) {
  if (config.serial_timing) return 0;
  if (const char* env = std::getenv("MISS_D2D_THREADS"); env && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 0) {
      throw std::invalid_argument(fmt::format("MISS_D2D_THREADS must be a non-negative integer, got '{}'", env));
    }
    return static_cast<int>(v);
  }
  if (config.threads >= 0) return config.threads;
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

namespace {

struct CellOutput {
  std::vector<MetricsReport> rows;
  int violations = 0;
};

CellOutput RunCell(const ExperimentConfig& config, int m, int instance) {
  CellOutput out;
  const Scenario scenario = ScenarioForCell(config, m, instance);
  for (Algorithm algorithm : config.algorithms) {
    const auto start = std::chrono::steady_clock::now();
    const Assignment assignment = RunAlgorithm(algorithm, scenario, config.miss);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

    out.violations += static_cast<int>(AuditFeasibility(scenario, assignment).size());
    if (assignment.CheckStructure(scenario.radio.due_power_min_w, scenario.radio.due_power_max_w)) {
      ++out.violations;
    }
    MetricsReport r = ComputeMetrics(scenario, assignment, elapsed.count());
    r.algorithm = ToString(algorithm);
    r.m = m;
    r.instance = instance;
    out.rows.push_back(std::move(r));
  }
  return out;
}

}  // namespace

ExperimentResult RunExperiment(const ExperimentConfig& config) {
  config.Validate();
  struct Cell {
    int m;
    int instance;
  };
  std::vector<Cell> cells;
  for (int m : config.m_values) {
    for (int i = 0; i < config.instances; ++i) cells.push_back({m, i});
  }
  std::vector<CellOutput> outputs(cells.size());

  const int workers = ResolveWorkerCount(config);
  if (workers <= 1) {
    for (size_t k = 0; k < cells.size(); ++k) outputs[k] = RunCell(config, cells[k].m, cells[k].instance);
  } else {
    std::atomic<size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    auto work = [&] {
      for (size_t k; !failed && (k = next++) < cells.size();) {
        try {
          outputs[k] = RunCell(config, cells[k].m, cells[k].instance);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    };
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    pool.clear();
    if (failure) std::rethrow_exception(failure);
  }

  ExperimentResult result;
  for (auto& out : outputs) {
    result.feasibility_violations += out.violations;
    for (auto& r : out.rows) result.rows.push_back(std::move(r));
  }
  result.aggregates = Aggregate(result.rows, config.m_values, config.algorithms);
  return result;
}

std::vector<AggregateReport> Aggregate(const std::vector<MetricsReport>& rows,
                                       const std::vector<int>& m_order,
                                       const std::vector<Algorithm>& algorithm_order) {
  std::vector<AggregateReport> out;
  for (int m : m_order) {
    for (Algorithm a : algorithm_order) {
      const std::string name = ToString(a);
      std::vector<const MetricsReport*> sel;
      for (const auto& r : rows) {
        if (r.m == m && r.algorithm == name) sel.push_back(&r);
      }
      if (sel.empty()) continue;
      AggregateReport agg;
      agg.algorithm = name;
      agg.m = m;
      agg.count = static_cast<int>(sel.size());
      agg.mean.algorithm = agg.stddev.algorithm = name;
      agg.mean.m = agg.stddev.m = m;
      auto stat = [&](double MetricsReport::*field) {
        double sum = 0.0;
        for (const auto* r : sel) sum += r->*field;
        const double mean = sum / sel.size();
        double ss = 0.0;
        for (const auto* r : sel) ss += (r->*field - mean) * (r->*field - mean);
        agg.mean.*field = mean;
        agg.stddev.*field = sel.size() > 1 ? std::sqrt(ss / (sel.size() - 1)) : 0.0;
      };
      stat(&MetricsReport::throughput_bps);
      stat(&MetricsReport::throughput_bps_hz_per_cue);
      stat(&MetricsReport::throughput_bps_hz_system);
      stat(&MetricsReport::due_total_power_w);
      stat(&MetricsReport::permitted_fraction);
      stat(&MetricsReport::runtime_s);
      out.push_back(std::move(agg));
    }
  }
  return out;
}

namespace {

constexpr const char* kCsvHeader =
    "algorithm,m,instance,throughput_bps,throughput_bps_hz_per_cue,throughput_bps_hz_system,"
    "due_total_power_w,permitted_fraction,runtime_s";

std::string CsvLine(const MetricsReport& r, const std::string& instance, bool include_runtime) {
  std::string line = fmt::format("{},{},{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}", r.algorithm, r.m,
                                 instance, r.throughput_bps, r.throughput_bps_hz_per_cue,
                                 r.throughput_bps_hz_system, r.due_total_power_w,
                                 r.permitted_fraction);
  line += include_runtime ? fmt::format(",{:.17g}", r.runtime_s) : std::string(",");
  return line;
}

json RecordJson(const MetricsReport& r, const json& instance) {
  return json{{"algorithm", r.algorithm},
              {"m", r.m},
              {"instance", instance},
              {"throughput_bps", r.throughput_bps},
              {"throughput_bps_hz_per_cue", r.throughput_bps_hz_per_cue},
              {"throughput_bps_hz_system", r.throughput_bps_hz_system},
              {"due_total_power_w", r.due_total_power_w},
              {"permitted_fraction", r.permitted_fraction},
              {"runtime_s", r.runtime_s}};
}

}  // namespace

void WriteCsv(std::ostream& os, const ExperimentResult& result, bool include_runtime) {
  os << kCsvHeader << '\n';
  for (const auto& r : result.rows) os << CsvLine(r, std::to_string(r.instance), include_runtime) << '\n';
  for (const auto& a : result.aggregates) {
    os << CsvLine(a.mean, "mean", include_runtime) << '\n';
    os << CsvLine(a.stddev, "std", include_runtime) << '\n';
  }
}

void WriteJson(std::ostream& os, const ExperimentResult& result) {
  json arr = json::array();
  for (const auto& r : result.rows) arr.push_back(RecordJson(r, r.instance));
  for (const auto& a : result.aggregates) {
    arr.push_back(RecordJson(a.mean, "mean"));
    arr.push_back(RecordJson(a.stddev, "std"));
  }
  os << arr.dump(2) << '\n';
}

ExperimentResult RunToFile(const ExperimentConfig& config) {
  if (config.output_path.empty()) throw std::invalid_argument("config: output_path is required");
  config.Validate();
  std::ofstream out(config.output_path, std::ios::trunc);
  if (!out) throw std::runtime_error(fmt::format("cannot open output '{}' for writing", config.output_path));
  ExperimentResult result = RunExperiment(config);
  if (std::filesystem::path(config.output_path).extension() == ".json") {
    WriteJson(out, result);
  } else {
    WriteCsv(out, result);
  }
  if (!out) throw std::runtime_error(fmt::format("write to '{}' failed", config.output_path));
  return result;
}

}  // namespace d2d
