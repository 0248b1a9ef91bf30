#pragma once

// Experiment configuration, sweep orchestration and CSV/table output.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "linksched/engine.hpp"
#include "linksched/traffic.hpp"

namespace linksched {

/// Where an instance comes from. `generator` is one of
/// grid | mesh | random | regular | fig9 | path | dimacs | file.
struct InstanceSpec {
  std::string generator;
  int rows = 0, cols = 0;  // grid
  int nodes = 0;           // mesh, random, regular
  int links = 0;           // random
  int degree = 0;          // regular
  int n = 0;               // fig9, path
  std::string path;        // dimacs, file
  std::optional<std::int64_t> max_y;  // random multiplicities on top of a topology
  std::uint64_t seed = 1;
  std::string name;  // display label override

  std::string label() const;
};

/// Resolves DIMACS paths that do not exist as given against $LINKSCHED_DIMACS_DIR.
std::string resolve_dimacs_path(const std::string& path);

EvacInstance build_evac_instance(const InstanceSpec& spec);
Topology build_topology(const InstanceSpec& spec);

struct ExperimentConfig {
  std::optional<InstanceSpec> instance;
  std::vector<Policy> policies{kAllPolicies.begin(), kAllPolicies.end()};
  TrafficKind traffic = TrafficKind::poisson;
  double file_probability = 0.1;
  int zipf_support = 1000;
  std::vector<double> lambdas;
  std::int64_t slots = 100000;
  std::int64_t warmup = 50000;
  std::vector<std::uint64_t> seeds{1};
  bool seeds_set = false;  // seeds given explicitly (evacuation replicates seeded generators only then)
  int threads = 0;  // 0 = hardware concurrency
  std::string out;
};

/// Overlays a JSON config document onto `cfg`. Unknown keys are rejected.
void apply_config_json(ExperimentConfig& cfg, std::string_view json_text);

/// "0.05,0.1" or "start:stop:step" (inclusive).
std::vector<double> parse_lambda_list(std::string_view text);
std::vector<std::uint64_t> parse_seed_list(std::string_view text);

struct CsvRow {
  std::string mode;
  std::string instance;
  std::string policy;
  std::optional<double> lambda;
  std::string seed;
  std::optional<std::int64_t> slots;
  std::optional<std::int64_t> warmup;
  std::optional<double> avg_total_queue;
  std::optional<std::int64_t> evac_time;
  std::optional<std::int64_t> delta0;
  std::optional<double> min_dep_ratio;
};

std::string_view csv_header();
std::string format_csv_row(const CsvRow& row);
std::string format_csv(const std::vector<CsvRow>& rows);

struct EvacuationResult {
  std::string instance;
  std::optional<std::uint64_t> seed;
  std::int64_t delta0 = 0;
  std::int64_t lower_bound = 0;
  std::vector<std::pair<Policy, std::int64_t>> evac_times;
};

EvacuationResult run_evacuation_suite(const EvacInstance& instance, const std::string& label,
                                      const std::vector<Policy>& policies, std::optional<std::uint64_t> seed);
std::vector<CsvRow> evacuation_rows(const EvacuationResult& result);
/// Text table: instance, one column per policy, then Δ.
std::string format_evacuation_table(const std::vector<EvacuationResult>& results, const std::vector<Policy>& policies);

struct ThroughputRun {
  Policy policy;
  double lambda;
  std::uint64_t seed;
  MetricsRecord record;
};

/// Every (policy, λ, seed) run, in that nesting order, regardless of how many
/// threads execute them.
std::vector<ThroughputRun> run_throughput_sweep(const Topology& topo, const ExperimentConfig& cfg);
/// Detail rows then one summary row per (policy, λ) with seed "mean".
std::vector<CsvRow> throughput_rows(const std::string& instance, const ExperimentConfig& cfg,
                                    const std::vector<ThroughputRun>& runs);
/// λ rows, one column per policy: seed-averaged average total queue.
std::string format_throughput_table(const ExperimentConfig& cfg, const std::vector<ThroughputRun>& runs);

}  // namespace linksched
