#pragma once

// Seeded property suites over small random instances. Each failure carries the
// offending instance in replayable text form.

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "linksched/engine.hpp"
#include "linksched/random.hpp"

namespace linksched {

using ScheduleFn = std::function<Matching(Policy, const NetworkState&, const Topology&)>;

struct SuiteOptions {
  int count = 0;  // 0 = the suite's default
  std::uint64_t seed = 1;
  /// Replaces the real schedulers (mutation testing). Empty = schedule().
  ScheduleFn scheduler;
  int max_reports = 3;
};

struct SuiteResult {
  std::string name;
  int instances = 0;
  int checks = 0;
  int failures = 0;
  std::vector<std::string> reports;
  double seconds = 0.0;

  bool passed() const { return failures == 0 && instances > 0; }
};

/// prop1 | bipartite | oracle | lemma4
const std::vector<std::string>& suite_names();
int default_suite_count(std::string_view name);
SuiteResult run_suite(std::string_view name, const SuiteOptions& opts);

/// Three-slot frames starting at Δ >= 2 lose at least 2 (NSB, LC-NSB).
SuiteResult run_prop1_suite(const SuiteOptions& opts);
/// NSB, LC-NSB and MVM drain bipartite multigraphs in exactly Δ(0) slots.
SuiteResult run_bipartite_suite(const SuiteOptions& opts);
/// Exact matchers agree with exhaustive search; s-heaviest coverage.
SuiteResult run_oracle_suite(const SuiteOptions& opts);
/// Heavy nodes with a bipartite induced subgraph are coverable, and NSB
/// covers every one of them that was not recently served.
SuiteResult run_lemma4_suite(const SuiteOptions& opts);

/// Random multigraph with n in [2, max_n] and multiplicities in [1, max_mult].
EvacInstance random_multigraph(Rng& rng, int max_n, std::int64_t max_mult);
/// Random bipartite multigraph with each side in [1, max_side].
EvacInstance random_bipartite_multigraph(Rng& rng, int max_side, std::int64_t max_mult);

/// Per-instance RNG so any single instance can be regenerated from (seed, index).
Rng instance_rng(std::uint64_t seed, std::uint64_t index);

}  // namespace linksched
