#include "linksched/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "linksched/errors.hpp"
#include "linksched/matching.hpp"
#include "linksched/report.hpp"
#include "linksched/topogen.hpp"
#include "linksched/validation.hpp"

namespace linksched {
namespace {

struct InstanceFlags {
  std::string fig9, path_special, dimacs, instance, grid, mesh, random, regular, name;
  std::optional<std::int64_t> max_y;
  std::optional<std::uint64_t> gen_seed;

  void add_to(CLI::App* app) {
    app->add_option("--fig9", fig9, "spider family of size N (2N+1 nodes)");
    app->add_option("--path-special", path_special, "path of 2N links with multiplicities N,1,N,1,...");
    app->add_option("--dimacs", dimacs, "DIMACS .col file (also looked up in $LINKSCHED_DIMACS_DIR)");
    app->add_option("--instance", instance, "instance file ('n m' header, then 'u v mult' lines)");
    app->add_option("--grid", grid, "RxC lattice");
    app->add_option("--mesh", mesh, "triangular mesh over N random points");
    app->add_option("--random", random, "N,M random connected topology");
    app->add_option("--regular", regular, "N,D regular multigraph");
    app->add_option("--max-y", max_y, "draw link multiplicities uniformly from 0..Y");
    app->add_option("--gen-seed", gen_seed, "generator seed");
    app->add_option("--name", name, "instance label in tables and CSV");
  }

  static std::pair<int, int> pair_of(const std::string& text, char sep, const char* flag) {
    const auto at = text.find(sep);
    try {
      if (at == std::string::npos) throw std::invalid_argument("");
      std::size_t used = 0;
      const int a = std::stoi(text.substr(0, at), &used);
      if (used != at) throw std::invalid_argument("");
      const int b = std::stoi(text.substr(at + 1), &used);
      if (used != text.size() - at - 1) throw std::invalid_argument("");
      return {a, b};
    } catch (const std::exception&) {
      throw UsageError(std::string(flag) + " expects A" + sep + "B, got '" + text + "'");
    }
  }

  static int int_of(const std::string& text, const char* flag) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(text, &used);
      if (used == text.size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string(flag) + " expects an integer, got '" + text + "'");
  }

  /// The CLI source if one was given, else the config's.
  InstanceSpec resolve(const std::optional<InstanceSpec>& from_config) const {
    InstanceSpec spec;
    int sources = 0;
    if (!fig9.empty()) {
      spec.generator = "fig9";
      spec.n = int_of(fig9, "--fig9");
      ++sources;
    }
    if (!path_special.empty()) {
      spec.generator = "path";
      spec.n = int_of(path_special, "--path-special");
      ++sources;
    }
    if (!dimacs.empty()) {
      spec.generator = "dimacs";
      spec.path = dimacs;
      ++sources;
    }
    if (!instance.empty()) {
      spec.generator = "file";
      spec.path = instance;
      ++sources;
    }
    if (!grid.empty()) {
      spec.generator = "grid";
      std::tie(spec.rows, spec.cols) = pair_of(grid, 'x', "--grid");
      ++sources;
    }
    if (!mesh.empty()) {
      spec.generator = "mesh";
      spec.nodes = int_of(mesh, "--mesh");
      ++sources;
    }
    if (!random.empty()) {
      spec.generator = "random";
      std::tie(spec.nodes, spec.links) = pair_of(random, ',', "--random");
      ++sources;
    }
    if (!regular.empty()) {
      spec.generator = "regular";
      std::tie(spec.nodes, spec.degree) = pair_of(regular, ',', "--regular");
      ++sources;
    }
    if (sources > 1) throw UsageError("give exactly one instance source");
    if (sources == 0) {
      if (!from_config) throw UsageError("no instance source given");
      spec = *from_config;
    }
    if (max_y) spec.max_y = max_y;
    if (gen_seed) spec.seed = *gen_seed;
    if (!name.empty()) spec.name = name;
    return spec;
  }
};

struct CommonFlags {
  std::string config, policies, seeds, out;
  std::optional<int> threads;

  void add_to(CLI::App* app) {
    app->add_option("--config", config, "JSON experiment config; flags override its fields");
    app->add_option("--policies", policies, "comma-separated: nsb,lcnsb,mvm,mwm,gmm,mm");
    app->add_option("--seeds", seeds, "comma-separated seeds or ranges, e.g. 1-10");
    app->add_option("--out", out, "CSV output path");
    app->add_option("--threads", threads, "worker threads (0 = all cores)");
  }

  ExperimentConfig load(const CLI::App* app) const {
    ExperimentConfig cfg;
    if (!config.empty()) apply_config_json(cfg, read_file(config));
    if (app->count("--policies")) cfg.policies = parse_policy_list(policies);
    if (app->count("--seeds")) {
      cfg.seeds = parse_seed_list(seeds);
      cfg.seeds_set = true;
    }
    if (!out.empty()) cfg.out = out;
    if (threads) cfg.threads = *threads;
    if (cfg.policies.empty()) throw UsageError("empty policy list");
    return cfg;
  }
};

// Explicit path, else $LINKSCHED_OUT_DIR/<mode>_<label>.csv, else "" (stdout).
std::string output_path(const std::string& explicit_out, const std::string& mode, const std::string& label) {
  if (!explicit_out.empty()) return explicit_out;
  const char* dir = std::getenv("LINKSCHED_OUT_DIR");
  if (!dir || !*dir) return {};
  std::filesystem::create_directories(dir);
  return (std::filesystem::path(dir) / (mode + "_" + label + ".csv")).string();
}

void emit_csv(const std::string& csv, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << '\n' << csv;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + path);
  f << csv;
  if (!f.flush()) throw UsageError("cannot write " + path);
  out << "wrote " << path << '\n';
}

bool seeded(const InstanceSpec& spec) {
  return spec.max_y.has_value() || spec.generator == "mesh" || spec.generator == "random" ||
         spec.generator == "regular";
}

int cmd_evacuate(const CLI::App* app, const InstanceFlags& inst_flags, const CommonFlags& common, std::ostream& out) {
  const ExperimentConfig cfg = common.load(app);
  const InstanceSpec base = inst_flags.resolve(cfg.instance);
  std::vector<EvacuationResult> results;
  std::vector<CsvRow> rows;
  // seed lists replicate seeded generators; fixed instances run once
  std::vector<std::optional<std::uint64_t>> seeds;
  if (!seeded(base)) {
    seeds.emplace_back(std::nullopt);
  } else if (cfg.seeds_set) {
    for (auto s : cfg.seeds) seeds.emplace_back(s);
  } else {
    seeds.emplace_back(base.seed);
  }
  for (const auto& seed : seeds) {
    InstanceSpec spec = base;
    if (seed) spec.seed = *seed;
    const EvacInstance inst = build_evac_instance(spec);
    results.push_back(run_evacuation_suite(inst, spec.label(), cfg.policies, seed));
    for (auto& r : evacuation_rows(results.back())) rows.push_back(std::move(r));
  }
  out << format_evacuation_table(results, cfg.policies);
  emit_csv(format_csv(rows), output_path(cfg.out, "evacuation", base.label()), out);
  return kExitOk;
}

int cmd_throughput(const CLI::App* app, const InstanceFlags& inst_flags, const CommonFlags& common,
                   const std::string& traffic, const std::string& lambdas, std::optional<double> p,
                   std::optional<int> support, std::optional<std::int64_t> slots, std::optional<std::int64_t> warmup,
                   const std::string& scale, std::ostream& out) {
  ExperimentConfig cfg = common.load(app);
  if (!traffic.empty()) cfg.traffic = parse_traffic_kind(traffic);
  if (!lambdas.empty()) cfg.lambdas = parse_lambda_list(lambdas);
  if (p) cfg.file_probability = *p;
  if (support) cfg.zipf_support = *support;
  if (scale == "ci") {
    cfg.slots = 20000;
    cfg.warmup = 10000;
  } else if (scale == "full") {
    cfg.slots = 100000;
    cfg.warmup = 50000;
  } else if (!scale.empty()) {
    throw UsageError("--scale must be 'ci' or 'full'");
  }
  if (slots) cfg.slots = *slots;
  if (warmup) cfg.warmup = *warmup;
  if (cfg.lambdas.empty()) throw UsageError("no arrival rates given (--lambdas)");
  if (cfg.slots <= 0 || cfg.warmup < 0 || cfg.warmup >= cfg.slots) throw UsageError("need 0 <= warmup < slots");

  const InstanceSpec spec = inst_flags.resolve(cfg.instance);
  const Topology topo = build_topology(spec);
  const auto runs = run_throughput_sweep(topo, cfg);
  out << "average total queue (" << traffic_kind_name(cfg.traffic) << " arrivals, " << cfg.seeds.size()
      << " seeds, " << cfg.slots << " slots, " << cfg.warmup << " warmup) on " << spec.label() << '\n';
  out << format_throughput_table(cfg, runs);
  const std::string label = spec.label() + "_" + std::string(traffic_kind_name(cfg.traffic));
  emit_csv(format_csv(throughput_rows(spec.label(), cfg, runs)), output_path(cfg.out, "throughput", label), out);
  return kExitOk;
}

int cmd_validate(const std::vector<std::string>& suites, int count, std::uint64_t seed, bool faulty,
                 const std::string& replay_dir, std::ostream& out, std::ostream& err) {
  std::vector<std::string> names;
  for (const auto& s : suites) {
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (part == "all") {
        names.insert(names.end(), suite_names().begin(), suite_names().end());
      } else {
        default_suite_count(part);  // rejects unknown names
        names.push_back(part);
      }
    }
  }
  if (names.empty()) names = suite_names();

  SuiteOptions opts;
  opts.count = count;
  opts.seed = seed;
  if (faulty) {
    // plain first-fit maximal matching reported under the NSB label
    opts.scheduler = [](Policy p, const NetworkState& s, const Topology& t) {
      if (p != Policy::nsb) return schedule(p, s, t);
      std::vector<std::uint8_t> eligible(s.queue.size());
      for (std::size_t l = 0; l < eligible.size(); ++l) eligible[l] = s.queue[l] > 0;
      return maximal_matching(t, eligible);
    };
  }
  bool all_passed = true;
  for (const auto& name : names) {
    const SuiteResult r = run_suite(name, opts);
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-10s %5d instances %6d checks %5d failures  %s\n", r.name.c_str(), r.instances,
                  r.checks, r.failures, r.passed() ? "PASS" : "FAIL");
    out << buf;
    if (r.passed()) continue;
    all_passed = false;
    for (std::size_t k = 0; k < r.reports.size(); ++k) {
      err << r.reports[k];
      if (!replay_dir.empty()) {
        std::filesystem::create_directories(replay_dir);
        const auto file = std::filesystem::path(replay_dir) / (r.name + "_" + std::to_string(k) + ".txt");
        std::ofstream(file) << r.reports[k];
        err << "# saved to " << file.string() << '\n';
      }
    }
  }
  return all_passed ? kExitOk : kExitValidation;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Link scheduling simulator: evacuation and throughput experiments, property suites"};
  app.require_subcommand(1);

  InstanceFlags evac_inst, tput_inst;
  CommonFlags evac_common, tput_common;
  CLI::App* evac = app.add_subcommand("evacuate", "drain a multigraph instance under each policy");
  evac_inst.add_to(evac);
  evac_common.add_to(evac);

  CLI::App* tput = app.add_subcommand("throughput", "slotted simulation with random arrivals");
  tput_inst.add_to(tput);
  tput_common.add_to(tput);
  std::string traffic, lambdas, scale;
  std::optional<double> file_p;
  std::optional<int> support;
  std::optional<std::int64_t> slots, warmup;
  tput->add_option("--traffic", traffic, "poisson | file | zipf");
  tput->add_option("--lambdas", lambdas, "arrival rates: a,b,c or start:stop:step");
  tput->add_option("--p", file_p, "file arrival probability");
  tput->add_option("--support", support, "Zipf support size");
  tput->add_option("--slots", slots, "total slots per run");
  tput->add_option("--warmup", warmup, "slots excluded from the queue average");
  tput->add_option("--scale", scale, "ci (2e4/1e4 slots) or full (1e5/5e4)");

  CLI::App* val = app.add_subcommand("validate", "run the property suites");
  std::vector<std::string> suites;
  int count = 0;
  std::uint64_t seed = 1;
  bool faulty = false;
  std::string replay_dir;
  val->add_option("--suite", suites, "prop1, bipartite, oracle, lemma4 or all (repeatable)");
  val->add_option("--count", count, "instances per suite (default: suite size)");
  val->add_option("--seed", seed, "suite seed");
  val->add_flag("--inject-faulty-nsb", faulty, "replace NSB by plain maximal matching (mutation check)");
  val->add_option("--replay-dir", replay_dir, "write failing instances here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (evac->parsed()) return cmd_evacuate(evac, evac_inst, evac_common, out);
    if (tput->parsed()) {
      return cmd_throughput(tput, tput_inst, tput_common, traffic, lambdas, file_p, support, slots, warmup, scale, out);
    }
    return cmd_validate(suites, count, seed, faulty, replay_dir, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const ContractViolation& e) {
    err << "contract violation: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitUsage;
}

}  // namespace linksched
